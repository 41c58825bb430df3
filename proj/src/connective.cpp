#include "proofbench/connective.hpp"

#include <stdexcept>

namespace proofbench {

void ConnectiveRegistry::add(ConnectiveDef def) {
  if (defs_.count(def.name)) throw std::invalid_argument("connective already defined: " + def.name);
  defs_.emplace(def.name, std::move(def));
}

const ConnectiveDef* ConnectiveRegistry::find(const std::string& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

const RuleSchema* ConnectiveRegistry::find_rule(const std::string& rule) const {
  for (const auto& [name, def] : defs_) {
    if (rule.size() <= name.size() || rule.compare(0, name.size(), name) != 0) continue;
    std::string suffix = rule.substr(name.size());
    if (suffix.empty() || (suffix[0] != 'I' && suffix[0] != 'E')) continue;
    const auto& schemas = suffix[0] == 'I' ? def.intros : def.elims;
    size_t idx = 0;
    if (suffix.size() > 1) {
      try {
        idx = std::stoul(suffix.substr(1)) - 1;
      } catch (...) {
        continue;
      }
    }
    if (idx < schemas.size() && schemas[idx].name == rule) return &schemas[idx];
  }
  return nullptr;
}

ConnectiveNames ConnectiveRegistry::names() const {
  ConnectiveNames out;
  for (const auto& [name, def] : defs_) out.insert(name);
  return out;
}

const ConnectiveRegistry& ConnectiveRegistry::none() {
  static const ConnectiveRegistry empty;
  return empty;
}

}  // namespace proofbench
