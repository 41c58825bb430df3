#include "proofbench/sequent.hpp"

#include <algorithm>

namespace proofbench {

namespace {
std::map<std::string, int> key_counts(const FormulaMultiset& ms) {
  std::map<std::string, int> out;
  for (const auto& f : ms) out[canonical_key(f)]++;
  return out;
}
}  // namespace

bool ms_equal(const FormulaMultiset& a, const FormulaMultiset& b) {
  if (a.size() != b.size()) return false;
  return key_counts(a) == key_counts(b);
}

bool ms_subset(const FormulaMultiset& a, const FormulaMultiset& b) {
  auto ka = key_counts(a), kb = key_counts(b);
  for (const auto& [k, n] : ka) {
    auto it = kb.find(k);
    if (it == kb.end() || it->second < n) return false;
  }
  return true;
}

bool ms_remove_one(FormulaMultiset& ms, const FormulaPtr& f) {
  auto key = canonical_key(f);
  for (auto it = ms.begin(); it != ms.end(); ++it) {
    if (canonical_key(*it) == key) {
      ms.erase(it);
      return true;
    }
  }
  return false;
}

FormulaMultiset ms_remove_all(const FormulaMultiset& ms, const FormulaPtr& f) {
  auto key = canonical_key(f);
  FormulaMultiset out;
  for (const auto& g : ms)
    if (canonical_key(g) != key) out.push_back(g);
  return out;
}

int ms_count(const FormulaMultiset& ms, const FormulaPtr& f) {
  auto key = canonical_key(f);
  int n = 0;
  for (const auto& g : ms)
    if (canonical_key(g) == key) n++;
  return n;
}

FormulaMultiset ms_plus(FormulaMultiset ms, const FormulaPtr& f) {
  ms.push_back(f);
  return ms;
}

FormulaMultiset ms_union(const FormulaMultiset& a, const FormulaMultiset& b) {
  FormulaMultiset out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<std::pair<FormulaPtr, int>> ms_tally(const FormulaMultiset& ms) {
  std::map<std::string, std::pair<FormulaPtr, int>> acc;
  for (const auto& f : ms) {
    auto key = canonical_key(f);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, std::make_pair(f, 1));
    else
      it->second.second++;
  }
  std::vector<std::pair<FormulaPtr, int>> out;
  out.reserve(acc.size());
  for (auto& [k, v] : acc) out.push_back(v);
  return out;
}

bool sequent_eq(const Sequent& a, const Sequent& b) {
  return ms_equal(a.antecedent, b.antecedent) && ms_equal(a.succedent, b.succedent);
}

}  // namespace proofbench
