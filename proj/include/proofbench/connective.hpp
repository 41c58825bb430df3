#ifndef PROOFBENCH_CONNECTIVE_HPP
#define PROOFBENCH_CONNECTIVE_HPP

#include <map>
#include <string>
#include <vector>

#include "proofbench/formula.hpp"
#include "proofbench/syntax.hpp"

namespace proofbench {

/// One premise of a rule schema. A premise with nonempty hypotheses is a
/// discharging (minor) premise: its conclusion is derived under those
/// hypotheses.
struct SchemaPremise {
  std::vector<FormulaPtr> hyps;
  FormulaPtr conclusion;
};

/// Intro or elim rule schema for a defined connective. Metavariables are
/// atoms A0..A(arity-1); elim conclusions and minor conclusions may also use
/// the generic target C.
struct RuleSchema {
  std::string name;
  std::vector<SchemaPremise> premises;  // intro premises, or elim minors
  FormulaPtr major;                     // elims only: the connective formula
  FormulaPtr conclusion;
  bool is_elim = false;
};

struct ConnectiveDef {
  std::string name;
  int arity = 0;
  std::vector<RuleSchema> intros;
  std::vector<RuleSchema> elims;
};

/// Write-once table of defined connectives; read-only after the load phase.
class ConnectiveRegistry {
 public:
  void add(ConnectiveDef def);
  const ConnectiveDef* find(const std::string& name) const;
  /// Resolves a rule name like "tonkI", "tonkE2" to its schema.
  const RuleSchema* find_rule(const std::string& rule) const;
  ConnectiveNames names() const;
  bool empty_set() const { return defs_.empty(); }

  static const ConnectiveRegistry& none();

 private:
  std::map<std::string, ConnectiveDef> defs_;
};

}  // namespace proofbench

#endif
