#ifndef PROOFBENCH_NATDED_HPP
#define PROOFBENCH_NATDED_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofbench/connective.hpp"
#include "proofbench/formula.hpp"
#include "proofbench/report.hpp"

namespace proofbench {

struct NDNode;
using NDPtr = std::shared_ptr<const NDNode>;

/// Natural-deduction proof tree. A node is either a hypothesis leaf
/// (rule == "Hyp") or a rule application. Discharge labels bind the Hyp
/// leaves with that label in the subtree above, up to shadowing by a deeper
/// node discharging the same label.
struct NDNode {
  std::string rule;
  std::string label;  // Hyp leaves only
  FormulaPtr formula;
  std::vector<NDPtr> premises;
  std::vector<std::string> discharges;
  std::optional<std::string> eigen;
  TermPtr witness;  // may be null
};

NDPtr nd_hyp(std::string label, FormulaPtr formula);
NDPtr nd_rule(std::string rule, FormulaPtr conclusion, std::vector<NDPtr> premises,
              std::vector<std::string> discharges = {},
              std::optional<std::string> eigen = std::nullopt, TermPtr witness = nullptr);

enum class ClassicalExt { None, DNE, LEM, RAA, CD };

struct NDRuleset {
  ClassicalExt ext = ClassicalExt::None;
  bool general_elim = false;

  std::string name() const;
  static NDRuleset nj() { return {}; }
  static NDRuleset nk(ClassicalExt e) { return {e, false}; }
  static std::optional<NDRuleset> by_name(const std::string& name);
};

/// Checks the proof against the ruleset (plus any registered custom
/// connectives). Reports conclusion, open assumptions (one occurrence per
/// undischarged hypothesis label), rule usage, and per-node diagnostics.
CheckReport check_nd(const NDPtr& p, const NDRuleset& rs,
                     const ConnectiveRegistry& reg = ConnectiveRegistry::none());

/// Census of rule names over all nodes (Hyp leaves excluded).
std::map<std::string, int> rule_usage(const NDPtr& p);

/// Open assumption classes: label -> formula for every undischarged Hyp.
std::vector<std::pair<std::string, FormulaPtr>> open_assumptions(const NDPtr& p);

/// Paths of introduction nodes whose conclusion is the major premise of the
/// matching elimination ("local peaks"). Requires a check-valid proof.
std::vector<std::string> maximal_formulas(const NDPtr& p, const NDRuleset& rs,
                                          const ConnectiveRegistry& reg = ConnectiveRegistry::none());

class NormalizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Prawitz normalization: detour reductions for all connectives and
/// quantifiers plus permutative conversions over OrE/ExistsE/BotE segments.
/// Refuses proofs containing classical rules (DNE/LEM/RAA/CD).
NDPtr normalize(const NDPtr& p, const NDRuleset& rs = NDRuleset::nj(),
                const ConnectiveRegistry& reg = ConnectiveRegistry::none());

/// Passes iff every formula in the proof is a subformula-instance of the
/// conclusion or an open assumption, where a negation ~G is admitted when G
/// is, and bot is always admitted.
SubformulaReport nd_subformula_check(const NDPtr& p);

/// Replaces every ~A by A -> bot, recursively.
FormulaPtr translate_neg(const FormulaPtr& f);

struct EquivFixture {
  NDRuleset ruleset;
  FormulaPtr theorem;
  NDPtr proof;
};

/// Packaged derivations of interderivable classical laws, each valid under
/// its named ruleset only: DNE |- A|~A, LEM |- ~~p->p, RAA |- ~~p->p,
/// CD |- A|~A.
std::vector<EquivFixture> classical_equivalences();

// Proof-tree utilities shared with the sequent bridge and the search
// engines. All are pure; trees are never mutated in place.

/// Hyp leaves with `label` in `p`, not shadowed by an inner discharge.
std::vector<NDPtr> hyp_occurrences(const NDPtr& p, const std::string& label);

/// Replaces unshadowed Hyp leaves labelled `label` by `replacement`.
NDPtr subst_hyp(const NDPtr& p, const std::string& label, const NDPtr& replacement);

/// Substitutes a term for a free variable throughout the proof, renaming
/// eigenvariables as needed to avoid capture.
NDPtr subst_term_in_proof(const NDPtr& p, const std::string& var, const TermPtr& t);

/// Renames every discharge label (and its bound leaves) to a fresh name.
NDPtr refresh_bound_labels(const NDPtr& p, int& counter);

std::string print_nd(const NDPtr& p);

}  // namespace proofbench

#endif
