#ifndef PROOFBENCH_SEQUENT_CALC_HPP
#define PROOFBENCH_SEQUENT_CALC_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofbench/natded.hpp"
#include "proofbench/report.hpp"
#include "proofbench/sequent.hpp"

namespace proofbench {

struct SKNode;
using SKPtr = std::shared_ptr<const SKNode>;

/// Sequent-calculus proof tree. "Ax" and "AxBot" are leaves; every other
/// node names a logical or structural rule. `principal` optionally pins the
/// rule's principal formula when the sequent leaves it ambiguous.
struct SKNode {
  std::string rule;
  Sequent sequent;
  std::vector<SKPtr> premises;
  FormulaPtr principal;  // may be null
  std::optional<std::string> eigen;
  TermPtr witness;  // may be null
};

SKPtr sk_ax(FormulaPtr a);
SKPtr sk_axbot();
SKPtr sk_rule(std::string rule, Sequent sequent, std::vector<SKPtr> premises,
              FormulaPtr principal = nullptr, std::optional<std::string> eigen = std::nullopt,
              TermPtr witness = nullptr);

enum class SKMode { LK, LJ };

struct SKSystem {
  SKMode mode = SKMode::LK;
  static SKSystem lk() { return {SKMode::LK}; }
  static SKSystem lj() { return {SKMode::LJ}; }
  std::string name() const { return mode == SKMode::LK ? "LK" : "LJ"; }
};

/// Checks every node against its named rule over multisets; LJ mode
/// additionally enforces at most one succedent formula per sequent.
CheckReport check_sk(const SKPtr& p, const SKSystem& sys);

class CutElimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gentzen cut elimination via a multicut (mix) auxiliary. The result has
/// the identical end-sequent and no Cut nodes. Throws CutElimError when the
/// configurable step ceiling is exceeded.
SKPtr cut_eliminate(const SKPtr& p, int step_ceiling = 2000000);

/// Passes iff the proof is cut-free and every formula in every sequent is a
/// subformula-instance of a formula in the end-sequent.
SubformulaReport sk_subformula_check(const SKPtr& p);

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Translates a check-valid propositional natural-deduction proof into a
/// sequent proof of open(p) => conclusion(p). NJ proofs produce LJ-conforming
/// output; classical rules use multisuccedent moves. Quantifier and custom
/// rules are declined with an explicit error.
SKPtr nd_to_sk(const NDPtr& p);

std::string print_sk(const SKPtr& p);

/// End-sequent convenience.
const Sequent& end_sequent(const SKPtr& p);

}  // namespace proofbench

#endif
