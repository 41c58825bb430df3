#ifndef PROOFBENCH_FORMULA_HPP
#define PROOFBENCH_FORMULA_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace proofbench {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// First-order terms. Constants are zero-argument function symbols.
struct Term {
  enum class Kind { Var, Fun };
  Kind kind;
  std::string name;
  std::vector<TermPtr> args;

  bool is_var() const { return kind == Kind::Var; }
};

TermPtr mk_var(std::string name);
TermPtr mk_fun(std::string name, std::vector<TermPtr> args = {});

bool term_eq(const TermPtr& a, const TermPtr& b);
void term_vars(const TermPtr& t, std::set<std::string>& out);
TermPtr term_subst(const TermPtr& t, const std::string& var, const TermPtr& repl);
std::string print_term(const TermPtr& t);

enum class FKind { Atom, Bottom, Not, And, Or, Imp, Forall, Exists, Custom };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula tree. `name` holds the atom/connective name, or the
/// bound variable for quantifiers. `args` is only used by atoms.
struct Formula {
  FKind kind;
  std::string name;
  std::vector<TermPtr> args;
  std::vector<FormulaPtr> kids;
};

FormulaPtr mk_atom(std::string name, std::vector<TermPtr> args = {});
FormulaPtr mk_bottom();
FormulaPtr mk_not(FormulaPtr a);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_imp(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_forall(std::string var, FormulaPtr body);
FormulaPtr mk_exists(std::string var, FormulaPtr body);
FormulaPtr mk_custom(std::string name, std::vector<FormulaPtr> args);

bool is_quantifier(const FormulaPtr& f);

/// Variables with at least one free occurrence.
std::set<std::string> free_vars(const FormulaPtr& f);

/// All variables mentioned anywhere (free or bound), plus bound names.
std::set<std::string> all_vars(const FormulaPtr& f);

/// Deterministic fresh name: appends primes until `base` avoids `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

/// Capture-avoiding substitution of `t` for free occurrences of `var`.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t);

/// Equality up to consistent renaming of bound variables.
bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b);

/// Total order compatible with alpha_eq (canonical renaming of binders);
/// used to key multisets of formulas.
std::string canonical_key(const FormulaPtr& f);

/// Reflexive-transitive closure of immediate subformulas. Quantifier bodies
/// are included with the bound variable left in place.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

/// True iff `sub` occurs in `sup` when quantified bodies may be instantiated
/// by arbitrary terms.
bool is_subformula_instance(const FormulaPtr& sub, const FormulaPtr& sup);

/// Finds t with substitute(pattern, hole, t) alpha-equal to candidate.
/// When `hole` has no free occurrence in `pattern`, returns Var(hole) if the
/// two formulas are alpha-equal (any term works).
std::optional<TermPtr> match_single_instance(const FormulaPtr& pattern, const std::string& hole,
                                             const FormulaPtr& candidate);

/// True iff the formula is propositional: zero-arity atoms and the
/// propositional connectives only (no quantifiers, no custom connectives).
bool is_propositional(const FormulaPtr& f);

}  // namespace proofbench

#endif
