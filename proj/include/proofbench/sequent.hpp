#ifndef PROOFBENCH_SEQUENT_HPP
#define PROOFBENCH_SEQUENT_HPP

#include <map>
#include <string>
#include <vector>

#include "proofbench/formula.hpp"

namespace proofbench {

/// Multiset sequent Gamma => Delta. Order never matters; multiplicity does.
struct Sequent {
  std::vector<FormulaPtr> antecedent;
  std::vector<FormulaPtr> succedent;
};

// Multiset helpers over vectors of formulas, keyed by canonical_key.

using FormulaMultiset = std::vector<FormulaPtr>;

bool ms_equal(const FormulaMultiset& a, const FormulaMultiset& b);
bool ms_subset(const FormulaMultiset& a, const FormulaMultiset& b);
/// Removes one occurrence alpha-equal to f; false if none present.
bool ms_remove_one(FormulaMultiset& ms, const FormulaPtr& f);
/// Removes every occurrence alpha-equal to f.
FormulaMultiset ms_remove_all(const FormulaMultiset& ms, const FormulaPtr& f);
int ms_count(const FormulaMultiset& ms, const FormulaPtr& f);
FormulaMultiset ms_plus(FormulaMultiset ms, const FormulaPtr& f);
FormulaMultiset ms_union(const FormulaMultiset& a, const FormulaMultiset& b);
/// Distinct elements with their multiplicities, ordered by canonical key.
std::vector<std::pair<FormulaPtr, int>> ms_tally(const FormulaMultiset& ms);

bool sequent_eq(const Sequent& a, const Sequent& b);

}  // namespace proofbench

#endif
