#ifndef PROOFBENCH_SCHEMA_HPP
#define PROOFBENCH_SCHEMA_HPP

#include <map>
#include <optional>
#include <string>

#include "proofbench/formula.hpp"

namespace proofbench {

/// Binding produced by matching a schema against a formula. Formula
/// metavariables are atoms named [A-Z][0-9]* with no term arguments;
/// term metavariables are lowercase variables in schema term positions.
struct SchemaAssignment {
  std::map<std::string, FormulaPtr> formula_vars;
  std::map<std::string, TermPtr> term_vars;
};

/// True iff `name` is treated as a formula metavariable on the schema side.
bool is_metavariable(const std::string& name);

/// First-order one-sided matching: returns sigma with
/// instantiate(schema, sigma) alpha-equal to f, or nullopt.
std::optional<SchemaAssignment> match_schema(const FormulaPtr& schema, const FormulaPtr& f);

/// Replaces metavariables by their assignment. Unbound metavariables throw.
FormulaPtr instantiate(const FormulaPtr& schema, const SchemaAssignment& sigma);

}  // namespace proofbench

#endif
