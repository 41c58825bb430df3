#ifndef PROOFBENCH_REPORT_HPP
#define PROOFBENCH_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proofbench/formula.hpp"
#include "proofbench/sequent.hpp"

namespace proofbench {

struct Diagnostic {
  std::string path;
  std::string message;
};

/// Verdict plus per-node diagnostics and a rule-usage census; shared by all
/// checkers. Natural-deduction and Hilbert checks fill conclusion and
/// open_assumptions; sequent checks fill end_sequent.
struct CheckReport {
  bool valid = false;
  FormulaPtr conclusion;
  std::optional<Sequent> end_sequent;
  FormulaMultiset open_assumptions;
  std::map<std::string, int> rule_usage;
  std::vector<Diagnostic> diagnostics;
};

struct SubformulaReport {
  bool pass = false;
  std::vector<Diagnostic> violations;
};

}  // namespace proofbench

#endif
