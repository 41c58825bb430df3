#ifndef PROOFBENCH_SYNTAX_HPP
#define PROOFBENCH_SYNTAX_HPP

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "proofbench/formula.hpp"
#include "proofbench/sequent.hpp"

namespace proofbench {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& expected, const std::string& got)
      : std::runtime_error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
                           ": expected " + expected + ", got " + got),
        line(line),
        col(col),
        expected(expected) {}
  int line;
  int col;
  std::string expected;
};

/// Names of declared custom connectives, usable as `name(f1,...,fn)`.
using ConnectiveNames = std::set<std::string>;

FormulaPtr parse_formula(std::string_view text, const ConnectiveNames& customs = {});
Sequent parse_sequent(std::string_view text, const ConnectiveNames& customs = {});

/// Minimal-parenthesis rendering; parse_formula(print_formula(f)) is
/// alpha-equivalent to f.
std::string print_formula(const FormulaPtr& f);
std::string print_sequent(const Sequent& s);

}  // namespace proofbench

#endif
