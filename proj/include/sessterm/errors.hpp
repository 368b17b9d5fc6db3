#pragma once

#include <stdexcept>
#include <string>

namespace sessterm {

struct SyntaxError : std::runtime_error {
  int line;
  int col;
  std::string expected;
  SyntaxError(int line_, int col_, std::string expected_, const std::string& got)
      : std::runtime_error("syntax error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": expected " + expected_ +
                           ", got " + got),
        line(line_),
        col(col_),
        expected(std::move(expected_)) {}
};

// Checker and translator failures. `code` is a stable machine-readable tag
// (UnknownName, LeftoverLinear, QualifierMismatch, PayloadMismatch,
// DualityViolation, ModeMismatch, LevelViolation, TypeMismatch, MissingLevel,
// Unsatisfiable, LinearLeftover, ZoneViolation, SplitFailure, RuleMismatch,
// MissingCutAnnotation, MixedServerClient, SideConditionViolation,
// RowConditionViolation, NoRowApplies, NoClauseApplies, MissingTypeInfo,
// DuplicateAnnotation, ...); the message carries the details.
struct CheckError : std::runtime_error {
  std::string code;
  CheckError(std::string code_, const std::string& detail)
      : std::runtime_error(code_ + ": " + detail), code(std::move(code_)) {}
};

}  // namespace sessterm
