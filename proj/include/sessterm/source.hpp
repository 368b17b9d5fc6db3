#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sessterm/errors.hpp"
#include "sessterm/proc.hpp"

namespace sessterm {

enum class Calculus { S, W, Dill };

std::string show(Calculus c);

enum class CtxMode { Plain, DualJoin };  // x : V   vs   x :: V

// A parsed analysis file. The process is Barendregt-normalized; restriction
// annotations are folded into the Res nodes, so the annotation lists below
// only describe free names.
struct SourceFile {
  Calculus calculus = Calculus::S;
  SProcPtr sproc;
  WProcPtr wproc;
  DProcPtr dproc;
  std::vector<std::pair<Name, SType>> s_types;
  std::vector<std::pair<Name, std::pair<CtxMode, WType>>> w_types;
  std::vector<std::pair<Name, DType>> d_types;
  std::optional<std::pair<Name, DType>> dill_root;
};

SourceFile parse(const std::string& text);
std::string print(const SourceFile& f);

SType parse_stype(const std::string& text);
WType parse_wtype(const std::string& text);
DType parse_dtype(const std::string& text);

}  // namespace sessterm
