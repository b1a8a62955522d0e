#pragma once

#include <set>
#include <string>
#include <vector>

#include "metaprio/ast.hpp"

namespace metaprio::lang {

// Synthetic CFG endpoints. Real statements use their positive ids.
inline constexpr int kEntryNode = 0;
inline constexpr int kExitNode = -1;

enum class BranchTag { None, True, False };

std::string to_string(BranchTag t);

struct CfgEdge {
  int from = 0;
  int to = 0;
  BranchTag tag = BranchTag::None;

  friend bool operator==(const CfgEdge&, const CfgEdge&) = default;
  friend auto operator<=>(const CfgEdge&, const CfgEdge&) = default;
};

struct Cfg {
  std::string function;
  std::set<int> nodes;  // statement ids plus kEntryNode/kExitNode
  std::vector<CfgEdge> edges;  // sorted by (from, to, tag)
  std::set<int> returns;

  std::vector<int> successors(int node) const;
  std::vector<int> predecessors(int node) const;
};

// Builds the per-function control-flow graph. if/while headers carry one
// true-edge and one false-edge; return statements edge to kExitNode; while
// body tails edge back to the header.
Cfg build_cfg(const Function& f);

}  // namespace metaprio::lang
