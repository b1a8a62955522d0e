#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "metaprio/ast.hpp"
#include "metaprio/cfg.hpp"

namespace metaprio::dep {

// Program dependence graph for one function. Edges connect statement ids.
//   data edge (d, u): the definition at d reaches a use of the same variable at u
//   ctrl edge (c, x): x is control dependent on c (post-dominance criterion);
//                     self-edges are dropped, so loop headers do not control themselves
struct Pdg {
  std::string function;
  std::set<std::pair<int, int>> data_edges;
  std::set<std::pair<int, int>> ctrl_edges;
};

enum class SliceDir { Forward, Backward };

struct SliceSet {
  std::set<int> seeds;
  SliceDir direction = SliceDir::Forward;
  std::set<int> members;
};

Pdg compute_pdg(const lang::Program& p, const std::string& function);
Pdg compute_pdg(const lang::Function& f);

// Statements with a dependence path of length >= 1 INTO any seed. A seed
// appears in members only when it is itself reachable from a seed (shared
// dependence or a cycle).
SliceSet backward_slice(const Pdg& pdg, const std::set<int>& seeds);

// Statements with a dependence path of length >= 1 FROM s; s itself appears
// only when it lies on a cycle.
SliceSet forward_slice(const Pdg& pdg, int s);

// Minimum number of CFG edges from s to any return statement; 0 when s is a
// return. Throws UnknownStatementError for ids outside the cfg.
int distance_to_output(const lang::Cfg& cfg, int s);

// Intersects slice members with a covered-statement set; seeds unchanged.
SliceSet restrict_to_covered(const SliceSet& slice, const std::set<int>& covered);

}  // namespace metaprio::dep
