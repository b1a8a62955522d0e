#include "metaprio/pdg.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace metaprio::dep {

using lang::BranchTag;
using lang::Cfg;
using lang::CfgEdge;
using lang::Function;
using lang::kEntryNode;
using lang::kExitNode;
using lang::Program;
using lang::Stmt;
using lang::StmtKind;

namespace {

// One reaching definition: (variable, defining statement id).
using Def = std::pair<std::string, int>;
using DefSet = std::set<Def>;

// Collects the statements of one function keyed by id, in id order.
std::map<int, const Stmt*> stmts_by_id(const Function& f) {
  std::map<int, const Stmt*> out;
  lang::for_each_stmt(f, [&](const Stmt& s) { out.emplace(s.id, &s); });
  return out;
}

std::set<std::pair<int, int>> data_dependence(const Function& f, const Cfg& cfg) {
  auto stmts = stmts_by_id(f);

  // Reaching definitions, forward may-analysis. Scalar assignment kills every
  // other def of the variable; an array write is a weak update and kills
  // nothing (the rest of the array flows through).
  std::map<int, DefSet> in, out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [id, s] : stmts) {
      DefSet in_set;
      for (int p : cfg.predecessors(id)) {
        if (p == kEntryNode) continue;
        const DefSet& prev = out[p];
        in_set.insert(prev.begin(), prev.end());
      }
      DefSet out_set;
      if (s->kind == StmtKind::Assign) {
        for (const auto& d : in_set) {
          if (d.first != s->target) out_set.insert(d);
        }
        out_set.emplace(s->target, id);
      } else {
        out_set = in_set;
        if (s->kind == StmtKind::ArrayWrite) out_set.emplace(s->target, id);
      }
      if (in_set != in[id] || out_set != out[id]) {
        in[id] = std::move(in_set);
        out[id] = std::move(out_set);
        changed = true;
      }
    }
  }

  std::set<std::pair<int, int>> edges;
  for (const auto& [id, s] : stmts) {
    for (const auto& [var, def_id] : in[id]) {
      if (s->uses.count(var)) edges.emplace(def_id, id);
    }
  }
  return edges;
}

std::set<std::pair<int, int>> control_dependence(const Cfg& cfg) {
  // Post-dominator sets by fixpoint over the CFG augmented with entry->exit,
  // which makes branch-free statements depend on nothing rather than leaving
  // them unanchored.
  std::vector<CfgEdge> edges = cfg.edges;
  edges.push_back({kEntryNode, kExitNode, BranchTag::None});

  const std::set<int>& nodes = cfg.nodes;
  auto succs = [&](int n) {
    std::vector<int> out;
    for (const auto& e : edges) {
      if (e.from == n) out.push_back(e.to);
    }
    return out;
  };

  std::map<int, std::set<int>> pdom;
  for (int n : nodes) pdom[n] = (n == kExitNode) ? std::set<int>{n} : nodes;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n : nodes) {
      if (n == kExitNode) continue;
      std::set<int> acc;
      bool first = true;
      for (int s : succs(n)) {
        if (first) {
          acc = pdom[s];
          first = false;
        } else {
          std::set<int> inter;
          std::set_intersection(acc.begin(), acc.end(), pdom[s].begin(), pdom[s].end(),
                                std::inserter(inter, inter.begin()));
          acc = std::move(inter);
        }
      }
      acc.insert(n);
      if (acc != pdom[n]) {
        pdom[n] = std::move(acc);
        changed = true;
      }
    }
  }

  // Immediate post-dominator: the member of strict_pdom(n) whose own pdom set
  // equals strict_pdom(n) (the sets are chain-nested along the tree).
  auto ipdom = [&](int n) -> int {
    std::set<int> strict = pdom[n];
    strict.erase(n);
    for (int m : strict) {
      if (pdom[m] == strict) return m;
    }
    return kExitNode;
  };

  // Ferrante–Ottenstein–Warren: for edge (a,b) where b does not post-dominate
  // a, every node on the pdom-tree path from b up to (excluding) ipdom(a) is
  // control dependent on a.
  std::set<std::pair<int, int>> out;
  for (const auto& e : edges) {
    int a = e.from, b = e.to;
    if (pdom[a].count(b)) continue;
    int stop = ipdom(a);
    int cur = b;
    while (cur != stop) {
      if (a >= 1 && cur >= 1 && a != cur) out.emplace(a, cur);
      cur = ipdom(cur);
    }
  }
  return out;
}

// Adjacency (forward or reversed) over the union of data and ctrl edges.
std::map<int, std::vector<int>> adjacency(const Pdg& pdg, bool reversed) {
  std::map<int, std::vector<int>> adj;
  auto add = [&](const std::pair<int, int>& e) {
    if (reversed) {
      adj[e.second].push_back(e.first);
    } else {
      adj[e.first].push_back(e.second);
    }
  };
  for (const auto& e : pdg.data_edges) add(e);
  for (const auto& e : pdg.ctrl_edges) add(e);
  return adj;
}

// Nodes reachable by a path of length >= 1 from any of `starts`.
std::set<int> reach(const std::map<int, std::vector<int>>& adj, const std::set<int>& starts) {
  std::set<int> seen;
  std::deque<int> work;
  for (int s : starts) {
    auto it = adj.find(s);
    if (it == adj.end()) continue;
    for (int t : it->second) {
      if (seen.insert(t).second) work.push_back(t);
    }
  }
  while (!work.empty()) {
    int n = work.front();
    work.pop_front();
    auto it = adj.find(n);
    if (it == adj.end()) continue;
    for (int t : it->second) {
      if (seen.insert(t).second) work.push_back(t);
    }
  }
  return seen;
}

}  // namespace

Pdg compute_pdg(const Function& f) {
  Cfg cfg = lang::build_cfg(f);
  Pdg pdg;
  pdg.function = f.name;
  pdg.data_edges = data_dependence(f, cfg);
  pdg.ctrl_edges = control_dependence(cfg);
  return pdg;
}

Pdg compute_pdg(const Program& p, const std::string& function) {
  return compute_pdg(p.function(function));
}

SliceSet backward_slice(const Pdg& pdg, const std::set<int>& seeds) {
  SliceSet s;
  s.seeds = seeds;
  s.direction = SliceDir::Backward;
  s.members = reach(adjacency(pdg, /*reversed=*/true), seeds);
  return s;
}

SliceSet forward_slice(const Pdg& pdg, int seed) {
  SliceSet s;
  s.seeds = {seed};
  s.direction = SliceDir::Forward;
  s.members = reach(adjacency(pdg, /*reversed=*/false), {seed});
  return s;
}

int distance_to_output(const Cfg& cfg, int s) {
  if (!cfg.nodes.count(s) || s == kEntryNode || s == kExitNode) {
    throw lang::UnknownStatementError("statement " + std::to_string(s) + " not in cfg of " +
                                      cfg.function);
  }
  if (cfg.returns.count(s)) return 0;
  std::map<int, int> dist{{s, 0}};
  std::deque<int> work{s};
  while (!work.empty()) {
    int n = work.front();
    work.pop_front();
    for (int t : cfg.successors(n)) {
      if (dist.count(t)) continue;
      dist[t] = dist[n] + 1;
      if (cfg.returns.count(t)) return dist[t];
      work.push_back(t);
    }
  }
  throw lang::Error("no return reachable from statement " + std::to_string(s));
}

SliceSet restrict_to_covered(const SliceSet& slice, const std::set<int>& covered) {
  SliceSet out = slice;
  out.members.clear();
  std::set_intersection(slice.members.begin(), slice.members.end(), covered.begin(),
                        covered.end(), std::inserter(out.members, out.members.begin()));
  return out;
}

}  // namespace metaprio::dep
