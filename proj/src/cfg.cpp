#include "metaprio/cfg.hpp"

#include <algorithm>

namespace metaprio::lang {

std::string to_string(BranchTag t) {
  switch (t) {
    case BranchTag::None: return "none";
    case BranchTag::True: return "true";
    case BranchTag::False: return "false";
  }
  return "?";
}

std::vector<int> Cfg::successors(int node) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.from == node) out.push_back(e.to);
  }
  return out;
}

std::vector<int> Cfg::predecessors(int node) const {
  std::vector<int> out;
  for (const auto& e : edges) {
    if (e.to == node) out.push_back(e.from);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// A dangling edge source waiting for its target statement.
struct Pending {
  int from;
  BranchTag tag;
};

struct Builder {
  Cfg cfg;

  void edge(int from, int to, BranchTag tag) { cfg.edges.push_back({from, to, tag}); }

  std::vector<Pending> block(const std::vector<Stmt>& stmts, std::vector<Pending> incoming) {
    for (const auto& s : stmts) {
      cfg.nodes.insert(s.id);
      for (const auto& p : incoming) edge(p.from, s.id, p.tag);
      incoming.clear();
      switch (s.kind) {
        case StmtKind::Assign:
        case StmtKind::ArrayWrite:
        case StmtKind::Call:
          incoming.push_back({s.id, BranchTag::None});
          break;
        case StmtKind::Return:
          cfg.returns.insert(s.id);
          edge(s.id, kExitNode, BranchTag::None);
          break;
        case StmtKind::If: {
          auto then_out = block(s.body, {{s.id, BranchTag::True}});
          auto else_out = block(s.else_body, {{s.id, BranchTag::False}});
          incoming = std::move(then_out);
          incoming.insert(incoming.end(), else_out.begin(), else_out.end());
          break;
        }
        case StmtKind::While: {
          auto body_out = block(s.body, {{s.id, BranchTag::True}});
          for (const auto& p : body_out) edge(p.from, s.id, p.tag);  // back-edge
          incoming.push_back({s.id, BranchTag::False});
          break;
        }
      }
    }
    return incoming;
  }
};

}  // namespace

Cfg build_cfg(const Function& f) {
  Builder b;
  b.cfg.function = f.name;
  b.cfg.nodes.insert(kEntryNode);
  b.cfg.nodes.insert(kExitNode);
  auto leftovers = b.block(f.body, {{kEntryNode, BranchTag::None}});
  // The parser enforces that all paths return, so nothing should dangle.
  for (const auto& p : leftovers) b.edge(p.from, kExitNode, p.tag);
  std::sort(b.cfg.edges.begin(), b.cfg.edges.end());
  b.cfg.edges.erase(std::unique(b.cfg.edges.begin(), b.cfg.edges.end()), b.cfg.edges.end());
  return b.cfg;
}

}  // namespace metaprio::lang
