#include "metaprio/prioritize.hpp"

#include <algorithm>
#include <set>

#include "metaprio/rng.hpp"

namespace metaprio::prioritize {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Centrality: return "centrality";
    case Strategy::FaultBased: return "fault_based";
    case Strategy::StmtCoverage: return "stmt_coverage";
    case Strategy::BranchCoverage: return "branch_coverage";
    case Strategy::Random: return "random";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "centrality") return Strategy::Centrality;
  if (s == "fault_based") return Strategy::FaultBased;
  if (s == "stmt_coverage") return Strategy::StmtCoverage;
  if (s == "branch_coverage") return Strategy::BranchCoverage;
  if (s == "random") return Strategy::Random;
  throw lang::Error("unknown prioritization strategy '" + s + "'");
}

Ordering centrality_order(const std::vector<centrality::ScoreBreakdown>& scores) {
  std::set<std::string> seen;
  for (const auto& s : scores) {
    if (!seen.insert(s.mr).second) {
      throw DuplicateMrError("MR '" + s.mr + "' scored more than once");
    }
  }
  std::vector<const centrality::ScoreBreakdown*> order;
  order.reserve(scores.size());
  for (const auto& s : scores) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const centrality::ScoreBreakdown* a, const centrality::ScoreBreakdown* b) {
              if (a->quality != b->quality) return b->quality < a->quality;
              return a->mr < b->mr;
            });
  Ordering out;
  out.strategy = Strategy::Centrality;
  for (const auto* s : order) out.sequence.push_back(s->mr);
  return out;
}

Ordering fault_based_order(const mutation::KillMatrix& km) {
  if (km.mr_ids.empty()) throw EmptyMatrixError("kill matrix has no MRs");
  const std::size_t n = km.mr_ids.size();
  const std::size_t faults = km.mutant_ids.size();

  std::vector<bool> covered(faults, false);
  std::vector<bool> done(n, false);
  Ordering out;
  out.strategy = Strategy::FaultBased;

  auto gain = [&](std::size_t i) {
    long long g = 0;
    for (std::size_t m = 0; m < faults; ++m) {
      if (km.kills[i][m] && !covered[m]) ++g;
    }
    return g;
  };

  bool fresh = true;
  while (out.sequence.size() < n) {
    long long best = -1;
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      long long g = gain(i);
      if (g > best || (g == best && pick < n && km.mr_ids[i] < km.mr_ids[pick])) {
        best = g;
        pick = i;
      }
    }
    if (best == 0 && !fresh) {
      covered.assign(faults, false);
      fresh = true;
      continue;
    }
    done[pick] = true;
    out.sequence.push_back(km.mr_ids[pick]);
    for (std::size_t m = 0; m < faults; ++m) {
      if (km.kills[pick][m]) covered[m] = true;
    }
    fresh = false;
  }
  return out;
}

Ordering coverage_order(const std::map<std::string, exec::CoverageUnion>& profiles,
                        CoverageUnit unit, std::uint64_t seed) {
  std::vector<std::string> ids;
  for (const auto& [id, u] : profiles) ids.push_back(id);
  for (const auto& [id, u] : profiles) {
    if (u.program_digest != profiles.begin()->second.program_digest) {
      throw exec::MixedProgramDigestError("coverage profiles come from different programs");
    }
  }

  // Dense unit indexing so the greedy loop is flat bitset arithmetic.
  std::map<std::pair<int, lang::BranchTag>, std::size_t> unit_index;
  std::vector<std::vector<std::size_t>> covers(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto& u = profiles.at(ids[i]);
    if (unit == CoverageUnit::Statement) {
      for (int s : u.statements) {
        auto [it, _] = unit_index.emplace(std::make_pair(s, lang::BranchTag::None),
                                          unit_index.size());
        covers[i].push_back(it->second);
      }
    } else {
      for (const auto& b : u.branches) {
        auto [it, _] = unit_index.emplace(b, unit_index.size());
        covers[i].push_back(it->second);
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<bool> covered(unit_index.size(), false);
  std::vector<bool> done(ids.size(), false);
  Ordering out;
  out.strategy = unit == CoverageUnit::Statement ? Strategy::StmtCoverage
                                                 : Strategy::BranchCoverage;
  out.seed = seed;

  auto gain = [&](std::size_t i) {
    long long g = 0;
    for (std::size_t ux : covers[i]) {
      if (!covered[ux]) ++g;
    }
    return g;
  };

  bool fresh = true;
  std::vector<std::size_t> tied;
  while (out.sequence.size() < ids.size()) {
    long long best = -1;
    tied.clear();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (done[i]) continue;
      long long g = gain(i);
      if (g > best) {
        best = g;
        tied.assign(1, i);
      } else if (g == best) {
        tied.push_back(i);
      }
    }
    if (best == 0 && !fresh) {
      covered.assign(covered.size(), false);
      fresh = true;
      continue;
    }
    // tied is already ascending by id (ids is sorted); random pick per spec.
    std::size_t pick =
        tied.size() == 1 ? tied[0] : tied[uniform_below(rng, tied.size())];
    done[pick] = true;
    out.sequence.push_back(ids[pick]);
    for (std::size_t ux : covers[pick]) covered[ux] = true;
    fresh = false;
  }
  return out;
}

std::vector<Ordering> random_orders(const std::vector<std::string>& mr_ids, int count,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Ordering> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Ordering o;
    o.strategy = Strategy::Random;
    o.seed = seed;
    o.sequence = mr_ids;
    shuffle_deterministic(o.sequence, rng);
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace metaprio::prioritize
