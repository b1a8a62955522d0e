#pragma once

#include <map>
#include <string>
#include <utility>

#include "metaprio/cfg.hpp"
#include "metaprio/mt.hpp"
#include "metaprio/pdg.hpp"
#include "metaprio/rational.hpp"

namespace metaprio::centrality {

struct EmptyCoverageError : lang::Error {
  using Error::Error;
};

// Per-method slice of one MR's score.
struct MethodScore {
  long long ta = 0;      // statements affected, summed over B_r
  long long ti = 0;      // second-order impact (double sum, no dedup)
  Rational tfp;          // fault propagation, exact
};

// How likely an MR is to surface a fault, judged purely from the statements
// its source suite covers: statements affected + projected impact + fault
// propagation, each summed per covered method and then across methods.
struct ScoreBreakdown {
  std::string mr;
  std::map<std::string, MethodScore> per_method;
  long long ta_total = 0;
  long long ti_total = 0;
  Rational tfp_total;
  Rational quality;  // ta_total + ti_total + tfp_total, exactly
};

// Covered statements a fault injected by the MR could propagate through: the
// backward slice from the function's return statements, plus the returns
// themselves, intersected with the covered set.
dep::SliceSet compute_br(const dep::Pdg& pdg, const lang::Cfg& cfg, const exec::CoverageUnion& u);

// SA_s = |covered forward slice of s| for each s in B_r; second element is
// the sum over B_r.
std::pair<std::map<int, long long>, long long> statements_affected(const dep::Pdg& pdg,
                                                                   const dep::SliceSet& br,
                                                                   const exec::CoverageUnion& u);

// For each s in B_r, sums |covered forward slice of s'| over every s' the
// covered forward slice of s contains. A statement reached from several
// members of B_r contributes once per occurrence.
std::pair<std::map<int, long long>, long long> projected_impact(const dep::Pdg& pdg,
                                                                const dep::SliceSet& br,
                                                                const exec::CoverageUnion& u);

// PF_s = 1 / (operator count of s + CFG hops from s to the nearest return),
// with PF_s = 1 when that denominator is zero (the statement is the output);
// second element sums PF over B_r.
std::pair<std::map<int, Rational>, Rational> fault_propagation(const lang::Program& p,
                                                               const lang::Cfg& cfg,
                                                               const dep::SliceSet& br);

// Full breakdown for one MR run: per covered method, B_r is computed from the
// run's coverage union and the three metrics are summed over it; methods the
// run never touched are skipped. Throws EmptyCoverageError when the run
// covered nothing.
ScoreBreakdown mr_quality_score(const lang::Program& p,
                                const std::map<std::string, dep::Pdg>& pdgs,
                                const std::map<std::string, lang::Cfg>& cfgs,
                                const mt::MrRunResult& result);

}  // namespace metaprio::centrality
