#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metaprio/centrality.hpp"
#include "metaprio/mutation.hpp"

namespace metaprio::prioritize {

enum class Strategy { Centrality, FaultBased, StmtCoverage, BranchCoverage, Random };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

// One complete MR ordering. The sequence is always a full permutation of the
// MR set — "top n" consumers just take a prefix.
struct Ordering {
  Strategy strategy = Strategy::Centrality;
  std::vector<std::string> sequence;
  std::optional<std::uint64_t> seed;            // seeded strategies only
  std::map<std::string, std::string> provenance;  // artifact name -> digest
};

struct DuplicateMrError : lang::Error {
  using Error::Error;
};

struct EmptyMatrixError : lang::Error {
  using Error::Error;
};

// Quality score descending; ties by MR id ascending.
Ordering centrality_order(const std::vector<centrality::ScoreBreakdown>& scores);

// Additional greedy over the kill matrix: repeatedly place the MR killing the
// most mutants nobody placed so far has killed (ties by MR id). When no
// remaining MR adds a new kill, the covered set resets and the greedy
// continues, so leftover MRs still come out in kill-count order.
Ordering fault_based_order(const mutation::KillMatrix& km);

enum class CoverageUnit { Statement, Branch };

// Additional greedy over per-MR coverage unions; same reset rule as above.
// Ties are broken by a seeded uniform pick among the tied MRs.
Ordering coverage_order(const std::map<std::string, exec::CoverageUnion>& profiles,
                        CoverageUnit unit, std::uint64_t seed);

// `count` independent uniform permutations from one seeded generator.
std::vector<Ordering> random_orders(const std::vector<std::string>& mr_ids, int count,
                                    std::uint64_t seed);

}  // namespace metaprio::prioritize
