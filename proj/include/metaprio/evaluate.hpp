#pragma once

#include <map>
#include <string>
#include <vector>

#include "metaprio/parallel.hpp"
#include "metaprio/prioritize.hpp"
#include "metaprio/rational.hpp"

namespace metaprio::evaluate {

struct NoKillableMutantsError : lang::Error {
  using Error::Error;
};

// Thrown when orderings and kill matrix disagree about the MR set.
struct MixedMrSetsError : lang::Error {
  using Error::Error;
};

// How one ordering performs against a validation kill matrix. Percentages,
// APFD and step counts are exact rationals; rendering rounds, math never does.
struct EvaluationReport {
  std::string strategy;
  std::vector<std::string> sequence;
  std::vector<Rational> curve;              // entry i: % killed by the first i+1 MRs
  std::map<std::string, int> effective_size;  // threshold (decimal text) -> m
  Rational apfd;
  Rational avg_time_steps;
  int killable_count = 0;
  int mr_count = 0;
};

// Entry m (1-based) is 100 * |union of kills of the first m MRs| / killable.
// Only mutants some MR kills count toward the denominator.
std::vector<Rational> effectiveness_curve(const prioritize::Ordering& o,
                                          const mutation::KillMatrix& km);

// Smallest m >= 1 whose next step gains less than `threshold` percentage
// points; the full set size when every step gains at least that much.
int effective_set_size(const std::vector<Rational>& curve, const Rational& threshold);

// Mean over killable mutants of the summed step cost of every MR up to and
// including the first one that kills the mutant.
Rational avg_time_to_detect(const prioritize::Ordering& o, const mutation::KillMatrix& km);

// 1 - (sum of first-detection ranks)/(n*m) + 1/(2n) over the m killable
// mutants; n is the MR count.
Rational apfd(const prioritize::Ordering& o, const mutation::KillMatrix& km);

EvaluationReport evaluate_ordering(const prioritize::Ordering& o,
                                   const mutation::KillMatrix& km,
                                   const std::vector<Rational>& thresholds);

// Pointwise mean of the per-ordering curves plus mean APFD and mean time,
// typically over the 100 random baseline orderings.
struct BaselineAverage {
  std::vector<Rational> curve;
  Rational apfd;
  Rational avg_time_steps;
  int ordering_count = 0;
};

BaselineAverage baseline_average(const std::vector<prioritize::Ordering>& orders,
                                 const mutation::KillMatrix& km,
                                 Parallelism par = Parallelism::Serial);

}  // namespace metaprio::evaluate
