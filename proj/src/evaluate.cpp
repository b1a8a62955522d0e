#include "metaprio/evaluate.hpp"

#include <algorithm>

namespace metaprio::evaluate {

namespace {

// Ordering positions as kill-matrix row indices, validating that the two
// agree on the MR set.
std::vector<std::size_t> sequence_rows(const prioritize::Ordering& o,
                                       const mutation::KillMatrix& km) {
  std::map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < km.mr_ids.size(); ++r) row_of[km.mr_ids[r]] = r;
  if (o.sequence.size() != km.mr_ids.size() || row_of.size() != km.mr_ids.size()) {
    throw MixedMrSetsError("ordering and kill matrix disagree on the MR set");
  }
  std::vector<std::size_t> rows;
  std::vector<bool> seen(km.mr_ids.size(), false);
  for (const auto& id : o.sequence) {
    auto it = row_of.find(id);
    if (it == row_of.end() || seen[it->second]) {
      throw MixedMrSetsError("ordering is not a permutation of the matrix's MRs");
    }
    seen[it->second] = true;
    rows.push_back(it->second);
  }
  return rows;
}

std::vector<std::size_t> killable_columns(const mutation::KillMatrix& km) {
  std::vector<std::size_t> cols;
  for (std::size_t m = 0; m < km.mutant_ids.size(); ++m) {
    if (km.killable(m)) cols.push_back(m);
  }
  if (cols.empty()) throw NoKillableMutantsError("kill matrix has no killable mutants");
  return cols;
}

// 1-based rank of the first MR in the ordering that kills each killable
// column. Every killable column is killed by some row, so ranks always exist.
std::vector<std::size_t> first_detection_ranks(const std::vector<std::size_t>& rows,
                                               const std::vector<std::size_t>& cols,
                                               const mutation::KillMatrix& km) {
  std::vector<std::size_t> ranks;
  ranks.reserve(cols.size());
  for (std::size_t c : cols) {
    for (std::size_t pos = 0; pos < rows.size(); ++pos) {
      if (km.kills[rows[pos]][c]) {
        ranks.push_back(pos + 1);
        break;
      }
    }
  }
  return ranks;
}

}  // namespace

std::vector<Rational> effectiveness_curve(const prioritize::Ordering& o,
                                          const mutation::KillMatrix& km) {
  auto rows = sequence_rows(o, km);
  auto cols = killable_columns(km);
  const long long killable = static_cast<long long>(cols.size());

  std::vector<bool> dead(km.mutant_ids.size(), false);
  long long dead_count = 0;
  std::vector<Rational> curve;
  curve.reserve(rows.size());
  for (std::size_t r : rows) {
    for (std::size_t c : cols) {
      if (!dead[c] && km.kills[r][c]) {
        dead[c] = true;
        ++dead_count;
      }
    }
    curve.push_back(Rational(100 * dead_count, killable));
  }
  return curve;
}

int effective_set_size(const std::vector<Rational>& curve, const Rational& threshold) {
  const int n = static_cast<int>(curve.size());
  for (int m = 1; m < n; ++m) {
    if (curve[static_cast<std::size_t>(m)] - curve[static_cast<std::size_t>(m - 1)] < threshold) {
      return m;
    }
  }
  return n;
}

Rational avg_time_to_detect(const prioritize::Ordering& o, const mutation::KillMatrix& km) {
  auto rows = sequence_rows(o, km);
  auto cols = killable_columns(km);
  auto ranks = first_detection_ranks(rows, cols, km);

  std::vector<long long> prefix_cost(rows.size() + 1, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    prefix_cost[i + 1] = prefix_cost[i] + km.mr_cost_steps[rows[i]];
  }
  Rational total;
  for (std::size_t rank : ranks) total += Rational(prefix_cost[rank]);
  return total / Rational(static_cast<long long>(cols.size()));
}

Rational apfd(const prioritize::Ordering& o, const mutation::KillMatrix& km) {
  auto rows = sequence_rows(o, km);
  auto cols = killable_columns(km);
  auto ranks = first_detection_ranks(rows, cols, km);

  const long long n = static_cast<long long>(rows.size());
  const long long m = static_cast<long long>(cols.size());
  long long rank_sum = 0;
  for (std::size_t r : ranks) rank_sum += static_cast<long long>(r);
  return Rational(1) - Rational(rank_sum, n * m) + Rational(1, 2 * n);
}

EvaluationReport evaluate_ordering(const prioritize::Ordering& o,
                                   const mutation::KillMatrix& km,
                                   const std::vector<Rational>& thresholds) {
  EvaluationReport rep;
  rep.strategy = prioritize::to_string(o.strategy);
  rep.sequence = o.sequence;
  rep.curve = effectiveness_curve(o, km);
  for (const auto& t : thresholds) {
    rep.effective_size[t.to_decimal(1)] = effective_set_size(rep.curve, t);
  }
  rep.apfd = apfd(o, km);
  rep.avg_time_steps = avg_time_to_detect(o, km);
  rep.killable_count = km.killable_count();
  rep.mr_count = static_cast<int>(km.mr_ids.size());
  return rep;
}

BaselineAverage baseline_average(const std::vector<prioritize::Ordering>& orders,
                                 const mutation::KillMatrix& km, Parallelism par) {
  if (orders.empty()) throw lang::Error("baseline average needs at least one ordering");
  std::vector<std::string> canon = orders.front().sequence;
  std::sort(canon.begin(), canon.end());
  for (const auto& o : orders) {
    std::vector<std::string> ids = o.sequence;
    std::sort(ids.begin(), ids.end());
    if (ids != canon) throw MixedMrSetsError("baseline orderings cover different MR sets");
  }

  struct PerOrder {
    std::vector<Rational> curve;
    Rational apfd;
    Rational avg_time;
  };
  std::vector<PerOrder> results(orders.size());
  std::vector<std::string> errors(orders.size());
  parallel_for(par, orders.size(), [&](std::size_t i) {
    try {
      results[i].curve = effectiveness_curve(orders[i], km);
      results[i].apfd = apfd(orders[i], km);
      results[i].avg_time = avg_time_to_detect(orders[i], km);
    } catch (const std::exception& ex) {
      errors[i] = ex.what();
    }
  });
  for (const auto& e : errors) {
    if (!e.empty()) throw lang::Error("baseline evaluation failed: " + e);
  }

  BaselineAverage avg;
  avg.ordering_count = static_cast<int>(orders.size());
  const Rational count(static_cast<long long>(orders.size()));
  avg.curve.assign(results.front().curve.size(), Rational(0));
  for (const auto& r : results) {
    for (std::size_t i = 0; i < avg.curve.size(); ++i) avg.curve[i] += r.curve[i];
    avg.apfd += r.apfd;
    avg.avg_time_steps += r.avg_time;
  }
  for (auto& v : avg.curve) v /= count;
  avg.apfd /= count;
  avg.avg_time_steps /= count;
  return avg;
}

}  // namespace metaprio::evaluate
