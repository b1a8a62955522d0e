#include "metaprio/centrality.hpp"

#include "metaprio/parser.hpp"

namespace metaprio::centrality {

dep::SliceSet compute_br(const dep::Pdg& pdg, const lang::Cfg& cfg,
                         const exec::CoverageUnion& u) {
  dep::SliceSet br = dep::backward_slice(pdg, cfg.returns);
  br.members.insert(cfg.returns.begin(), cfg.returns.end());
  return dep::restrict_to_covered(br, u.statements);
}

std::pair<std::map<int, long long>, long long> statements_affected(
    const dep::Pdg& pdg, const dep::SliceSet& br, const exec::CoverageUnion& u) {
  std::map<int, long long> sa;
  long long total = 0;
  for (int s : br.members) {
    auto fwd = dep::restrict_to_covered(dep::forward_slice(pdg, s), u.statements);
    sa[s] = static_cast<long long>(fwd.members.size());
    total += sa[s];
  }
  return {std::move(sa), total};
}

std::pair<std::map<int, long long>, long long> projected_impact(
    const dep::Pdg& pdg, const dep::SliceSet& br, const exec::CoverageUnion& u) {
  std::map<int, long long> ti;
  long long total = 0;
  for (int s : br.members) {
    long long contribution = 0;
    auto fwd = dep::restrict_to_covered(dep::forward_slice(pdg, s), u.statements);
    for (int t : fwd.members) {
      auto second = dep::restrict_to_covered(dep::forward_slice(pdg, t), u.statements);
      contribution += static_cast<long long>(second.members.size());
    }
    ti[s] = contribution;
    total += contribution;
  }
  return {std::move(ti), total};
}

std::pair<std::map<int, Rational>, Rational> fault_propagation(const lang::Program& p,
                                                               const lang::Cfg& cfg,
                                                               const dep::SliceSet& br) {
  std::map<int, Rational> pf;
  Rational total;
  for (int s : br.members) {
    long long denom = lang::count_operators(p, s) + dep::distance_to_output(cfg, s);
    Rational value = denom == 0 ? Rational(1) : Rational(1, denom);
    pf[s] = value;
    total += value;
  }
  return {std::move(pf), total};
}

ScoreBreakdown mr_quality_score(const lang::Program& p,
                                const std::map<std::string, dep::Pdg>& pdgs,
                                const std::map<std::string, lang::Cfg>& cfgs,
                                const mt::MrRunResult& result) {
  if (result.coverage.statements.empty()) {
    throw EmptyCoverageError("MR '" + result.mr_id + "' covered no statements");
  }
  ScoreBreakdown out;
  out.mr = result.mr_id;
  for (const auto& f : p.functions) {
    bool touched = false;
    lang::for_each_stmt(f, [&](const lang::Stmt& s) {
      if (result.coverage.statements.count(s.id)) touched = true;
    });
    if (!touched) continue;

    const dep::Pdg& pdg = pdgs.at(f.name);
    const lang::Cfg& cfg = cfgs.at(f.name);
    dep::SliceSet br = compute_br(pdg, cfg, result.coverage);

    MethodScore ms;
    ms.ta = statements_affected(pdg, br, result.coverage).second;
    ms.ti = projected_impact(pdg, br, result.coverage).second;
    ms.tfp = fault_propagation(p, cfg, br).second;
    out.per_method.emplace(f.name, ms);

    out.ta_total += ms.ta;
    out.ti_total += ms.ti;
    out.tfp_total += ms.tfp;
  }
  out.quality = Rational(out.ta_total) + Rational(out.ti_total) + out.tfp_total;
  return out;
}

}  // namespace metaprio::centrality
