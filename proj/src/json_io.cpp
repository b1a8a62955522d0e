#include "metaprio/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "metaprio/digest.hpp"
#include "metaprio/parser.hpp"
#include "metaprio/pdg.hpp"
#include "metaprio/printer.hpp"

namespace metaprio::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& need(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing");
  return *it;
}

std::string need_str(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

long long need_int(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<long long>();
}

const json& need_array(const json& obj, const char* key, const std::string& path) {
  const json& v = need(obj, key, path);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

long long opt_int(const json& obj, const char* key, long long fallback,
                  const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<long long>();
}

std::string opt_str(const json& obj, const char* key, const std::string& fallback,
                    const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

json parse_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ConfigError(path + ": " + ex.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- Value <-> JSON ---------------------------------------------------------

json value_to_json(const exec::Value& v) {
  json out;
  switch (v.type) {
    case lang::ValueType::Int:
      out["type"] = "int";
      out["value"] = v.i;
      break;
    case lang::ValueType::Bool:
      out["type"] = "bool";
      out["value"] = v.b;
      break;
    case lang::ValueType::IntArray:
      out["type"] = "int_array";
      out["value"] = v.arr;
      break;
  }
  return out;
}

exec::Value value_from_json(const json& j, const std::string& path) {
  std::string type = need_str(j, "type", path);
  const json& val = need(j, "value", path);
  if (type == "int") {
    if (!val.is_number_integer()) fail(path + ".value", "expected an integer");
    return exec::Value::of_int(val.get<long long>());
  }
  if (type == "bool") {
    if (!val.is_boolean()) fail(path + ".value", "expected a boolean");
    return exec::Value::of_bool(val.get<bool>());
  }
  if (type == "int_array") {
    if (!val.is_array()) fail(path + ".value", "expected an array");
    std::vector<long long> arr;
    for (std::size_t i = 0; i < val.size(); ++i) {
      if (!val[i].is_number_integer()) {
        fail(path + ".value[" + std::to_string(i) + "]", "expected an integer");
      }
      arr.push_back(val[i].get<long long>());
    }
    return exec::Value::of_array(std::move(arr));
  }
  fail(path + ".type", "unknown value type '" + type + "'");
}

lang::BranchTag branch_tag_from_string(const std::string& s, const std::string& path) {
  if (s == "true") return lang::BranchTag::True;
  if (s == "false") return lang::BranchTag::False;
  if (s == "none") return lang::BranchTag::None;
  fail(path, "unknown branch tag '" + s + "'");
}

mt::VerdictKind verdict_kind_from_string(const std::string& s, const std::string& path) {
  if (s == "satisfied") return mt::VerdictKind::Satisfied;
  if (s == "violated") return mt::VerdictKind::Violated;
  if (s == "error") return mt::VerdictKind::Error;
  fail(path, "unknown verdict kind '" + s + "'");
}

mt::ErrorCause error_cause_from_string(const std::string& s, const std::string& path) {
  if (s == "none") return mt::ErrorCause::None;
  if (s == "runtime-error") return mt::ErrorCause::RuntimeError;
  if (s == "step-limit") return mt::ErrorCause::StepLimit;
  if (s == "shape-mismatch") return mt::ErrorCause::ShapeMismatch;
  fail(path, "unknown error cause '" + s + "'");
}

json coverage_to_json(const exec::CoverageUnion& u) {
  json out;
  out["statements"] = u.statements;
  json branches = json::array();
  for (const auto& [stmt, tag] : u.branches) {
    branches.push_back({{"stmt", stmt}, {"tag", lang::to_string(tag)}});
  }
  out["branches"] = branches;
  return out;
}

mt::SuiteRole role_from_string(const std::string& s, const std::string& path) {
  if (s == "prioritizing_source") return mt::SuiteRole::PrioritizingSource;
  if (s == "prioritizing_followup") return mt::SuiteRole::PrioritizingFollowup;
  if (s == "validation_source") return mt::SuiteRole::ValidationSource;
  if (s == "validation_followup") return mt::SuiteRole::ValidationFollowup;
  fail(path, "unknown suite role '" + s + "'");
}

}  // namespace

// --- files -------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
}

std::string digest(const std::string& content) { return fnv1a64_hex(content); }

// --- test suites ---------------------------------------------------------------

mt::TestSuite load_test_suite(const std::string& path) {
  json j = parse_file(path);
  mt::TestSuite suite;
  suite.role = role_from_string(need_str(j, "role", "$"), "$.role");
  const json& cases = need_array(j, "cases", "$");
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::string at = "$.cases[" + std::to_string(i) + "]";
    mt::TestCase tc;
    tc.id = need_str(cases[i], "id", at);
    tc.entry = need_str(cases[i], "entry", at);
    const json& args = need_array(cases[i], "args", at);
    for (std::size_t a = 0; a < args.size(); ++a) {
      tc.args.push_back(value_from_json(args[a], at + ".args[" + std::to_string(a) + "]"));
    }
    suite.cases.push_back(std::move(tc));
  }
  return suite;
}

std::string test_suite_json(const mt::TestSuite& s) {
  json j;
  j["role"] = mt::to_string(s.role);
  json cases = json::array();
  for (const auto& tc : s.cases) {
    json args = json::array();
    for (const auto& v : tc.args) args.push_back(value_to_json(v));
    cases.push_back({{"id", tc.id}, {"entry", tc.entry}, {"args", args}});
  }
  j["cases"] = cases;
  return dump(j);
}

// --- MR catalogs -----------------------------------------------------------------

std::vector<mt::MrSpec> load_mrs(const std::string& path) {
  json j = parse_file(path);
  const json& list = need_array(j, "mrs", "$");
  std::vector<mt::MrSpec> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string at = "$.mrs[" + std::to_string(i) + "]";
    mt::MrSpec mr;
    mr.id = need_str(list[i], "id", at);
    const json& t = need(list[i], "transform", at);
    mr.transform.name = need_str(t, "name", at + ".transform");
    mr.transform.k = opt_int(t, "k", 0, at + ".transform");
    mr.transform.seed = static_cast<std::uint64_t>(opt_int(t, "seed", 0, at + ".transform"));
    mr.transform.arg = static_cast<int>(opt_int(t, "arg", 0, at + ".transform"));
    const json& r = need(list[i], "relation", at);
    mr.relation.name = need_str(r, "name", at + ".relation");
    mr.relation.k = opt_int(r, "k", 0, at + ".relation");
    mr.relation.expr = opt_str(r, "expr", "", at + ".relation");
    out.push_back(std::move(mr));
  }
  return out;
}

std::string mrs_json(const std::vector<mt::MrSpec>& mrs) {
  json list = json::array();
  for (const auto& mr : mrs) {
    json t{{"name", mr.transform.name},
           {"k", mr.transform.k},
           {"seed", mr.transform.seed},
           {"arg", mr.transform.arg}};
    json r{{"name", mr.relation.name}, {"k", mr.relation.k}, {"expr", mr.relation.expr}};
    list.push_back({{"id", mr.id}, {"transform", t}, {"relation", r}});
  }
  return dump(json{{"mrs", list}});
}

// --- execution profiles -------------------------------------------------------------

std::string profiles_json(const std::vector<exec::ExecutionProfile>& profiles,
                          const std::string& program_digest) {
  json list = json::array();
  for (const auto& p : profiles) {
    json entry;
    entry["test_id"] = p.test_id;
    entry["status"] = exec::to_string(p.status);
    entry["error"] = p.error;
    entry["steps"] = p.steps;
    entry["statements"] = p.statements;   // emitted sorted: std::set ordering
    json branches = json::array();
    for (const auto& [stmt, tag] : p.branches) {
      branches.push_back({{"stmt", stmt}, {"tag", lang::to_string(tag)}});
    }
    entry["branches"] = branches;
    if (p.status == exec::RunStatus::Ok) entry["output"] = value_to_json(p.output);
    list.push_back(std::move(entry));
  }
  return dump(json{{"program_digest", program_digest}, {"profiles", list}});
}

// --- per-MR run records ----------------------------------------------------------------

std::string mr_runs_json(const std::vector<mt::MrRunResult>& runs,
                         const std::string& program_digest) {
  json list = json::array();
  for (const auto& r : runs) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts) {
      verdicts.push_back({{"kind", mt::to_string(v.kind)}, {"cause", mt::to_string(v.cause)}});
    }
    list.push_back({{"mr", r.mr_id},
                    {"verdicts", verdicts},
                    {"coverage", coverage_to_json(r.coverage)},
                    {"cost_steps", r.cost_steps}});
  }
  return dump(json{{"program_digest", program_digest}, {"mr_runs", list}});
}

std::vector<mt::MrRunResult> load_mr_runs(const std::string& path) {
  json j = parse_file(path);
  std::string digest = need_str(j, "program_digest", "$");
  const json& list = need_array(j, "mr_runs", "$");
  std::vector<mt::MrRunResult> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string at = "$.mr_runs[" + std::to_string(i) + "]";
    mt::MrRunResult r;
    r.mr_id = need_str(list[i], "mr", at);
    r.cost_steps = need_int(list[i], "cost_steps", at);
    const json& verdicts = need_array(list[i], "verdicts", at);
    for (std::size_t v = 0; v < verdicts.size(); ++v) {
      std::string vat = at + ".verdicts[" + std::to_string(v) + "]";
      mt::Verdict verdict;
      verdict.kind = verdict_kind_from_string(need_str(verdicts[v], "kind", vat), vat + ".kind");
      verdict.cause = error_cause_from_string(need_str(verdicts[v], "cause", vat), vat + ".cause");
      r.verdicts.push_back(verdict);
    }
    const json& cov = need(list[i], "coverage", at);
    r.coverage.program_digest = digest;
    const json& stmts = need_array(cov, "statements", at + ".coverage");
    for (const auto& s : stmts) {
      if (!s.is_number_integer()) fail(at + ".coverage.statements", "expected integers");
      r.coverage.statements.insert(s.get<int>());
    }
    const json& branches = need_array(cov, "branches", at + ".coverage");
    for (std::size_t b = 0; b < branches.size(); ++b) {
      std::string bat = at + ".coverage.branches[" + std::to_string(b) + "]";
      int stmt = static_cast<int>(need_int(branches[b], "stmt", bat));
      lang::BranchTag tag =
          branch_tag_from_string(need_str(branches[b], "tag", bat), bat + ".tag");
      r.coverage.branches.insert({stmt, tag});
    }
    out.push_back(std::move(r));
  }
  return out;
}

// --- static analysis ---------------------------------------------------------------------

std::string analysis_json(const lang::Program& p) {
  json functions;
  for (const auto& f : p.functions) {
    lang::Cfg cfg = lang::build_cfg(f);
    dep::Pdg pdg = dep::compute_pdg(f);

    json edges = json::array();
    for (const auto& e : cfg.edges) {
      edges.push_back({{"from", e.from}, {"to", e.to}, {"tag", lang::to_string(e.tag)}});
    }
    json data = json::array();
    for (const auto& [a, b] : pdg.data_edges) data.push_back({a, b});
    json ctrl = json::array();
    for (const auto& [a, b] : pdg.ctrl_edges) ctrl.push_back({a, b});

    json distances;
    lang::for_each_stmt(f, [&](const lang::Stmt& s) {
      distances[std::to_string(s.id)] = dep::distance_to_output(cfg, s.id);
    });

    functions[f.name] = {{"cfg", {{"nodes", cfg.nodes}, {"edges", edges},
                                  {"returns", cfg.returns}}},
                         {"pdg", {{"data_edges", data}, {"ctrl_edges", ctrl}}},
                         {"distance_to_output", distances}};
  }
  return dump(json{{"program_digest", p.source_digest}, {"functions", functions}});
}

// --- mutants -------------------------------------------------------------------------------

std::string mutants_json(const lang::Program& original, const std::vector<mutation::Mutant>& ms) {
  json list = json::array();
  for (const auto& m : ms) {
    list.push_back({{"id", m.id},
                    {"operator", mutation::to_string(m.op)},
                    {"stmt", m.stmt_id},
                    {"path", m.path},
                    {"variant", m.variant},
                    {"description", m.description},
                    {"status", mutation::to_string(m.status)},
                    {"source", lang::pretty_print(m.program)}});
  }
  return dump(json{{"program_digest", original.source_digest}, {"mutants", list}});
}

std::vector<mutation::Mutant> load_mutants(const std::string& path) {
  json j = parse_file(path);
  const json& list = need_array(j, "mutants", "$");
  std::vector<mutation::Mutant> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string at = "$.mutants[" + std::to_string(i) + "]";
    mutation::Mutant m;
    m.id = need_str(list[i], "id", at);
    m.op = mutation::operator_from_string(need_str(list[i], "operator", at));
    m.stmt_id = static_cast<int>(need_int(list[i], "stmt", at));
    m.path = need_str(list[i], "path", at);
    m.variant = need_str(list[i], "variant", at);
    m.description = need_str(list[i], "description", at);
    std::string status = need_str(list[i], "status", at);
    if (status == "candidate") {
      m.status = mutation::MutantStatus::Candidate;
    } else if (status == "screened_out") {
      m.status = mutation::MutantStatus::ScreenedOut;
    } else if (status == "viable") {
      m.status = mutation::MutantStatus::Viable;
    } else {
      fail(at + ".status", "unknown mutant status '" + status + "'");
    }
    try {
      m.program = lang::parse(need_str(list[i], "source", at));
    } catch (const lang::Error& ex) {
      fail(at + ".source", std::string("does not parse: ") + ex.what());
    }
    out.push_back(std::move(m));
  }
  return out;
}

// --- kill matrices ----------------------------------------------------------------------------

std::string kill_matrix_json(const mutation::KillMatrix& km) {
  json kills = json::array();
  for (const auto& row : km.kills) {
    json r = json::array();
    for (bool b : row) r.push_back(b);
    kills.push_back(std::move(r));
  }
  return dump(json{{"role", mutation::to_string(km.role)},
                   {"mr_ids", km.mr_ids},
                   {"mutant_ids", km.mutant_ids},
                   {"kills", kills},
                   {"mr_cost_steps", km.mr_cost_steps}});
}

mutation::KillMatrix load_kill_matrix(const std::string& path) {
  json j = parse_file(path);
  mutation::KillMatrix km;
  std::string role = need_str(j, "role", "$");
  if (role == "prioritizing") {
    km.role = mutation::MatrixRole::Prioritizing;
  } else if (role == "validation") {
    km.role = mutation::MatrixRole::Validation;
  } else {
    fail("$.role", "unknown matrix role '" + role + "'");
  }
  for (const auto& id : need_array(j, "mr_ids", "$")) {
    if (!id.is_string()) fail("$.mr_ids", "expected strings");
    km.mr_ids.push_back(id.get<std::string>());
  }
  for (const auto& id : need_array(j, "mutant_ids", "$")) {
    if (!id.is_string()) fail("$.mutant_ids", "expected strings");
    km.mutant_ids.push_back(id.get<std::string>());
  }
  const json& kills = need_array(j, "kills", "$");
  if (kills.size() != km.mr_ids.size()) fail("$.kills", "row count != MR count");
  for (std::size_t r = 0; r < kills.size(); ++r) {
    std::string at = "$.kills[" + std::to_string(r) + "]";
    if (!kills[r].is_array() || kills[r].size() != km.mutant_ids.size()) {
      fail(at, "column count != mutant count");
    }
    std::vector<bool> row;
    for (const auto& cell : kills[r]) {
      if (!cell.is_boolean()) fail(at, "expected booleans");
      row.push_back(cell.get<bool>());
    }
    km.kills.push_back(std::move(row));
  }
  const json& costs = need_array(j, "mr_cost_steps", "$");
  if (costs.size() != km.mr_ids.size()) fail("$.mr_cost_steps", "length != MR count");
  for (const auto& c : costs) {
    if (!c.is_number_integer()) fail("$.mr_cost_steps", "expected integers");
    km.mr_cost_steps.push_back(c.get<long long>());
  }
  return km;
}

// --- centrality scores ---------------------------------------------------------------------------

std::string scores_json(const std::vector<centrality::ScoreBreakdown>& scores,
                        const std::string& program_digest) {
  json list = json::array();
  for (const auto& s : scores) {
    json methods;
    for (const auto& [name, ms] : s.per_method) {
      methods[name] = {{"ta", ms.ta}, {"ti", ms.ti}, {"tfp", ms.tfp.to_decimal(6)}};
    }
    list.push_back({{"mr", s.mr},
                    {"per_method", methods},
                    {"ta_total", s.ta_total},
                    {"ti_total", s.ti_total},
                    {"tfp_total", s.tfp_total.to_decimal(6)},
                    {"quality", s.quality.to_decimal(6)}});
  }
  return dump(json{{"program_digest", program_digest}, {"scores", list}});
}

std::vector<centrality::ScoreBreakdown> load_scores(const std::string& path) {
  json j = parse_file(path);
  const json& list = need_array(j, "scores", "$");
  std::vector<centrality::ScoreBreakdown> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string at = "$.scores[" + std::to_string(i) + "]";
    centrality::ScoreBreakdown s;
    s.mr = need_str(list[i], "mr", at);
    s.ta_total = need_int(list[i], "ta_total", at);
    s.ti_total = need_int(list[i], "ti_total", at);
    try {
      s.tfp_total = Rational::from_decimal(need_str(list[i], "tfp_total", at));
      s.quality = Rational::from_decimal(need_str(list[i], "quality", at));
    } catch (const std::exception& ex) {
      fail(at, std::string("bad decimal: ") + ex.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

// --- orderings --------------------------------------------------------------------------------------

std::string ordering_json(const prioritize::Ordering& o) {
  json j;
  j["strategy"] = prioritize::to_string(o.strategy);
  j["sequence"] = o.sequence;
  if (o.seed.has_value()) {
    j["seed"] = *o.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["provenance"] = o.provenance;
  return dump(j);
}

prioritize::Ordering load_ordering(const std::string& path) {
  json j = parse_file(path);
  prioritize::Ordering o;
  o.strategy = prioritize::strategy_from_string(need_str(j, "strategy", "$"));
  for (const auto& id : need_array(j, "sequence", "$")) {
    if (!id.is_string()) fail("$.sequence", "expected strings");
    o.sequence.push_back(id.get<std::string>());
  }
  if (j.contains("seed") && !j.at("seed").is_null()) {
    if (!j.at("seed").is_number_integer() && !j.at("seed").is_number_unsigned()) {
      fail("$.seed", "expected an integer or null");
    }
    o.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("provenance")) {
    const json& prov = j.at("provenance");
    if (!prov.is_object()) fail("$.provenance", "expected an object");
    for (const auto& [k, v] : prov.items()) {
      if (!v.is_string()) fail("$.provenance." + k, "expected a string");
      o.provenance[k] = v.get<std::string>();
    }
  }
  return o;
}

// --- evaluation reports -----------------------------------------------------------------------------

std::string report_json(const evaluate::EvaluationReport& rep) {
  json curve = json::array();
  for (std::size_t i = 0; i < rep.curve.size(); ++i) {
    curve.push_back({{"m", i + 1}, {"pct", rep.curve[i].to_decimal(1)}});
  }
  return dump(json{{"strategy", rep.strategy},
                   {"sequence", rep.sequence},
                   {"curve", curve},
                   {"effective_size", rep.effective_size},
                   {"apfd", rep.apfd.to_decimal(6)},
                   {"avg_time_steps", rep.avg_time_steps.to_decimal(6)},
                   {"killable_count", rep.killable_count},
                   {"mr_count", rep.mr_count}});
}

std::string baseline_json(const evaluate::BaselineAverage& avg) {
  json curve = json::array();
  for (std::size_t i = 0; i < avg.curve.size(); ++i) {
    curve.push_back({{"m", i + 1}, {"pct", avg.curve[i].to_decimal(1)}});
  }
  return dump(json{{"curve", curve},
                   {"apfd", avg.apfd.to_decimal(6)},
                   {"avg_time_steps", avg.avg_time_steps.to_decimal(6)},
                   {"ordering_count", avg.ordering_count}});
}

std::string curve_csv(const std::vector<Rational>& curve) {
  std::string out = "set_size,pct_killed\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += std::to_string(i + 1) + "," + curve[i].to_decimal(1) + "\n";
  }
  return out;
}

}  // namespace metaprio::io
