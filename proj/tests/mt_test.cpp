#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metaprio/mt.hpp"
#include "metaprio/parser.hpp"

using namespace metaprio;
using exec::Value;
using mt::check_relation;
using mt::derive_followup;
using mt::MrSpec;
using mt::Relation;
using mt::TestSuite;
using mt::Transform;
using mt::VerdictKind;

namespace {

const char* kSumSrc =
    "fn sum(a: [int]) -> int {"
    "  total = 0;"
    "  i = 0;"
    "  while (i < len(a)) { total = total + a[i]; i = i + 1 }"
    "  return total"
    "}";

// sum with stmt 5 mutated from i=i+1 to i=i+2
const char* kSumSkipSrc =
    "fn sum(a: [int]) -> int {"
    "  total = 0;"
    "  i = 0;"
    "  while (i < len(a)) { total = total + a[i]; i = i + 2 }"
    "  return total"
    "}";

// sum with stmt 4 mutated from + to -
const char* kSumNegSrc =
    "fn sum(a: [int]) -> int {"
    "  total = 0;"
    "  i = 0;"
    "  while (i < len(a)) { total = total - a[i]; i = i + 1 }"
    "  return total"
    "}";

Transform tf(const std::string& name, long long k = 0, std::uint64_t seed = 0, int arg = 0) {
  Transform t;
  t.name = name;
  t.k = k;
  t.seed = seed;
  t.arg = arg;
  return t;
}

Relation rel(const std::string& name, long long k = 0, const std::string& expr = "") {
  Relation r;
  r.name = name;
  r.k = k;
  r.expr = expr;
  return r;
}

MrSpec mr(const std::string& id, Transform t, Relation r) {
  MrSpec m;
  m.id = id;
  m.transform = std::move(t);
  m.relation = std::move(r);
  return m;
}

std::vector<Value> arr_args(std::vector<long long> a) { return {Value::of_array(std::move(a))}; }

TestSuite suite(std::vector<std::vector<long long>> inputs) {
  TestSuite s;
  s.role = mt::SuiteRole::PrioritizingSource;
  int n = 0;
  for (auto& in : inputs) {
    s.cases.push_back({"t" + std::to_string(++n), "sum", arr_args(std::move(in))});
  }
  return s;
}

}  // namespace

TEST_CASE("derive_followup: catalog transforms") {
  auto a = arr_args({1, 2, 3});
  CHECK(derive_followup(a, tf("reverse"))[0].arr == std::vector<long long>{3, 2, 1});
  CHECK(derive_followup(arr_args({1, 2}), tf("scale_elements", 2))[0].arr ==
        std::vector<long long>{2, 4});
  CHECK(derive_followup(a, tf("add_constant", 10))[0].arr == std::vector<long long>{11, 12, 13});
  CHECK(derive_followup(a, tf("duplicate_all"))[0].arr ==
        std::vector<long long>{1, 2, 3, 1, 2, 3});
  CHECK(derive_followup(a, tf("append", 5))[0].arr == std::vector<long long>{1, 2, 3, 5});
  CHECK(derive_followup(a, tf("remove_first"))[0].arr == std::vector<long long>{2, 3});
  CHECK(derive_followup(a, tf("negate_elements"))[0].arr == std::vector<long long>{-1, -2, -3});
}

TEST_CASE("derive_followup: permute is deterministic and a permutation") {
  auto a = arr_args({1, 2, 3, 4, 5, 6, 7});
  auto p1 = derive_followup(a, tf("permute", 0, 7));
  auto p2 = derive_followup(a, tf("permute", 0, 7));
  CHECK(p1[0].arr == p2[0].arr);
  auto sorted = p1[0].arr;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == a[0].arr);
  // a different seed produces a different order for this input
  auto p3 = derive_followup(a, tf("permute", 0, 8));
  CHECK(p1[0].arr != p3[0].arr);
}

TEST_CASE("derive_followup: non-transformed arguments ride along") {
  std::vector<Value> args{Value::of_array({1, 2}), Value::of_int(9)};
  auto out = derive_followup(args, tf("reverse"));
  CHECK(out[0].arr == std::vector<long long>{2, 1});
  CHECK(out[1] == Value::of_int(9));
}

TEST_CASE("derive_followup: shape mismatches") {
  CHECK_THROWS_AS(derive_followup({Value::of_int(1)}, tf("reverse")),
                  mt::ShapeMismatchError);
  CHECK_THROWS_AS(derive_followup(arr_args({}), tf("remove_first")), mt::ShapeMismatchError);
  CHECK_THROWS_AS(derive_followup(arr_args({1}), tf("reverse", 0, 0, 3)),
                  mt::ShapeMismatchError);
  CHECK_THROWS_AS(derive_followup(arr_args({1}), tf("zap")), mt::ShapeMismatchError);
}

TEST_CASE("check_relation: fixed relations") {
  CHECK(check_relation(Value::of_int(6), Value::of_int(6), rel("eq"), 3) ==
        VerdictKind::Satisfied);
  CHECK(check_relation(Value::of_int(3), Value::of_int(4), rel("eq"), 1) ==
        VerdictKind::Violated);
  CHECK(check_relation(Value::of_int(3), Value::of_int(6), rel("eq_scaled", 2), 1) ==
        VerdictKind::Satisfied);
  CHECK(check_relation(Value::of_int(3), Value::of_int(5), rel("eq_scaled", 2), 1) ==
        VerdictKind::Violated);
  CHECK(check_relation(Value::of_int(3), Value::of_int(3), rel("le"), 1) ==
        VerdictKind::Satisfied);
  CHECK(check_relation(Value::of_int(3), Value::of_int(4), rel("le"), 1) ==
        VerdictKind::Violated);
  CHECK(check_relation(Value::of_int(3), Value::of_int(4), rel("ge"), 1) ==
        VerdictKind::Satisfied);
  CHECK(check_relation(Value::of_bool(true), Value::of_bool(true), rel("eq"), 1) ==
        VerdictKind::Satisfied);
}

TEST_CASE("check_relation: offset and custom expressions see n") {
  CHECK(check_relation(Value::of_int(10), Value::of_int(15), rel("eq_offset", 0, "5"), 3) ==
        VerdictKind::Satisfied);
  CHECK(check_relation(Value::of_int(10), Value::of_int(16), rel("eq_offset", 0, "2 * n"), 3) ==
        VerdictKind::Satisfied);
  CHECK(check_relation(Value::of_int(10), Value::of_int(15), rel("eq_offset", 0, "2 * n"), 3) ==
        VerdictKind::Violated);
  CHECK(check_relation(Value::of_int(4), Value::of_int(9),
                       rel("custom", 0, "o_f == o_s + 5"), 3) == VerdictKind::Satisfied);
  CHECK(check_relation(Value::of_int(4), Value::of_int(4),
                       rel("custom", 0, "o_f == o_s + 5"), 3) == VerdictKind::Violated);
}

TEST_CASE("check_relation: type mismatches throw") {
  CHECK_THROWS_AS(check_relation(Value::of_bool(true), Value::of_int(1), rel("eq"), 1),
                  mt::TypeMismatchError);
  CHECK_THROWS_AS(check_relation(Value::of_bool(true), Value::of_bool(true), rel("le"), 1),
                  mt::TypeMismatchError);
  CHECK_THROWS_AS(check_relation(Value::of_int(1), Value::of_int(1), rel("approx"), 1),
                  mt::TypeMismatchError);
}

TEST_CASE("run_mr: correct program satisfies reverse/eq everywhere") {
  lang::Program p = lang::parse(kSumSrc);
  auto res = mt::run_mr(p, mr("mr_rev", tf("reverse"), rel("eq")), suite({{1, 2, 3}, {4, 5}}));
  REQUIRE(res.verdicts.size() == 2);
  for (const auto& v : res.verdicts) CHECK(v.kind == VerdictKind::Satisfied);
  CHECK(res.coverage.statements == std::set<int>{1, 2, 3, 4, 5, 6});
  // four profiles: 2 sources + 2 follow-ups
  CHECK(res.cost_steps > 0);
}

TEST_CASE("run_mr: loop-stride mutant slips past reverse/eq but not append") {
  lang::Program skip = lang::parse(kSumSkipSrc);
  // o_s = elements 0 and 2 of [1,2,3] = 4; o_f over [3,2,1] = 3+1 = 4
  auto rev = mt::run_mr(skip, mr("mr_rev", tf("reverse"), rel("eq")), suite({{1, 2, 3}}));
  CHECK(rev.verdicts[0].kind == VerdictKind::Satisfied);
  // appending 5 should raise the sum by 5, but the stride-2 loop skips it
  auto app = mt::run_mr(skip, mr("mr_app", tf("append", 5), rel("custom", 0, "o_f == o_s + 5")),
                        suite({{1, 2, 3}}));
  CHECK(app.verdicts[0].kind == VerdictKind::Violated);
}

TEST_CASE("run_mr: sign-flip mutant scales linearly, so eq_scaled keeps it alive") {
  lang::Program neg = lang::parse(kSumNegSrc);
  auto scaled = mt::run_mr(neg, mr("mr_scale", tf("scale_elements", 2), rel("eq_scaled", 2)),
                           suite({{1, 2}, {3, 4, 5}}));
  for (const auto& v : scaled.verdicts) CHECK(v.kind == VerdictKind::Satisfied);
  auto rev = mt::run_mr(neg, mr("mr_rev", tf("reverse"), rel("eq")), suite({{1, 2}}));
  CHECK(rev.verdicts[0].kind == VerdictKind::Satisfied);  // -3 == -3, not killed
  auto app = mt::run_mr(neg, mr("mr_app", tf("append", 5), rel("custom", 0, "o_f == o_s + 5")),
                        suite({{1, 2}}));
  CHECK(app.verdicts[0].kind == VerdictKind::Violated);  // -8 != -3 + 5
}

TEST_CASE("run_mr: runtime faults become error verdicts with their cause") {
  lang::Program div = lang::parse(
      "fn sum(a:[int])->int{ return 100 / a[0] }");
  auto res = mt::run_mr(div, mr("mr_neg", tf("negate_elements"), rel("eq")),
                        suite({{0, 1}, {5, 1}}));
  REQUIRE(res.verdicts.size() == 2);
  CHECK(res.verdicts[0].kind == VerdictKind::Error);  // 100/0 on the source run
  CHECK(res.verdicts[0].cause == mt::ErrorCause::RuntimeError);
  CHECK(res.verdicts[1].kind == VerdictKind::Violated);  // 20 vs -20 under eq
}

TEST_CASE("run_mr: step limit shows up as a step-limit error cause") {
  lang::Program spin = lang::parse(
      "fn sum(a:[int])->int{ i = 0; while (i < len(a) + 1) { i = i * 1 } return i }");
  auto res = mt::run_mr(spin, mr("mr_rev", tf("reverse"), rel("eq")), suite({{1, 2}}), 200);
  CHECK(res.verdicts[0].kind == VerdictKind::Error);
  CHECK(res.verdicts[0].cause == mt::ErrorCause::StepLimit);
}

TEST_CASE("run_mr: shape mismatch verdicts") {
  lang::Program p = lang::parse(kSumSrc);
  auto res = mt::run_mr(p, mr("mr_rm", tf("remove_first"), rel("le")), suite({{}, {1, 2}}));
  CHECK(res.verdicts[0].kind == VerdictKind::Error);
  CHECK(res.verdicts[0].cause == mt::ErrorCause::ShapeMismatch);
  CHECK(res.verdicts[1].kind == VerdictKind::Satisfied);
}
