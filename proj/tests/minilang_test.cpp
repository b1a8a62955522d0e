#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "metaprio/cfg.hpp"
#include "metaprio/lexer.hpp"
#include "metaprio/parser.hpp"
#include "metaprio/printer.hpp"

using namespace metaprio::lang;

namespace {

// Running example used across the analysis tests: sum over an int array.
const char* kSumSrc = R"(
fn sum(a: [int]) -> int {
  total = 0
  i = 0
  while (i < len(a)) {
    total = total + a[i]
    i = i + 1
  }
  return total
}
)";

bool has_edge(const Cfg& c, int from, int to, BranchTag tag) {
  return std::find(c.edges.begin(), c.edges.end(), CfgEdge{from, to, tag}) != c.edges.end();
}

std::set<int> reachable_from(const Cfg& c, int start) {
  std::set<int> seen{start};
  std::vector<int> work{start};
  while (!work.empty()) {
    int n = work.back();
    work.pop_back();
    for (int s : c.successors(n)) {
      if (seen.insert(s).second) work.push_back(s);
    }
  }
  return seen;
}

}  // namespace

TEST_CASE("lexer: operators, comments, arrows") {
  auto toks = lex("a -> - <= < == = != ! && || # trailing comment\nx");
  std::vector<TokKind> kinds;
  for (const auto& t : toks) kinds.push_back(t.kind);
  CHECK(kinds == std::vector<TokKind>{TokKind::Ident, TokKind::Arrow, TokKind::Minus,
                                      TokKind::Le, TokKind::Lt, TokKind::Eq, TokKind::Assign,
                                      TokKind::Ne, TokKind::Bang, TokKind::AndAnd, TokKind::OrOr,
                                      TokKind::Ident, TokKind::Eof});
}

TEST_CASE("lexer: bad input") {
  CHECK_THROWS_AS(lex("12ab"), SyntaxError);
  CHECK_THROWS_AS(lex("x @ y"), SyntaxError);
  CHECK_THROWS_AS(lex("a & b"), SyntaxError);
  CHECK_THROWS_AS(lex("a | b"), SyntaxError);
  CHECK_THROWS_AS(lex("99999999999999999999999999"), SyntaxError);
}

TEST_CASE("lexer: positions") {
  auto toks = lex("x = 1\ny = 2");
  CHECK(toks[0].pos.line == 1);
  CHECK(toks[0].pos.col == 1);
  CHECK(toks[3].pos.line == 2);
  CHECK(toks[3].pos.col == 1);
}

TEST_CASE("parse: single return function") {
  Program p = parse("fn id(x:int)->int{return x}");
  REQUIRE(p.functions.size() == 1);
  const Function& f = p.functions[0];
  CHECK(f.name == "id");
  REQUIRE(f.body.size() == 1);
  CHECK(f.body[0].id == 1);
  CHECK(f.body[0].kind == StmtKind::Return);
}

TEST_CASE("parse: sum fixture has six statements, ids 1..6") {
  Program p = parse(kSumSrc);
  StatementTable t = build_statement_table(p);
  REQUIRE(t.count() == 6);
  CHECK(t.stmt(1).kind == StmtKind::Assign);
  CHECK(t.stmt(2).kind == StmtKind::Assign);
  CHECK(t.stmt(3).kind == StmtKind::While);
  CHECK(t.stmt(4).kind == StmtKind::Assign);
  CHECK(t.stmt(5).kind == StmtKind::Assign);
  CHECK(t.stmt(6).kind == StmtKind::Return);
}

TEST_CASE("parse: unterminated function body is a syntax error") {
  CHECK_THROWS_AS(parse("fn f(){"), SyntaxError);
}

TEST_CASE("parse: return type defaults to int") {
  Program p = parse("fn f() { return 3 }");
  CHECK(p.functions[0].return_type == ValueType::Int);
}

TEST_CASE("parse: semicolons are optional separators") {
  Program a = parse("fn f(x:int)->int{ y = x; return y; }");
  Program b = parse("fn f(x:int)->int{ y = x\n return y }");
  CHECK(structurally_equal(a, b));
}

TEST_CASE("parse: statement ids are program-global across functions") {
  Program p = parse("fn a()->int{ return 1 } fn b()->int{ x = 2; return x }");
  StatementTable t = build_statement_table(p);
  REQUIRE(t.count() == 3);
  CHECK(t.function_of(1).name == "a");
  CHECK(t.function_of(2).name == "b");
  CHECK(t.function_of(3).name == "b");
}

TEST_CASE("parse: defs and uses") {
  Program p = parse(kSumSrc);
  StatementTable t = build_statement_table(p);
  CHECK(t.stmt(1).defs == std::set<std::string>{"total"});
  CHECK(t.stmt(1).uses.empty());
  CHECK(t.stmt(3).defs.empty());
  CHECK(t.stmt(3).uses == std::set<std::string>{"a", "i"});
  CHECK(t.stmt(4).defs == std::set<std::string>{"total"});
  CHECK(t.stmt(4).uses == std::set<std::string>{"a", "i", "total"});
  CHECK(t.stmt(6).uses == std::set<std::string>{"total"});
}

TEST_CASE("parse: array write defines the array, uses subscript and rhs vars") {
  Program p = parse("fn f(a:[int], i:int)->int{ a[i+1] = a[i] * 2; return a[0] }");
  StatementTable t = build_statement_table(p);
  CHECK(t.stmt(1).kind == StmtKind::ArrayWrite);
  CHECK(t.stmt(1).defs == std::set<std::string>{"a"});
  CHECK(t.stmt(1).uses == std::set<std::string>{"a", "i"});
}

TEST_CASE("parse: local variable types are inferred") {
  Program p = parse("fn f(a:[int])->bool{ n = len(a); ok = n > 0; return ok }");
  const auto& vt = p.functions[0].var_types;
  CHECK(vt.at("n") == ValueType::Int);
  CHECK(vt.at("ok") == ValueType::Bool);
  CHECK(vt.at("a") == ValueType::IntArray);
}

TEST_CASE("parse: type errors") {
  // condition must be bool
  CHECK_THROWS_AS(parse("fn f(x:int)->int{ if (x) { return 1 } return 0 }"), TypeError);
  // arithmetic on bool
  CHECK_THROWS_AS(parse("fn f()->int{ return true + 1 }"), TypeError);
  // variable used with two types
  CHECK_THROWS_AS(parse("fn f()->int{ x = 1; x = true; return x }"), TypeError);
  // return type mismatch
  CHECK_THROWS_AS(parse("fn f()->bool{ return 3 }"), TypeError);
  // call arity
  CHECK_THROWS_AS(parse("fn g(x:int)->int{ return x } fn f()->int{ return g(1,2) }"), TypeError);
  // call argument type
  CHECK_THROWS_AS(parse("fn g(x:int)->int{ return x } fn f()->int{ return g(true) }"), TypeError);
  // unknown callee
  CHECK_THROWS_AS(parse("fn f()->int{ return h(1) }"), TypeError);
  // indexing a scalar
  CHECK_THROWS_AS(parse("fn f(x:int)->int{ return x[0] }"), TypeError);
  // len of a scalar
  CHECK_THROWS_AS(parse("fn f(x:int)->int{ return len(x) }"), TypeError);
  // arrays are not scalar return values
  CHECK_THROWS_AS(parse("fn f(a:[int])->[int]{ return a }"), TypeError);
}

TEST_CASE("parse: duplicate function names rejected") {
  CHECK_THROWS_AS(parse("fn f()->int{ return 1 } fn f()->int{ return 2 }"),
                  DuplicateFunctionError);
}

TEST_CASE("parse: every path must return") {
  CHECK_THROWS_AS(parse("fn f(x:int)->int{ x = x + 1 }"), TypeError);
  CHECK_THROWS_AS(parse("fn f(x:int)->int{ if (x > 0) { return 1 } }"), TypeError);
  CHECK_THROWS_AS(parse("fn f(x:int)->int{ while (x > 0) { return 1 } }"), TypeError);
  // else branch covers the fallthrough
  CHECK_NOTHROW(parse("fn f(x:int)->int{ if (x > 0) { return 1 } else { return 2 } }"));
  // return after the if covers it too
  CHECK_NOTHROW(parse("fn f(x:int)->int{ if (x > 0) { return 1 } return 2 }"));
}

TEST_CASE("parse: unreachable statements rejected") {
  CHECK_THROWS_AS(parse("fn f()->int{ return 1; x = 2; return x }"), TypeError);
  CHECK_THROWS_AS(
      parse("fn f(x:int)->int{ if (x>0) { return 1 } else { return 2 } return 3 }"), TypeError);
}

TEST_CASE("parse: recursion allowed via two-phase signatures") {
  CHECK_NOTHROW(parse("fn f(x:int)->int{ if (x <= 0) { return 0 } return f(x - 1) + 1 }"));
}

TEST_CASE("pretty-print round trip is structurally identical") {
  for (const char* src : {
           kSumSrc,
           "fn id(x:int)->int{return x}",
           "fn f(a:[int],k:int)->int{ i=0; while(i<len(a)){ a[i]=a[i]*k; i=i+1 } return a[0] }",
           "fn f(x:int,y:bool)->int{ if (y && x>0 || x<0-5) { return 0-x } else { x = x%3 } return x }",
           "fn g()->bool{ return !(1==2) }",
       }) {
    Program once = parse(src);
    Program twice = parse(pretty_print(once));
    CAPTURE(src);
    CHECK(structurally_equal(once, twice));
  }
}

TEST_CASE("pretty-print keeps necessary parentheses only") {
  Program p = parse("fn f(x:int)->int{ return (x+1)*2 }");
  CHECK(expr_to_string(p.functions[0].body[0].expr) == "(x + 1) * 2");
  Program q = parse("fn f(x:int)->int{ return x+1*2 }");
  CHECK(expr_to_string(q.functions[0].body[0].expr) == "x + 1 * 2");
  Program r = parse("fn f(x:int)->int{ return x-(1-2) }");
  CHECK(expr_to_string(r.functions[0].body[0].expr) == "x - (1 - 2)");
}

TEST_CASE("identical source yields identical digests and ids") {
  Program a = parse(kSumSrc);
  Program b = parse(kSumSrc);
  CHECK(a.source_digest == b.source_digest);
  CHECK(structurally_equal(a, b));
}

TEST_CASE("count_operators: arithmetic, relational, logical only") {
  Program p = parse(kSumSrc);
  CHECK(count_operators(p, 1) == 0);  // total = 0
  CHECK(count_operators(p, 3) == 1);  // i < len(a)
  CHECK(count_operators(p, 4) == 1);  // total + a[i]
  CHECK(count_operators(p, 6) == 0);  // return total

  Program q = parse("fn f(x:int,y:bool)->bool{ return !(y && x+1*2 > 0) }");
  // ! && + * >  — five operator nodes; the call/indexing-free tree is all ops
  CHECK(count_operators(q, 1) == 5);

  Program r = parse("fn g(a:[int])->int{ a[1+2] = a[0] + 1; return a[0] }");
  CHECK(count_operators(r, 1) == 2);  // subscript 1+2 and rhs +

  CHECK_THROWS_AS(count_operators(p, 99), UnknownStatementError);
}

TEST_CASE("cfg: straight line") {
  Program p = parse("fn f(x:int)->int{ a = x; b = a + 1; return b }");
  Cfg c = build_cfg(p.functions[0]);
  CHECK(has_edge(c, kEntryNode, 1, BranchTag::None));
  CHECK(has_edge(c, 1, 2, BranchTag::None));
  CHECK(has_edge(c, 2, 3, BranchTag::None));
  CHECK(has_edge(c, 3, kExitNode, BranchTag::None));
  CHECK(c.edges.size() == 4);
  CHECK(c.returns == std::set<int>{3});
}

TEST_CASE("cfg: loop edges in the sum fixture") {
  Program p = parse(kSumSrc);
  Cfg c = build_cfg(p.functions[0]);
  CHECK(has_edge(c, 3, 4, BranchTag::True));
  CHECK(has_edge(c, 3, 6, BranchTag::False));
  CHECK(has_edge(c, 5, 3, BranchTag::None));  // loop back-edge
  CHECK(has_edge(c, kEntryNode, 1, BranchTag::None));
  CHECK(has_edge(c, 6, kExitNode, BranchTag::None));
  CHECK(c.returns == std::set<int>{6});
}

TEST_CASE("cfg: if/else branches rejoin") {
  Program p = parse("fn f(x:int)->int{ if (x>0) { y = 1 } else { y = 2 } return y }");
  Cfg c = build_cfg(p.functions[0]);
  CHECK(has_edge(c, 1, 2, BranchTag::True));
  CHECK(has_edge(c, 1, 3, BranchTag::False));
  CHECK(has_edge(c, 2, 4, BranchTag::None));
  CHECK(has_edge(c, 3, 4, BranchTag::None));
}

TEST_CASE("cfg: empty loop body self-loops") {
  Program p = parse("fn f(x:bool)->int{ while (x) { } return 0 }");
  Cfg c = build_cfg(p.functions[0]);
  CHECK(has_edge(c, 1, 1, BranchTag::True));
  CHECK(has_edge(c, 1, 2, BranchTag::False));
}

TEST_CASE("cfg invariants hold across a grab bag of functions") {
  const char* sources[] = {
      kSumSrc,
      "fn f(x:int)->int{ if (x>0) { return 1 } else { return 2 } }",
      "fn f(x:int)->int{ if (x>0) { x = 1 } return x }",
      "fn f(a:[int])->int{ i=0; while(i<len(a)){ if (a[i]>0) { a[i]=0 } i=i+1 } return i }",
      "fn f(x:int)->int{ while (x>0) { while (x>10) { x = x-10 } x = x-1 } return x }",
  };
  for (const char* src : sources) {
    CAPTURE(src);
    Program p = parse(src);
    for (const auto& f : p.functions) {
      Cfg c = build_cfg(f);
      // entry reaches every node
      auto fwd = reachable_from(c, kEntryNode);
      CHECK(fwd == c.nodes);
      // every node reaches exit
      for (int n : c.nodes) {
        if (n == kExitNode) continue;
        auto r = reachable_from(c, n);
        CHECK(r.count(kExitNode) == 1);
      }
      // branch-edge counts per node
      for (int n : c.nodes) {
        if (n == kExitNode) continue;
        int t = 0, fl = 0, plain = 0;
        for (const auto& e : c.edges) {
          if (e.from != n) continue;
          if (e.tag == BranchTag::True) ++t;
          if (e.tag == BranchTag::False) ++fl;
          if (e.tag == BranchTag::None) ++plain;
        }
        const Stmt* stmt = nullptr;
        StatementTable tbl = build_statement_table(p);
        if (n >= 1) stmt = &tbl.stmt(n);
        if (stmt && (stmt->kind == StmtKind::If || stmt->kind == StmtKind::While)) {
          CHECK(t == 1);
          CHECK(fl == 1);
          CHECK(plain == 0);
        } else {
          CHECK(t == 0);
          CHECK(fl == 0);
          CHECK(plain == 1);
        }
      }
    }
  }
}

TEST_CASE("parse_expression: custom predicate checking") {
  std::map<std::string, ValueType> vars{{"o_s", ValueType::Int},
                                        {"o_f", ValueType::Int},
                                        {"n", ValueType::Int}};
  CHECK_NOTHROW(parse_expression("o_f == o_s * 2", vars, ValueType::Bool));
  CHECK_NOTHROW(parse_expression("o_f == o_s + 5 * n", vars, ValueType::Bool));
  CHECK_THROWS_AS(parse_expression("o_s + 1", vars, ValueType::Bool), TypeError);
  CHECK_THROWS_AS(parse_expression("o_x == 1", vars, ValueType::Bool), TypeError);
  CHECK_THROWS_AS(parse_expression("o_s ==", vars, ValueType::Bool), SyntaxError);
  CHECK_THROWS_AS(parse_expression("f(o_s)", vars, ValueType::Bool), TypeError);
}
