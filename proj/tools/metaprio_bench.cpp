// Timing harness for the two parallel kernels — mutant screening plus kill
// matrix construction, and the random-baseline evaluation — comparing the
// OpenMP path against the serial reference implementation and checking that
// both produce identical results.
//
// Usage: metaprio_bench [subject_dir] [repeat]
//   subject_dir  a corpus directory with program.mini/mrs.json/tests (default
//                corpus/isort relative to the current directory)
//   repeat       timed repetitions per configuration (default 3)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "metaprio/evaluate.hpp"
#include "metaprio/json_io.hpp"
#include "metaprio/mutation.hpp"
#include "metaprio/parallel.hpp"
#include "metaprio/parser.hpp"
#include "metaprio/prioritize.hpp"

using namespace metaprio;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double best_of(int repeat, F&& body) {
  double best = 1e100;
  for (int i = 0; i < repeat; ++i) {
    auto t0 = Clock::now();
    body();
    double t = seconds_since(t0);
    if (t < best) best = t;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "corpus/isort";
  int repeat = argc > 2 ? std::atoi(argv[2]) : 3;
  const long long step_limit = 20000;

  lang::Program p = lang::parse(io::read_file(dir + "/program.mini"));
  auto mrs = io::load_mrs(dir + "/mrs.json");
  auto suite = io::load_test_suite(dir + "/tests_prioritizing.json");

  mutation::GenOptions gen;
  gen.aor_full = true;
  auto mutants = mutation::generate_mutants(p, gen);
  std::printf("subject %s: %zu mutants, %zu MRs, %zu tests\n", dir.c_str(), mutants.size(),
              mrs.size(), suite.cases.size());

  // Kernel 1: screening + kill matrix over the mutant pool.
  mutation::KillMatrix km_serial, km_omp;
  double t_matrix_serial = best_of(repeat, [&] {
    auto pool = mutants;
    mutation::screen_mutants(pool, mrs, suite, step_limit, Parallelism::Serial);
    km_serial = mutation::build_kill_matrix(p, pool, mrs, suite,
                                            mutation::MatrixRole::Prioritizing, step_limit,
                                            Parallelism::Serial);
  });
  double t_matrix_omp = best_of(repeat, [&] {
    auto pool = mutants;
    mutation::screen_mutants(pool, mrs, suite, step_limit, Parallelism::OpenMP);
    km_omp = mutation::build_kill_matrix(p, pool, mrs, suite,
                                         mutation::MatrixRole::Prioritizing, step_limit,
                                         Parallelism::OpenMP);
  });
  bool matrix_match = km_serial.kills == km_omp.kills &&
                      km_serial.mutant_ids == km_omp.mutant_ids &&
                      km_serial.mr_cost_steps == km_omp.mr_cost_steps;

  // Kernel 2: evaluating many random orderings against the matrix.
  auto orders = prioritize::random_orders(km_omp.mr_ids, 1000, 12345);
  evaluate::BaselineAverage avg_serial, avg_omp;
  double t_eval_serial = best_of(repeat, [&] {
    avg_serial = evaluate::baseline_average(orders, km_serial, Parallelism::Serial);
  });
  double t_eval_omp = best_of(repeat, [&] {
    avg_omp = evaluate::baseline_average(orders, km_omp, Parallelism::OpenMP);
  });
  bool eval_match = avg_serial.curve == avg_omp.curve && avg_serial.apfd == avg_omp.apfd;

  std::printf("\n%-28s %10s %10s %9s %8s\n", "kernel", "serial s", "openmp s", "speedup",
              "match");
  std::printf("%-28s %10.3f %10.3f %8.2fx %8s\n", "screen + kill matrix", t_matrix_serial,
              t_matrix_omp, t_matrix_serial / t_matrix_omp, matrix_match ? "yes" : "NO");
  std::printf("%-28s %10.3f %10.3f %8.2fx %8s\n", "1000-ordering baseline", t_eval_serial,
              t_eval_omp, t_eval_serial / t_eval_omp, eval_match ? "yes" : "NO");

  return (matrix_match && eval_match) ? 0 : 1;
}
