// Times the OpenMP kernels against their serial references, plus the
// one-variable descent solver against the full-grid power iteration.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "pspec/descent.hpp"
#include "pspec/enumerate.hpp"
#include "pspec/spectral.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace pspec;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clk::now();
    fn();
    best = std::min(best, seconds(t0, clk::now()));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
  if (const char* env = std::getenv("PATTERN_SPECTRA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  const int N = argc > 1 ? std::atoi(argv[1]) : 128;
  const PatternSet s = PatternSet::from_string("{213}");
  const GridSpec spec{2, N};
  const GridFunction one = GridFunction::constant(spec);

  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");
  const double ts = time_best_of(3, [&] { apply_T_serial(s, one); });
  const double tp = time_best_of(3, [&] { apply_T(s, one); });
  std::printf("%-28s %8.2f ms %8.2f ms %7.2fx\n", ("apply_T m=2 N=" + std::to_string(N)).c_str(),
              1e3 * ts, 1e3 * tp, ts / tp);
  const double as = time_best_of(3, [&] { apply_T_adjoint_serial(s, one); });
  const double ap = time_best_of(3, [&] { apply_T_adjoint(s, one); });
  std::printf("%-28s %8.2f ms %8.2f ms %7.2fx\n", "apply_T_adjoint", 1e3 * as, 1e3 * ap, as / ap);

  const int n_max = 40;
  const double ps = time_best_of(1, [&] { pyramid_count_serial(s, n_max); });
  const double pp = time_best_of(1, [&] { pyramid_count(s, n_max); });
  std::printf("%-28s %8.2f ms %8.2f ms %7.2fx\n",
              ("pyramid n<=" + std::to_string(n_max)).c_str(), 1e3 * ps, 1e3 * pp, ps / pp);

  // invariant-subspace fast path against the full grid
  const double full = time_best_of(1, [&] { power_iteration(s, spec); });
  const double fast =
      time_best_of(1, [&] { descent_dominant_eigs(2, {DescentWord("aa")}, 8 * N); });
  std::printf("%-28s %8.2f ms %8.2f ms %7.2fx\n",
              ("power vs descent N=" + std::to_string(8 * N)).c_str(), 1e3 * full, 1e3 * fast,
              full / fast);
  return 0;
}
