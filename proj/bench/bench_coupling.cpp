// Compares the serial and OpenMP coupling drivers on random ensembles.
// The two must agree bitwise; the table reports timings and the max
// absolute difference (expected 0).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "tcs/coupling.hpp"
#include "tcs/graph.hpp"
#include "tcs/kernels.hpp"
#include "tcs/model.hpp"
#include "tcs/rng.hpp"

namespace {

tcs::EnsembleState random_state(std::size_t n, std::size_t dim, tcs::Rng& rng) {
  tcs::EnsembleState s;
  s.t = 0.0;
  s.n = n;
  s.dim = dim;
  s.pos.resize(n * dim);
  s.vel.resize(n * dim);
  s.coldness.resize(n);
  for (double& x : s.pos) x = rng.uniform(-5.0, 5.0);
  for (double& v : s.vel) v = rng.uniform(-1.0, 1.0);
  for (double& b : s.coldness) b = 1.0 / rng.uniform(0.5, 2.0);
  return s;
}

template <class F>
double best_ms(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (ms < best) best = ms;
  }
  return best;
}

}  // namespace

int main() {
  const std::size_t dim = 3;
  const tcs::CommKernel phi = tcs::CommKernel::algebraic(1.0, 0.6);
  const tcs::CommKernel zeta = tcs::CommKernel::exponential(0.8, 4.0);

  std::printf("%8s %12s %12s %9s %10s\n", "n", "serial ms", "parallel ms", "speedup", "max|diff|");
  for (std::size_t n : {256u, 1024u, 4096u}) {
    tcs::Rng rng(2026u + n);
    const tcs::Digraph g = tcs::make_random(n, 0.05, rng.bits());
    const tcs::ModelSpec model(g, phi, zeta);
    const tcs::EnsembleState s = random_state(n, dim, rng);

    std::vector<double> sv_s(n * dim), sb_s(n), sv_p(n * dim), sb_p(n);
    const double t_serial =
        best_ms([&] { tcs::coupling_sums_serial(s, model, sv_s, sb_s); }, 5);
    const double t_parallel =
        best_ms([&] { tcs::coupling_sums_parallel(s, model, sv_p, sb_p); }, 5);

    double diff = 0.0;
    for (std::size_t i = 0; i < sv_s.size(); ++i) diff = std::max(diff, std::fabs(sv_s[i] - sv_p[i]));
    for (std::size_t i = 0; i < sb_s.size(); ++i) diff = std::max(diff, std::fabs(sb_s[i] - sb_p[i]));

    std::printf("%8zu %12.3f %12.3f %9.2f %10.3g\n", n, t_serial, t_parallel,
                t_serial / t_parallel, diff);
  }
  return 0;
}
