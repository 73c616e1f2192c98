#pragma once
//! Per-agent bodies of the coupling kernels, shared by the serial reference
//! driver and the OpenMP driver.  Keeping the arithmetic (and its order) in
//! one place is what makes the two drivers bitwise comparable; the unit tests
//! assert that equality.

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "tcs/model.hpp"

namespace tcs::detail {

inline void coupling_row(const EnsembleState& s, const ModelSpec& m, std::size_t i, double* sv_i,
                         double* sb_i) {
  const std::size_t n = s.n;
  const std::size_t d = s.dim;
  const Digraph& g = m.graph();
  const double* xi = s.pos_row(i);
  const double* vi = s.vel_row(i);
  const double bi = s.coldness[i];

  for (std::size_t k = 0; k < d; ++k) sv_i[k] = 0.0;
  double sb = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!g.adjacency(i, j)) continue;
    const double* xj = s.pos_row(j);
    double r2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double dx = xi[k] - xj[k];
      r2 += dx * dx;
    }
    const double r = std::sqrt(r2);
    const double w_v = m.phi().eval(r);
    const double w_b = m.zeta().eval(r);
    const double* vj = s.vel_row(j);
    const double bj = s.coldness[j];
    for (std::size_t k = 0; k < d; ++k) sv_i[k] += w_v * (bj * vj[k] - bi * vi[k]);
    sb += w_b * (bj - bi);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < d; ++k) sv_i[k] *= inv_n;
  *sb_i = sb * inv_n;
}

//! Largest distance from row i to any row after it.
inline double pair_distance_from(const double* rows, std::size_t n, std::size_t dim,
                                 std::size_t i) {
  const double* ri = rows + i * dim;
  double best = 0.0;
  for (std::size_t j = i + 1; j < n; ++j) {
    const double* rj = rows + j * dim;
    double r2 = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double dx = ri[k] - rj[k];
      r2 += dx * dx;
    }
    best = std::max(best, std::sqrt(r2));
  }
  return best;
}

}  // namespace tcs::detail
