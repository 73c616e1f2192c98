//! OpenMP implementation of the coupling kernels.
//!
//! Whole agent rows are distributed across threads; each row is accumulated
//! by exactly one thread in the same order as the serial reference, so the
//! result is bitwise identical at any thread count.  Falls back to the
//! serial loops when built without OpenMP.

#include "tcs/coupling.hpp"

#include "coupling_row.hpp"

namespace tcs {

void coupling_sums_parallel(const EnsembleState& s, const ModelSpec& m, std::vector<double>& sv,
                            std::vector<double>& sb) {
  sv.resize(s.n * s.dim);
  sb.resize(s.n);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(s.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    detail::coupling_row(s, m, static_cast<std::size_t>(i), sv.data() + i * s.dim,
                         sb.data() + i);
}

double max_pair_distance_parallel(const double* rows, std::size_t n, std::size_t dim) {
  double best = 0.0;
  const std::ptrdiff_t pn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(max : best)
  for (std::ptrdiff_t i = 0; i < pn; ++i)
    best = std::max(best, detail::pair_distance_from(rows, n, dim, static_cast<std::size_t>(i)));
  return best;
}

}  // namespace tcs
