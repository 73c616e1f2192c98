//! Serial reference implementation of the coupling kernels.

#include "tcs/coupling.hpp"

#include "coupling_row.hpp"

namespace tcs {

void coupling_sums_serial(const EnsembleState& s, const ModelSpec& m, std::vector<double>& sv,
                          std::vector<double>& sb) {
  sv.resize(s.n * s.dim);
  sb.resize(s.n);
  for (std::size_t i = 0; i < s.n; ++i)
    detail::coupling_row(s, m, i, sv.data() + i * s.dim, sb.data() + i);
}

double max_pair_distance_serial(const double* rows, std::size_t n, std::size_t dim) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    best = std::max(best, detail::pair_distance_from(rows, n, dim, i));
  return best;
}

void coupling_sums(const EnsembleState& s, const ModelSpec& m, std::vector<double>& sv,
                   std::vector<double>& sb) {
  if (s.n >= kParallelThreshold)
    coupling_sums_parallel(s, m, sv, sb);
  else
    coupling_sums_serial(s, m, sv, sb);
}

double max_pair_distance(const double* rows, std::size_t n, std::size_t dim) {
  if (n >= kParallelThreshold) return max_pair_distance_parallel(rows, n, dim);
  return max_pair_distance_serial(rows, n, dim);
}

}  // namespace tcs
