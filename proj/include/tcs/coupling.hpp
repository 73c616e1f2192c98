#pragma once
//! Pairwise coupling sums — the O(n^2) inner kernels of every step.
//!
//! Both the continuous right-hand side and the discrete update are built from
//! the same two adjacency-weighted sums over transmitting neighbours:
//!
//!   sv[i] = (1/n) sum_j chi_ij phi(r_ij) (coldness_j v_j - coldness_i v_i)
//!   sb[i] = (1/n) sum_j chi_ij zeta(r_ij) (coldness_j - coldness_i)
//!
//! Two interchangeable implementations are provided.  The serial one is the
//! reference; the parallel one distributes whole agent rows across OpenMP
//! threads while keeping the inner accumulation order fixed, so its results
//! are bitwise identical to the serial ones at any thread count.  The
//! unsuffixed entry points dispatch by ensemble size; bench/ compares the two.

#include <cstddef>
#include <vector>

#include "tcs/model.hpp"

namespace tcs {

//! Ensembles at least this large take the OpenMP path in the dispatchers.
inline constexpr std::size_t kParallelThreshold = 64;

void coupling_sums_serial(const EnsembleState& s, const ModelSpec& m, std::vector<double>& sv,
                          std::vector<double>& sb);
void coupling_sums_parallel(const EnsembleState& s, const ModelSpec& m, std::vector<double>& sv,
                            std::vector<double>& sb);
void coupling_sums(const EnsembleState& s, const ModelSpec& m, std::vector<double>& sv,
                   std::vector<double>& sb);

//! Largest Euclidean distance between any two of the n rows (each `dim` wide).
double max_pair_distance_serial(const double* rows, std::size_t n, std::size_t dim);
double max_pair_distance_parallel(const double* rows, std::size_t n, std::size_t dim);
double max_pair_distance(const double* rows, std::size_t n, std::size_t dim);

}  // namespace tcs
