#pragma once
//! Stochastic-matrix mixing diagnostics and state-transition matrices.
//!
//! The long-time analysis of coupled-agent flows runs through three facts:
//! a scrambling coefficient that certifies one-step mixing of a stochastic
//! matrix, a lower bound on that coefficient for powers of matrices whose
//! positivity digraph has a rooted spanning tree, and a contraction estimate
//! for the row spread of A*Z + B.  Transition matrices of linear
//! time-varying systems are integrated here as well, both by RK4 and by a
//! truncated Peano-Baker series used as an independent cross-check.

#include <cstddef>
#include <functional>

#include "tcs/matrix.hpp"

namespace tcs {

//! Scrambling (ergodicity) coefficient: the smallest, over row pairs, total
//! overlap of two rows.  Exact float comparisons, no tolerance.  For a 1x1
//! matrix this is the single entry.
double ergodicity_coefficient(const Matrix& a);

//! True iff the ergodicity coefficient is strictly positive.
bool is_scrambling(const Matrix& a);

//! Smallest strictly positive entry; domain_error when all entries are zero.
double min_positive_entry(const Matrix& a);

struct PowerScramblingBound {
  double mu_of_power;     // ergodicity coefficient of a^depth
  double min_entry_power; // (smallest positive entry)^depth
  bool holds;             // mu_of_power >= min_entry_power
};

//! For a non-negative matrix with positive diagonal whose positivity digraph
//! has a rooted spanning tree of smallest depth `depth`, the `depth`-th power
//! is scrambling with coefficient at least min_positive_entry^depth.
//! Validates the structural preconditions (including that `depth` matches the
//! digraph) and evaluates both sides.
PowerScramblingBound scrambling_power_bound(const Matrix& a, std::size_t depth);

struct ContractionStep {
  Matrix mixed;     // a*z + b
  double diameter;  // max row-pair distance of mixed
  double bound;     // (1 - mu(a)) * max row-pair distance of z + sqrt(2)*||b||_F
};

//! Row-spread contraction of one averaging step w = a*z + b, where a is row
//! stochastic (row sums within 1e-12 of 1), z is n x d state rows and b a
//! perturbation.  The returned bound dominates the returned diameter.
ContractionStep contraction_step(const Matrix& a, const Matrix& z, const Matrix& b);

using GeneratorFn = std::function<Matrix(double)>;

//! Transition matrix of dPhi/dt = gen(t) * Phi, Phi(t0) = I, integrated with
//! `steps` fixed RK4 steps to t1 >= t0.  Equal endpoints give the identity.
//! Throws numeric_error when the result leaves the finite range.
Matrix transition_matrix_ode(const GeneratorFn& gen, double t0, double t1, std::size_t steps);

//! Truncated Peano-Baker series for the same transition matrix: identity plus
//! the first `order` iterated integrals of generator products.  Evaluated by
//! Picard sweeps over composite-midpoint panels (`panels` per level), which
//! reproduces the partial sums exactly; for a constant generator the result
//! is the order-`order` Taylor partial sum of exp((t1-t0)*gen) up to
//! quadrature error.  Order 0 gives the identity.
Matrix peano_baker_series(const GeneratorFn& gen, double t0, double t1, std::size_t order = 12,
                          std::size_t panels = 64);

struct ShiftCheck {
  Matrix direct;       // transition matrix of gen
  Matrix shifted;      // exp(-c*(t1-t0)) * transition matrix of gen + c*I
  double max_abs_diff; // entrywise gap between the two routes
};

//! Transition matrices are invariant under shifting the generator by c*I and
//! discounting by exp(-c*(t1-t0)); both routes are integrated with the same
//! RK4 grid and compared entrywise.
ShiftCheck exponential_shift_check(const GeneratorFn& gen, double c, double t0, double t1,
                                   std::size_t steps);

}  // namespace tcs
