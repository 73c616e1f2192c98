#include "tcs/matrixtools.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tcs/errors.hpp"
#include "tcs/graph.hpp"

namespace tcs {

namespace {

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument(std::string(what) + ": need a non-empty square matrix");
}

void require_finite(const Matrix& a, const char* what) {
  if (!a.all_finite()) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

}  // namespace

double ergodicity_coefficient(const Matrix& a) {
  require_square(a, "ergodicity coefficient");
  require_finite(a, "ergodicity coefficient");
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  double best = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double overlap = 0.0;
      for (std::size_t k = 0; k < n; ++k) overlap += std::min(a(i, k), a(j, k));
      if (first || overlap < best) {
        best = overlap;
        first = false;
      }
    }
  return best;
}

bool is_scrambling(const Matrix& a) { return ergodicity_coefficient(a) > 0.0; }

double min_positive_entry(const Matrix& a) {
  require_finite(a, "min positive entry");
  double best = 0.0;
  bool found = false;
  for (double v : a.data())
    if (v > 0.0 && (!found || v < best)) {
      best = v;
      found = true;
    }
  if (!found) throw std::domain_error("min positive entry: matrix has no positive entry");
  return best;
}

PowerScramblingBound scrambling_power_bound(const Matrix& a, std::size_t depth) {
  require_square(a, "scrambling power bound");
  require_finite(a, "scrambling power bound");
  const std::size_t n = a.rows();
  for (double v : a.data())
    if (v < 0.0) throw std::invalid_argument("scrambling power bound: entries must be non-negative");
  for (std::size_t i = 0; i < n; ++i)
    if (!(a(i, i) > 0.0))
      throw std::invalid_argument("scrambling power bound: diagonal must be positive");

  Digraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a(i, j) > 0.0) g.add_arc(j, i);  // j influences i
  const std::size_t structural_depth = g.smallest_depth();
  if (structural_depth != depth)
    throw std::invalid_argument("scrambling power bound: depth does not match the positivity digraph");

  PowerScramblingBound out{};
  out.mu_of_power = ergodicity_coefficient(a.pow(static_cast<unsigned>(depth)));
  out.min_entry_power = std::pow(min_positive_entry(a), static_cast<double>(depth));
  out.holds = out.mu_of_power >= out.min_entry_power;
  return out;
}

ContractionStep contraction_step(const Matrix& a, const Matrix& z, const Matrix& b) {
  require_square(a, "contraction step");
  require_finite(a, "contraction step");
  require_finite(z, "contraction step");
  require_finite(b, "contraction step");
  if (z.rows() != a.rows() || !z.same_shape(b))
    throw std::invalid_argument("contraction step: shape mismatch");
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (std::abs(a.row_sum(i) - 1.0) > 1e-12)
      throw std::domain_error("contraction step: rows must sum to 1 within 1e-12");

  ContractionStep out{a * z + b, 0.0, 0.0};
  out.diameter = max_row_pair_distance(out.mixed);
  out.bound = (1.0 - ergodicity_coefficient(a)) * max_row_pair_distance(z) +
              std::sqrt(2.0) * b.frobenius_norm();
  return out;
}

Matrix transition_matrix_ode(const GeneratorFn& gen, double t0, double t1, std::size_t steps) {
  if (!(t1 >= t0)) throw std::invalid_argument("transition matrix: need t1 >= t0");
  if (steps == 0) throw std::invalid_argument("transition matrix: need at least one step");
  Matrix probe = gen(t0);
  require_square(probe, "transition matrix");
  const std::size_t n = probe.rows();
  Matrix phi = Matrix::identity(n);
  if (t1 == t0) return phi;

  const double h = (t1 - t0) / static_cast<double>(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * h;
    const Matrix a1 = gen(t);
    const Matrix a2 = gen(t + 0.5 * h);
    const Matrix a4 = gen(t + h);
    const Matrix k1 = a1 * phi;
    const Matrix k2 = a2 * (phi + (0.5 * h) * k1);
    const Matrix k3 = a2 * (phi + (0.5 * h) * k2);
    const Matrix k4 = a4 * (phi + h * k3);
    phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (!phi.all_finite()) throw numeric_error("transition matrix: integration left the finite range");
  return phi;
}

Matrix peano_baker_series(const GeneratorFn& gen, double t0, double t1, std::size_t order,
                          std::size_t panels) {
  if (!(t1 >= t0)) throw std::invalid_argument("transition series: need t1 >= t0");
  if (panels == 0) throw std::invalid_argument("transition series: need at least one panel");
  Matrix probe = gen(t0);
  require_square(probe, "transition series");
  const std::size_t n = probe.rows();
  const Matrix eye = Matrix::identity(n);
  if (order == 0 || t1 == t0) return eye;

  const double dt = (t1 - t0) / static_cast<double>(panels);
  std::vector<Matrix> a(panels);
  for (std::size_t j = 0; j < panels; ++j)
    a[j] = gen(t0 + (static_cast<double>(j) + 0.5) * dt);

  // Picard sweeps: each sweep advances the partial sum of the iterated
  // integrals by one order.  `values` holds the current iterate at the panel
  // midpoints; cumulative midpoint quadrature takes full panels below the
  // node plus the trailing half panel at the node itself.
  std::vector<Matrix> values(panels, eye);
  Matrix end = eye;
  for (std::size_t sweep = 0; sweep < order; ++sweep) {
    std::vector<Matrix> next(panels, eye);
    Matrix running(n, n);
    for (std::size_t j = 0; j < panels; ++j) {
      const Matrix g = a[j] * values[j];
      next[j] += dt * running + (0.5 * dt) * g;
      running += g;
    }
    end = eye + dt * running;
    values = std::move(next);
  }
  if (!end.all_finite()) throw numeric_error("transition series: evaluation left the finite range");
  return end;
}

ShiftCheck exponential_shift_check(const GeneratorFn& gen, double c, double t0, double t1,
                                   std::size_t steps) {
  Matrix probe = gen(t0);
  require_square(probe, "exponential shift check");
  const std::size_t n = probe.rows();
  const GeneratorFn shifted_gen = [&gen, c, n](double t) {
    Matrix m = gen(t);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c;
    return m;
  };
  ShiftCheck out{transition_matrix_ode(gen, t0, t1, steps),
                 std::exp(-c * (t1 - t0)) * transition_matrix_ode(shifted_gen, t0, t1, steps), 0.0};
  out.max_abs_diff = max_abs_diff(out.direct, out.shifted);
  return out;
}

}  // namespace tcs
