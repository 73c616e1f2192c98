#pragma once
//! Communication-weight kernels.
//!
//! A kernel maps inter-agent distance to a positive coupling weight and never
//! increases with distance, so the value at distance zero is the global
//! ceiling kappa.  Four families cover the toolkit's needs: constant,
//! algebraic kappa/(1+r^2)^s, exponential kappa*exp(-r/ell), and tabulated
//! breakpoints with linear interpolation and constant extrapolation.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace tcs {

class CommKernel {
 public:
  enum class Family { constant, algebraic, exponential, tabulated };

  static CommKernel constant(double kappa);
  static CommKernel algebraic(double kappa, double s);
  static CommKernel exponential(double kappa, double ell);
  //! Breakpoints (r, value): r strictly increasing and non-negative, values
  //! positive and non-increasing.  Flat before the first and after the last r.
  static CommKernel tabulated(std::vector<std::pair<double, double>> table);

  double eval(double r) const;

  //! Coupling ceiling: eval(0).
  double kappa() const { return kappa_; }

  Family family() const { return family_; }
  const std::string& family_name() const;

 private:
  CommKernel() = default;

  Family family_ = Family::constant;
  double kappa_ = 0.0;
  double s_ = 0.0;
  double ell_ = 0.0;
  std::vector<std::pair<double, double>> table_;
};

}  // namespace tcs
