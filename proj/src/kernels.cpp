#include "tcs/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcs {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

CommKernel CommKernel::constant(double kappa) {
  require(std::isfinite(kappa) && kappa > 0.0, "kernel: kappa must be positive");
  CommKernel k;
  k.family_ = Family::constant;
  k.kappa_ = kappa;
  return k;
}

CommKernel CommKernel::algebraic(double kappa, double s) {
  require(std::isfinite(kappa) && kappa > 0.0, "kernel: kappa must be positive");
  require(std::isfinite(s) && s >= 0.0, "kernel: exponent s must be non-negative");
  CommKernel k;
  k.family_ = Family::algebraic;
  k.kappa_ = kappa;
  k.s_ = s;
  return k;
}

CommKernel CommKernel::exponential(double kappa, double ell) {
  require(std::isfinite(kappa) && kappa > 0.0, "kernel: kappa must be positive");
  require(std::isfinite(ell) && ell > 0.0, "kernel: length scale ell must be positive");
  CommKernel k;
  k.family_ = Family::exponential;
  k.kappa_ = kappa;
  k.ell_ = ell;
  return k;
}

CommKernel CommKernel::tabulated(std::vector<std::pair<double, double>> table) {
  require(!table.empty(), "kernel: table must be non-empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    require(std::isfinite(table[i].first) && table[i].first >= 0.0,
            "kernel: table radii must be non-negative");
    require(std::isfinite(table[i].second) && table[i].second > 0.0,
            "kernel: table values must be positive");
    if (i > 0) {
      require(table[i].first > table[i - 1].first, "kernel: table radii must strictly increase");
      require(table[i].second <= table[i - 1].second, "kernel: table values must not increase");
    }
  }
  CommKernel k;
  k.family_ = Family::tabulated;
  k.table_ = std::move(table);
  k.kappa_ = k.eval(0.0);
  return k;
}

double CommKernel::eval(double r) const {
  if (!(std::isfinite(r) && r >= 0.0))
    throw std::invalid_argument("kernel: distance must be finite and non-negative");
  switch (family_) {
    case Family::constant:
      return kappa_;
    case Family::algebraic:
      return kappa_ / std::pow(1.0 + r * r, s_);
    case Family::exponential:
      return kappa_ * std::exp(-r / ell_);
    case Family::tabulated: {
      if (r <= table_.front().first) return table_.front().second;
      if (r >= table_.back().first) return table_.back().second;
      const auto hi = std::upper_bound(
          table_.begin(), table_.end(), r,
          [](double value, const std::pair<double, double>& bp) { return value < bp.first; });
      const auto lo = hi - 1;
      const double w = (r - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  throw std::logic_error("kernel: unknown family");
}

const std::string& CommKernel::family_name() const {
  static const std::string names[] = {"constant", "algebraic", "exponential", "tabulated"};
  return names[static_cast<int>(family_)];
}

}  // namespace tcs
