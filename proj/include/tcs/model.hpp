#pragma once
//! Ensemble state and model description for thermomechanical flocking.
//!
//! Each of the n agents carries a position and velocity in R^dim and a
//! strictly positive coldness (inverse temperature).  The model couples them
//! over a communication digraph through two distance kernels: phi weights the
//! velocity alignment, zeta weights the temperature exchange.

#include <cstddef>
#include <optional>
#include <vector>

#include "tcs/graph.hpp"
#include "tcs/kernels.hpp"

namespace tcs {

struct EnsembleState {
  double t = 0.0;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<double> pos;       // n x dim, row-major
  std::vector<double> vel;       // n x dim, row-major
  std::vector<double> coldness;  // n, strictly positive

  EnsembleState() = default;
  EnsembleState(std::size_t n_, std::size_t dim_)
      : n(n_), dim(dim_), pos(n_ * dim_, 0.0), vel(n_ * dim_, 0.0), coldness(n_, 1.0) {}

  double* pos_row(std::size_t i) { return pos.data() + i * dim; }
  const double* pos_row(std::size_t i) const { return pos.data() + i * dim; }
  double* vel_row(std::size_t i) { return vel.data() + i * dim; }
  const double* vel_row(std::size_t i) const { return vel.data() + i * dim; }

  double temperature(std::size_t i) const { return 1.0 / coldness[i]; }

  //! Throws std::invalid_argument on size mismatch, non-finite entries or
  //! non-positive coldness.
  void validate() const;
};

class ModelSpec {
 public:
  ModelSpec(Digraph graph, CommKernel phi, CommKernel zeta);

  const Digraph& graph() const { return graph_; }
  const CommKernel& phi() const { return phi_; }
  const CommKernel& zeta() const { return zeta_; }

  std::size_t size() const { return graph_.size(); }
  bool has_spanning_tree() const { return ensure_depth().has_value(); }

  //! Smallest spanning-tree depth; throws no_spanning_tree_error when the
  //! graph has no root reaching every agent.
  std::size_t depth() const;

 private:
  const std::optional<std::size_t>& ensure_depth() const;

  Digraph graph_;
  CommKernel phi_;
  CommKernel zeta_;
  // Computed on first use; constructing a model must stay cheap even for
  // graphs where the depth scan is expensive.
  mutable bool depth_known_ = false;
  mutable std::optional<std::size_t> depth_;
};

struct Diameters {
  double x = 0.0;      // largest pairwise position distance
  double v = 0.0;      // largest pairwise velocity distance
  double b = 0.0;      // coldness spread (max - min)
  double theta = 0.0;  // temperature spread (max - min)
  double r_u = 0.0;    // largest ||coldness_i * v_i||
};

}  // namespace tcs
