#include "tcs/model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tcs {

void EnsembleState::validate() const {
  if (n == 0) throw std::invalid_argument("state: need at least one agent");
  if (dim == 0) throw std::invalid_argument("state: need at least one space dimension");
  if (pos.size() != n * dim || vel.size() != n * dim || coldness.size() != n)
    throw std::invalid_argument("state: array sizes do not match n and dim");
  if (!std::isfinite(t)) throw std::invalid_argument("state: time must be finite");
  for (double v : pos)
    if (!std::isfinite(v)) throw std::invalid_argument("state: positions must be finite");
  for (double v : vel)
    if (!std::isfinite(v)) throw std::invalid_argument("state: velocities must be finite");
  for (double b : coldness)
    if (!(std::isfinite(b) && b > 0.0))
      throw std::invalid_argument("state: coldness must be finite and strictly positive");
}

ModelSpec::ModelSpec(Digraph graph, CommKernel phi, CommKernel zeta)
    : graph_(std::move(graph)), phi_(std::move(phi)), zeta_(std::move(zeta)) {}

const std::optional<std::size_t>& ModelSpec::ensure_depth() const {
  if (!depth_known_) {
    try {
      depth_ = graph_.smallest_depth();
    } catch (const no_spanning_tree_error&) {
      depth_.reset();
    }
    depth_known_ = true;
  }
  return depth_;
}

std::size_t ModelSpec::depth() const {
  if (!ensure_depth())
    throw no_spanning_tree_error("model: communication digraph has no spanning tree");
  return *depth_;
}

}  // namespace tcs
