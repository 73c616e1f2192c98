#pragma once
//! Communication digraphs for interacting-agent ensembles.
//!
//! adjacency(i, j) answers "does agent j transmit to agent i".  Every agent
//! hears itself, so the diagonal is always set.  The influence structure that
//! matters for long-time behaviour is whether some root agent reaches every
//! other agent along transmission arcs, and in how many hops; smallest_depth()
//! reports the best such eccentricity over all roots.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tcs {

//! Raised when a digraph has no root that reaches every vertex.
struct no_spanning_tree_error : std::domain_error {
  using std::domain_error::domain_error;
};

class Digraph {
 public:
  explicit Digraph(std::size_t n);

  std::size_t size() const { return n_; }

  //! True iff j transmits to i.  Diagonal entries are always true.
  bool adjacency(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }

  //! Insert the transmission arc source -> target (no-op if present).
  void add_arc(std::size_t source, std::size_t target);

  //! Arc count excluding the forced self-loops.
  std::size_t arc_count() const;

  //! Hop distances from `source` along transmission arcs; -1 if unreachable.
  std::vector<int> distances_from(std::size_t source) const;

  //! True iff `to` can be influenced from `from` (every vertex reaches itself).
  bool is_reachable(std::size_t from, std::size_t to) const;

  //! All vertices that reach every other vertex, ascending order.
  std::vector<std::size_t> roots() const;

  bool has_spanning_tree() const { return !roots().empty(); }

  //! Smallest over all roots of the largest hop distance to any vertex.
  //! Throws no_spanning_tree_error when no root exists.  0 for a single agent.
  std::size_t smallest_depth() const;

 private:
  void check_vertex(std::size_t v) const;

  std::size_t n_;
  std::vector<std::uint8_t> adj_;  // row-major, adj_[i*n_+j] = 1 iff j transmits to i
};

//! Build from (source, target) transmission pairs; vertex ids in [0, n).
Digraph from_edge_list(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

//! All ordered pairs connected in both directions.
Digraph make_complete(std::size_t n);

//! Directed ring 0 -> 1 -> ... -> n-1 -> 0.
Digraph make_cycle(std::size_t n);

//! Directed chain 0 -> 1 -> ... -> n-1.
Digraph make_path(std::size_t n);

//! Each off-diagonal arc drawn independently with probability p; redraws the
//! whole graph (bounded attempts) until a spanning tree exists, then returns.
//! Throws no_spanning_tree_error when attempts run out.
Digraph make_random(std::size_t n, double p, std::uint64_t seed, unsigned max_attempts = 64);

}  // namespace tcs
