#include "tcs/graph.hpp"

#include <queue>

#include "tcs/rng.hpp"

namespace tcs {

Digraph::Digraph(std::size_t n) : n_(n), adj_(n * n, 0) {
  if (n == 0) throw std::invalid_argument("digraph: need at least one vertex");
  for (std::size_t i = 0; i < n_; ++i) adj_[i * n_ + i] = 1;
}

void Digraph::check_vertex(std::size_t v) const {
  if (v >= n_) throw std::out_of_range("digraph: vertex index out of range");
}

void Digraph::add_arc(std::size_t source, std::size_t target) {
  check_vertex(source);
  check_vertex(target);
  adj_[target * n_ + source] = 1;
}

std::size_t Digraph::arc_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && adj_[i * n_ + j]) ++c;
  return c;
}

std::vector<int> Digraph::distances_from(std::size_t source) const {
  check_vertex(source);
  std::vector<int> dist(n_, -1);
  std::queue<std::size_t> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    // u transmits to w iff adjacency(w, u)
    for (std::size_t w = 0; w < n_; ++w)
      if (adj_[w * n_ + u] && dist[w] < 0) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

bool Digraph::is_reachable(std::size_t from, std::size_t to) const {
  check_vertex(to);
  return distances_from(from)[to] >= 0;
}

std::vector<std::size_t> Digraph::roots() const {
  // The vertex finishing last in a full DFS over the transmission graph lies
  // in a source component of the condensation, so it is a root whenever any
  // root exists.  One forward sweep checks that; one reverse sweep then
  // collects every vertex that reaches it (and hence reaches everything).
  std::vector<char> seen(n_, 0);
  std::size_t last = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (vertex, next target)
  for (std::size_t s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.emplace_back(s, 0);
    while (!stack.empty()) {
      auto& [u, w] = stack.back();
      // u transmits to w iff adjacency(w, u)
      while (w < n_ && !(adj_[w * n_ + u] && !seen[w])) ++w;
      if (w == n_) {
        last = u;
        stack.pop_back();
      } else {
        const std::size_t next = w++;
        seen[next] = 1;
        stack.emplace_back(next, 0);
      }
    }
  }

  const std::vector<int> dist = distances_from(last);
  for (int d : dist)
    if (d < 0) return {};

  // Reverse reachability: follow arcs backwards, i.e. from u to its
  // transmitters (row u of the adjacency).
  std::vector<char> reach(n_, 0);
  std::queue<std::size_t> q;
  reach[last] = 1;
  q.push(last);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t j = 0; j < n_; ++j)
      if (adj_[u * n_ + j] && !reach[j]) {
        reach[j] = 1;
        q.push(j);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < n_; ++r)
    if (reach[r]) out.push_back(r);
  return out;
}

std::size_t Digraph::smallest_depth() const {
  const std::vector<std::size_t> rs = roots();
  if (rs.empty()) throw no_spanning_tree_error("digraph: no root reaches every vertex");
  bool found = false;
  std::size_t best = 0;
  for (std::size_t r : rs) {
    const std::vector<int> dist = distances_from(r);
    int ecc = 0;
    for (int d : dist) ecc = std::max(ecc, d);
    if (!found || static_cast<std::size_t>(ecc) < best) {
      best = static_cast<std::size_t>(ecc);
      found = true;
    }
  }
  return best;
}

Digraph from_edge_list(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Digraph g(n);
  for (const auto& [source, target] : edges) g.add_arc(source, target);
  return g;
}

Digraph make_complete(std::size_t n) {
  Digraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) g.add_arc(i, j);
  return g;
}

Digraph make_cycle(std::size_t n) {
  Digraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_arc(i, (i + 1) % n);
  return g;
}

Digraph make_path(std::size_t n) {
  Digraph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_arc(i, i + 1);
  return g;
}

Digraph make_random(std::size_t n, double p, std::uint64_t seed, unsigned max_attempts) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("random digraph: p must lie in [0, 1]");
  Rng rng(seed);
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    Digraph g(n);
    for (std::size_t source = 0; source < n; ++source)
      for (std::size_t target = 0; target < n; ++target)
        if (source != target && rng.unit() < p) g.add_arc(source, target);
    if (g.has_spanning_tree()) return g;
  }
  throw no_spanning_tree_error("random digraph: no spanning tree after bounded attempts");
}

}  // namespace tcs
