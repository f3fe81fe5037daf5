#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <vector>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"
#include "dqlab/oracle.hpp"

namespace dqlab {

// pi maps each right vertex to its left partner, if any; `unmatched` is the
// set of left vertices the search starts from.
struct PartialAssignment {
  std::vector<std::optional<Vertex>> pi;
  std::vector<Vertex> unmatched;

  static PartialAssignment from_matching(std::size_t n_left, std::size_t n_right, const Matching& m) {
    PartialAssignment pa;
    pa.pi.resize(n_right);
    std::vector<bool> matched(n_left, false);
    for (const auto& [v, u] : m.pairs) {
      if (v >= n_left || u >= n_right) throw InputError("matching pair out of range");
      pa.pi[u] = v;
      matched[v] = true;
    }
    for (Vertex v = 0; v < n_left; ++v) {
      if (!matched[v]) pa.unmatched.push_back(v);
    }
    return pa;
  }

  // pi injective, start set duplicate-free and disjoint from pi's image.
  bool valid(std::size_t n_left) const {
    std::vector<int> seen(n_left, 0);
    for (const auto& w : pi) {
      if (!w) continue;
      if (*w >= n_left || seen[*w]++ != 0) return false;
    }
    for (auto v : unmatched) {
      if (v >= n_left || seen[v]++ != 0) return false;
    }
    return true;
  }
};

// Alternating path v1 u1 v2 u2 ... vk uk with v1 unmatched, pi(ui) = v(i+1)
// for i < k, and uk free. left[i] and right[i] hold vi and ui.
struct AugmentingPath {
  std::vector<Vertex> left;
  std::vector<Vertex> right;

  std::size_t length() const { return left.size(); }
};

// Breadth-first search driven by demand queries. The queried vertex is the
// head of the queue; its order lists free right vertices first, then those
// whose partner is neither queued nor discarded, then the rest. A free answer
// ends the search, a fresh partner is enqueued, anything else (including an
// absent answer) discards the head. At most 2n queries.
inline std::optional<AugmentingPath> find_augmenting_path(Oracle& o, const PartialAssignment& pa) {
  const auto n_left = o.n_left();
  const auto n_right = o.n_right();
  if (pa.pi.size() != n_right || !pa.valid(n_left)) {
    throw PreconditionError("partial assignment is not injective or overlaps its start set");
  }

  std::vector<bool> queued(n_left, false);
  std::vector<bool> discarded(n_left, false);
  std::vector<std::optional<Vertex>> came_from(n_left);
  std::vector<Vertex> via(n_left, 0);
  std::deque<Vertex> queue;
  for (auto v : pa.unmatched) {
    queued[v] = true;
    queue.push_back(v);
  }

  std::vector<Vertex> order;
  order.reserve(n_right);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    order.clear();
    for (Vertex u = 0; u < n_right; ++u) {
      if (!pa.pi[u]) order.push_back(u);
    }
    for (Vertex u = 0; u < n_right; ++u) {
      if (pa.pi[u] && !queued[*pa.pi[u]] && !discarded[*pa.pi[u]]) order.push_back(u);
    }
    for (Vertex u = 0; u < n_right; ++u) {
      if (pa.pi[u] && (queued[*pa.pi[u]] || discarded[*pa.pi[u]])) order.push_back(u);
    }

    const auto answer = o.demand_query(v, RightOrder(order));
    if (answer && !pa.pi[answer->vertex]) {
      AugmentingPath path;
      path.left.push_back(v);
      path.right.push_back(answer->vertex);
      for (Vertex w = v; came_from[w]; w = *came_from[w]) {
        path.left.push_back(*came_from[w]);
        path.right.push_back(via[w]);
      }
      std::reverse(path.left.begin(), path.left.end());
      std::reverse(path.right.begin(), path.right.end());
      return path;
    }
    if (answer) {
      const Vertex w = *pa.pi[answer->vertex];
      if (!queued[w] && !discarded[w]) {
        queued[w] = true;
        came_from[w] = v;
        via[w] = answer->vertex;
        queue.push_back(w);
        continue;
      }
    }
    queue.pop_front();
    queued[v] = false;
    discarded[v] = true;
  }
  return std::nullopt;
}

// Flips the path in a left -> right mate table, growing the matching by one.
inline void augment(std::vector<std::optional<Vertex>>& mate_left, const AugmentingPath& path) {
  for (std::size_t i = 0; i < path.length(); ++i) mate_left[path.left[i]] = path.right[i];
}

}  // namespace dqlab
