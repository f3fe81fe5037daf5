#pragma once

#include <cstdint>
#include <deque>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dqlab/errors.hpp"
#include "dqlab/graph.hpp"

namespace dqlab {

// Ground truth with full edge access. Nothing in here goes through an oracle.

namespace detail {

// Bitset of right vertices with all n bits set.
inline std::vector<std::uint64_t> full_right_mask(std::size_t n_right) {
  std::vector<std::uint64_t> mask((n_right + 63) / 64, ~std::uint64_t{0});
  if (n_right % 64 != 0 && !mask.empty()) mask.back() = (std::uint64_t{1} << (n_right % 64)) - 1;
  return mask;
}

constexpr std::int32_t kNone = -1;

}  // namespace detail

// Maximum matching by greedy initialisation plus repeated multi-source BFS
// augmentation. Each BFS scans rows word-wise against the unvisited mask.
inline Matching max_matching_reference(const BipartiteGraph& g) {
  using detail::kNone;
  const auto n_left = g.n_left();
  const auto n_right = g.n_right();
  const auto words = g.words_per_row();
  std::vector<std::int32_t> mate_left(n_left, kNone);
  std::vector<std::int32_t> mate_right(n_right, kNone);

  auto free_right = detail::full_right_mask(n_right);
  for (Vertex v = 0; v < n_left; ++v) {
    auto row = g.row(v);
    for (std::size_t k = 0; k < words; ++k) {
      if (auto w = row[k] & free_right[k]; w != 0) {
        auto u = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        mate_left[v] = static_cast<std::int32_t>(u);
        mate_right[u] = static_cast<std::int32_t>(v);
        free_right[k] &= ~(std::uint64_t{1} << (u % 64));
        break;
      }
    }
  }

  std::vector<Vertex> parent(n_right, 0);
  std::vector<Vertex> queue;
  queue.reserve(n_left);
  for (;;) {
    auto unvisited = detail::full_right_mask(n_right);
    queue.clear();
    for (Vertex v = 0; v < n_left; ++v) {
      if (mate_left[v] == kNone) queue.push_back(v);
    }
    std::optional<Vertex> endpoint;
    for (std::size_t head = 0; head < queue.size() && !endpoint; ++head) {
      const Vertex v = queue[head];
      auto row = g.row(v);
      for (std::size_t k = 0; k < words && !endpoint; ++k) {
        for (auto w = row[k] & unvisited[k]; w != 0; w &= w - 1) {
          auto u = static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
          unvisited[k] &= ~(std::uint64_t{1} << (u % 64));
          parent[u] = v;
          if (mate_right[u] == kNone) {
            endpoint = u;
            break;
          }
          queue.push_back(static_cast<Vertex>(mate_right[u]));
        }
      }
    }
    if (!endpoint) break;
    for (std::int32_t u = static_cast<std::int32_t>(*endpoint); u != kNone;) {
      const Vertex v = parent[static_cast<std::size_t>(u)];
      const std::int32_t previous = mate_left[v];
      mate_left[v] = u;
      mate_right[static_cast<std::size_t>(u)] = static_cast<std::int32_t>(v);
      u = previous;
    }
  }

  Matching m;
  for (Vertex v = 0; v < n_left; ++v) {
    if (mate_left[v] != kNone) m.pairs.push_back({v, static_cast<Vertex>(mate_left[v])});
  }
  return m;
}

// Left and right vertex sets with no edges between them. Together with a
// matching of size k and |block_left| + |block_right| = n_left + n_right - k
// they certify that the matching is maximum.
struct CoverCertificate {
  std::vector<Vertex> block_left;
  std::vector<Vertex> block_right;
  std::size_t k = 0;

  std::size_t total() const { return block_left.size() + block_right.size(); }
};

// König construction: Z = vertices reachable from unmatched left vertices by
// alternating paths. The minimum cover is (L \ Z) + (R n Z); the certificate
// is its complement, block_left = L n Z and block_right = R \ Z.
inline CoverCertificate konig_certificate(const BipartiteGraph& g, const Matching& m) {
  if (!validate_matching(g, m)) throw PreconditionError("not a valid matching of the graph");
  const auto n_left = g.n_left();
  const auto n_right = g.n_right();
  std::vector<std::int32_t> mate_left(n_left, detail::kNone);
  std::vector<std::int32_t> mate_right(n_right, detail::kNone);
  for (const auto& [v, u] : m.pairs) {
    mate_left[v] = static_cast<std::int32_t>(u);
    mate_right[u] = static_cast<std::int32_t>(v);
  }

  std::vector<bool> reach_left(n_left, false);
  std::vector<bool> reach_right(n_right, false);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n_left; ++v) {
    if (mate_left[v] == detail::kNone) {
      reach_left[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    g.for_each_neighbor(v, [&](Vertex u) {
      if (reach_right[u]) return;
      reach_right[u] = true;
      if (mate_right[u] == detail::kNone) {
        throw PreconditionError("matching is not maximum: augmenting path ends at right vertex " +
                                std::to_string(u));
      }
      const auto w = static_cast<Vertex>(mate_right[u]);
      if (!reach_left[w]) {
        reach_left[w] = true;
        queue.push_back(w);
      }
    });
  }

  CoverCertificate cert;
  cert.k = m.size();
  for (Vertex v = 0; v < n_left; ++v) {
    if (reach_left[v]) cert.block_left.push_back(v);
  }
  for (Vertex u = 0; u < n_right; ++u) {
    if (!reach_right[u]) cert.block_right.push_back(u);
  }
  return cert;
}

// Certificate file: lines `L v` and `R u`; `#` comments.
inline CoverCertificate read_certificate(std::istream& in) {
  CoverCertificate cert;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::strip_comment(line);
    if (detail::is_blank(body)) continue;
    std::string side;
    long long id = 0;
    if (!detail::parse_exact(body, side, id) || id < 0 || (side != "L" && side != "R")) {
      throw InputError("certificate line " + std::to_string(lineno) + ": expected `L v` or `R u`");
    }
    (side == "L" ? cert.block_left : cert.block_right).push_back(static_cast<Vertex>(id));
  }
  return cert;
}

inline void write_certificate(std::ostream& out, const CoverCertificate& cert) {
  out << "# maximum matching size " << cert.k << '\n';
  for (auto v : cert.block_left) out << "L " << v << '\n';
  for (auto u : cert.block_right) out << "R " << u << '\n';
}

}  // namespace dqlab
