#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dqlab/errors.hpp"

namespace dqlab {

// Left and right vertices live in separate dense index spaces 0..n-1.
using Vertex = std::uint32_t;

struct Edge {
  Vertex left = 0;
  Vertex right = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Explicit bipartite graph stored as one bitset row per left vertex.
// This is the hidden ground truth; algorithms only see it through an Oracle.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::size_t n_left, std::size_t n_right)
      : n_left_(n_left),
        n_right_(n_right),
        words_((n_right + 63) / 64),
        bits_(n_left * words_, 0) {}

  static BipartiteGraph complete(std::size_t n_left, std::size_t n_right) {
    BipartiteGraph g(n_left, n_right);
    for (Vertex v = 0; v < n_left; ++v) g.fill_row(v);
    return g;
  }

  std::size_t n_left() const { return n_left_; }
  std::size_t n_right() const { return n_right_; }
  bool is_square() const { return n_left_ == n_right_; }

  bool has_edge(Vertex v, Vertex u) const {
    check(v, u);
    return (bits_[v * words_ + u / 64] >> (u % 64)) & 1U;
  }

  void add_edge(Vertex v, Vertex u) {
    check(v, u);
    bits_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
  }

  void remove_edge(Vertex v, Vertex u) {
    check(v, u);
    bits_[v * words_ + u / 64] &= ~(std::uint64_t{1} << (u % 64));
  }

  void fill_row(Vertex v) {
    check_left(v);
    auto r = mutable_row(v);
    std::fill(r.begin(), r.end(), ~std::uint64_t{0});
    if (n_right_ % 64 != 0 && !r.empty()) r.back() = (std::uint64_t{1} << (n_right_ % 64)) - 1;
  }

  // Packed adjacency row of v: bit u of word u/64 is set iff (v,u) is an edge.
  std::span<const std::uint64_t> row(Vertex v) const {
    check_left(v);
    return {bits_.data() + v * words_, words_};
  }
  std::span<std::uint64_t> mutable_row(Vertex v) {
    check_left(v);
    return {bits_.data() + v * words_, words_};
  }
  std::size_t words_per_row() const { return words_; }

  std::size_t degree(Vertex v) const {
    std::size_t d = 0;
    for (auto w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
    return d;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (auto w : bits_) m += static_cast<std::size_t>(std::popcount(w));
    return m;
  }

  template <class F>
  void for_each_neighbor(Vertex v, F&& f) const {
    auto r = row(v);
    for (std::size_t k = 0; k < r.size(); ++k) {
      for (auto w = r[k]; w != 0; w &= w - 1) {
        f(static_cast<Vertex>(k * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      }
    }
  }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for_each_neighbor(v, [&](Vertex u) { out.push_back(u); });
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex v = 0; v < n_left_; ++v) {
      for_each_neighbor(v, [&](Vertex u) { out.push_back({v, u}); });
    }
    return out;
  }

  // Degrees of the right vertices.
  std::vector<std::size_t> right_degrees() const {
    std::vector<std::size_t> deg(n_right_, 0);
    for (Vertex v = 0; v < n_left_; ++v) for_each_neighbor(v, [&](Vertex u) { ++deg[u]; });
    return deg;
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  void check_left(Vertex v) const {
    if (v >= n_left_) throw InputError("left vertex " + std::to_string(v) + " out of range");
  }
  void check(Vertex v, Vertex u) const {
    check_left(v);
    if (u >= n_right_) throw InputError("right vertex " + std::to_string(u) + " out of range");
  }

  std::size_t n_left_ = 0;
  std::size_t n_right_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// A set of vertex-disjoint left-right pairs. Validity against a graph is a
// separate check; construction does not enforce it.
struct Matching {
  std::vector<Edge> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }

  // Builds a matching from a left -> right mate table.
  static Matching from_mates(std::span<const std::optional<Vertex>> mate_of_left) {
    Matching m;
    for (std::size_t v = 0; v < mate_of_left.size(); ++v) {
      if (mate_of_left[v]) m.pairs.push_back({static_cast<Vertex>(v), *mate_of_left[v]});
    }
    return m;
  }

  void normalize() { std::sort(pairs.begin(), pairs.end()); }

  friend bool operator==(const Matching&, const Matching&) = default;
};

inline std::size_t matching_size(const Matching& m) { return m.size(); }

// True iff no vertex repeats and every pair is an edge of g. Throws
// InputError for ids outside g.
inline bool validate_matching(const BipartiteGraph& g, const Matching& m) {
  std::vector<bool> used_left(g.n_left(), false);
  std::vector<bool> used_right(g.n_right(), false);
  for (const auto& [v, u] : m.pairs) {
    if (v >= g.n_left() || u >= g.n_right()) {
      throw InputError("matching pair (" + std::to_string(v) + "," + std::to_string(u) +
                       ") out of range");
    }
  }
  for (const auto& [v, u] : m.pairs) {
    if (used_left[v] || used_right[u]) return false;
    used_left[v] = used_right[u] = true;
    if (!g.has_edge(v, u)) return false;
  }
  return true;
}

// A permutation of the right vertices, used as a demand-query preference.
class RightOrder {
 public:
  RightOrder() = default;
  explicit RightOrder(std::vector<Vertex> order) : order_(std::move(order)) {
    std::vector<bool> seen(order_.size(), false);
    for (auto u : order_) {
      if (u >= order_.size() || seen[u]) throw InputError("order is not a permutation of the right vertices");
      seen[u] = true;
    }
  }

  static RightOrder identity(std::size_t n) {
    std::vector<Vertex> ids(n);
    std::iota(ids.begin(), ids.end(), Vertex{0});
    return RightOrder(std::move(ids), Unchecked{});
  }

  std::size_t size() const { return order_.size(); }
  Vertex operator[](std::size_t i) const { return order_[i]; }
  std::span<const Vertex> view() const { return order_; }
  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

 private:
  struct Unchecked {};
  RightOrder(std::vector<Vertex> order, Unchecked) : order_(std::move(order)) {}

  std::vector<Vertex> order_;
};

namespace detail {

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

template <class... Ts>
bool parse_exact(const std::string& s, Ts&... out) {
  std::istringstream in(s);
  ((in >> out), ...);
  if (!in) return false;
  std::string rest;
  return !(in >> rest);
}

}  // namespace detail

// Graph file: header `n_left n_right`, then one `v u` line per edge.
// `#` starts a comment; blank lines are ignored.
inline BipartiteGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<BipartiteGraph> g;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::strip_comment(line);
    if (detail::is_blank(body)) continue;
    long long a = 0;
    long long b = 0;
    if (!detail::parse_exact(body, a, b) || a < 0 || b < 0) {
      throw InputError("graph file line " + std::to_string(lineno) + ": expected two non-negative integers");
    }
    if (!g) {
      g.emplace(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      continue;
    }
    if (static_cast<std::size_t>(a) >= g->n_left() || static_cast<std::size_t>(b) >= g->n_right()) {
      throw InputError("graph file line " + std::to_string(lineno) + ": edge out of range");
    }
    g->add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
  }
  if (!g) throw InputError("graph file has no header line");
  return std::move(*g);
}

inline void write_graph(std::ostream& out, const BipartiteGraph& g) {
  out << g.n_left() << ' ' << g.n_right() << '\n';
  for (const auto& e : g.edges()) out << e.left << ' ' << e.right << '\n';
}

// Matching file: one `v u` line per pair, comments as in graph files.
inline Matching read_matching(std::istream& in) {
  Matching m;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::strip_comment(line);
    if (detail::is_blank(body)) continue;
    long long a = 0;
    long long b = 0;
    if (!detail::parse_exact(body, a, b) || a < 0 || b < 0) {
      throw InputError("matching file line " + std::to_string(lineno) + ": expected `v u`");
    }
    m.pairs.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b)});
  }
  return m;
}

inline void write_matching(std::ostream& out, const Matching& m) {
  for (const auto& e : m.pairs) out << e.left << ' ' << e.right << '\n';
}

}  // namespace dqlab
