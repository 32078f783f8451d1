#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lgs/errors.hpp"

namespace lgs {

using BigInt = boost::multiprecision::cpp_int;

struct Edge {
  int tail = -1;
  int head = -1;
};

// A source-to-terminal walk, stored as edge ids in layer order.
struct Path {
  std::vector<int> edges;

  bool operator==(const Path& other) const { return edges == other.edges; }
  bool operator<(const Path& other) const { return edges < other.edges; }
};

// Directed acyclic graph whose vertices are partitioned into ordered layers,
// with every edge joining consecutive layers. Vertex and edge ids are dense
// integers assigned at construction; labels are only used to match vertices
// across two graphs that describe the same underlying world.
//
// Immutable after construction; all member functions are const.
class LayeredGraph {
 public:
  LayeredGraph() = default;

  // `layer_sizes[l]` is the number of vertices in layer l+1. Vertex ids run
  // 0..n-1 in layer order. `edges` refer to those ids; the position in the
  // list becomes the edge id.
  LayeredGraph(std::vector<int> layer_sizes, std::vector<Edge> edges,
               std::vector<std::string> labels = {},
               bool allow_parallel_edges = false)
      : layer_sizes_(std::move(layer_sizes)),
        edges_(std::move(edges)),
        labels_(std::move(labels)),
        allow_parallel_edges_(allow_parallel_edges) {
    layer_offset_.reserve(layer_sizes_.size() + 1);
    layer_offset_.push_back(0);
    for (int s : layer_sizes_) layer_offset_.push_back(layer_offset_.back() + s);
    const int n = layer_offset_.back();
    if (labels_.empty()) {
      labels_.reserve(n);
      for (int v = 0; v < n; ++v) labels_.push_back(std::to_string(v));
    }
    layer_of_.resize(n, 0);
    for (std::size_t l = 0; l < layer_sizes_.size(); ++l)
      for (int v = layer_offset_[l]; v < layer_offset_[l + 1]; ++v)
        layer_of_[v] = static_cast<int>(l) + 1;
    out_edges_.resize(n);
    in_edges_.resize(n);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.tail >= 0 && ed.tail < n) out_edges_[ed.tail].push_back(static_cast<int>(e));
      if (ed.head >= 0 && ed.head < n) in_edges_[ed.head].push_back(static_cast<int>(e));
    }
  }

  int num_layers() const { return static_cast<int>(layer_sizes_.size()); }
  int num_vertices() const { return layer_offset_.empty() ? 0 : layer_offset_.back(); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int layer_of(int v) const { return layer_of_[v]; }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool allow_parallel_edges() const { return allow_parallel_edges_; }

  // First vertex id of a 1-based layer.
  int layer_begin(int layer) const { return layer_offset_[layer - 1]; }
  int layer_end(int layer) const { return layer_offset_[layer]; }

  int source() const { return 0; }
  bool is_terminal(int v) const { return num_layers() >= 1 && layer_of_[v] == num_layers(); }

  // Edge ids leaving / entering a vertex, in increasing edge-id order.
  const std::vector<int>& out_edges(int v) const { return out_edges_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_edges_[v]; }

  std::vector<int> terminals() const {
    std::vector<int> t;
    if (num_layers() == 0) return t;
    for (int v = layer_begin(num_layers()); v < layer_end(num_layers()); ++v) t.push_back(v);
    return t;
  }

  // Vertex sequence of a path, source first.
  std::vector<int> path_vertices(const Path& p) const {
    std::vector<int> vs;
    vs.reserve(p.edges.size() + 1);
    if (p.edges.empty()) return vs;
    vs.push_back(edges_[p.edges.front()].tail);
    for (int e : p.edges) vs.push_back(edges_[e].head);
    return vs;
  }

  bool path_valid(const Path& p) const {
    if (static_cast<int>(p.edges.size()) != num_layers() - 1) return false;
    int at = source();
    for (int e : p.edges) {
      if (e < 0 || e >= num_edges()) return false;
      if (edges_[e].tail != at) return false;
      at = edges_[e].head;
    }
    return is_terminal(at);
  }

 private:
  std::vector<int> layer_sizes_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  bool allow_parallel_edges_ = false;
  std::vector<int> layer_offset_;
  std::vector<int> layer_of_;
  std::vector<std::vector<int>> out_edges_;
  std::vector<std::vector<int>> in_edges_;
};

// Structural violations are data, not faults: callers inspect the list.
struct Violation {
  std::string what;
  int id = -1;  // offending vertex or edge id, -1 when global
};

inline std::vector<Violation> validate(const LayeredGraph& g) {
  std::vector<Violation> out;
  if (g.num_layers() < 2) out.push_back({"fewer than two layers", -1});
  for (int l = 0; l < g.num_layers(); ++l)
    if (g.layer_sizes()[l] <= 0) out.push_back({"empty layer", l + 1});
  if (g.num_layers() >= 1 && g.layer_sizes()[0] != 1)
    out.push_back({"first layer not singleton", -1});
  const int n = g.num_vertices();
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.tail < 0 || ed.tail >= n || ed.head < 0 || ed.head >= n) {
      out.push_back({"edge endpoint out of range", e});
      continue;
    }
    const int lt = g.layer_of(ed.tail), lh = g.layer_of(ed.head);
    if (lh != lt + 1) {
      out.push_back({lh > lt + 1 ? "edge skips layer" : "edge not forward", e});
    }
  }
  if (!g.allow_parallel_edges()) {
    std::vector<std::pair<int, int>> seen;
    seen.reserve(g.num_edges());
    for (const Edge& ed : g.edges()) seen.emplace_back(ed.tail, ed.head);
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 1; i < seen.size(); ++i)
      if (seen[i] == seen[i - 1]) {
        out.push_back({"duplicate edge", seen[i].first});
        break;
      }
  }
  return out;
}

inline bool is_valid(const LayeredGraph& g) { return validate(g).empty(); }

// Number of source-to-terminal paths. Exact arbitrary-precision arithmetic:
// counts blow past 64 bits already at moderate horizons.
inline BigInt count_paths(const LayeredGraph& g) {
  const int n = g.num_vertices();
  if (n == 0 || g.num_layers() < 2) return 0;
  std::vector<BigInt> ways(n, 0);
  ways[g.source()] = 1;
  for (int v = 0; v < n; ++v) {
    if (ways[v] == 0) continue;
    for (int e : g.out_edges(v)) ways[g.edge(e).head] += ways[v];
  }
  BigInt total = 0;
  for (int v : g.terminals()) total += ways[v];
  return total;
}

// All source-to-terminal paths in lexicographic order of their edge-id
// sequences. Throws CapExceeded before doing any work when the exact count
// is larger than `cap`.
inline std::vector<Path> enumerate_paths(const LayeredGraph& g, std::uint64_t cap) {
  BigInt total = count_paths(g);
  if (total > cap)
    throw CapExceeded("enumerate_paths: " + total.str() + " paths exceed cap " +
                      std::to_string(cap));
  std::vector<Path> result;
  result.reserve(static_cast<std::size_t>(total));
  std::vector<int> stack;
  const int want = g.num_layers() - 1;

  // Iterative DFS taking out-edges in increasing id order.
  struct Frame {
    int vertex;
    std::size_t next;
  };
  std::vector<Frame> frames{{g.source(), 0}};
  while (!frames.empty()) {
    Frame& f = frames.back();
    if (static_cast<int>(stack.size()) == want) {
      result.push_back(Path{stack});
      frames.pop_back();
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    const auto& outs = g.out_edges(f.vertex);
    if (f.next >= outs.size()) {
      frames.pop_back();
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    const int e = outs[f.next++];
    stack.push_back(e);
    frames.push_back({g.edge(e).head, 0});
  }
  return result;
}

// First path in the enumerate_paths order, if any.
inline bool first_path(const LayeredGraph& g, Path& out) {
  const int L = g.num_layers();
  if (L < 2) return false;
  // Greedy descent can dead-end at a vertex with no outgoing edges, so walk
  // the reach-to-terminal set first.
  std::vector<char> reaches(g.num_vertices(), 0);
  for (int v = g.num_vertices() - 1; v >= 0; --v) {
    if (g.is_terminal(v)) {
      reaches[v] = 1;
      continue;
    }
    for (int e : g.out_edges(v))
      if (reaches[g.edge(e).head]) {
        reaches[v] = 1;
        break;
      }
  }
  if (!reaches[g.source()]) return false;
  out.edges.clear();
  int at = g.source();
  while (!g.is_terminal(at)) {
    int chosen = -1;
    for (int e : g.out_edges(at))
      if (reaches[g.edge(e).head]) {
        chosen = e;
        break;
      }
    if (chosen < 0) return false;
    out.edges.push_back(chosen);
    at = g.edge(chosen).head;
  }
  return true;
}

}  // namespace lgs
