#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lgs/errors.hpp"
#include "lgs/layered_graph.hpp"

namespace lgs {

enum class UtilityKind { Lin, Bin };

enum class InterdictionMode { EdgeEquality, SharedHeadVertex, Explicit };

// Finitely supported distribution over paths of one player's graph.
struct MixedStrategy {
  std::vector<Path> support;
  std::vector<double> probs;

  void check_valid() const {
    if (support.size() != probs.size())
      throw Error("MixedStrategy: support/probs length mismatch");
    if (support.empty()) throw EmptySupport("MixedStrategy: empty support");
    double sum = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0)) throw Error("MixedStrategy: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw Error("MixedStrategy: probabilities sum to " + std::to_string(sum));
    auto sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("MixedStrategy: duplicate support path");
  }
};

inline MixedStrategy deterministic_strategy(Path p) {
  return MixedStrategy{{std::move(p)}, {1.0}};
}

// Which defender edges can catch which attacker edges. Declared as one of
// three modes but always normalized to an explicit sparse pair list; the
// forward/reverse indices below drive both utility evaluation and the
// best-response MILP constraint generation.
class InterdictionRelation {
 public:
  InterdictionRelation() = default;

  static InterdictionRelation make(const LayeredGraph& gd, const LayeredGraph& ga,
                                   InterdictionMode mode,
                                   std::vector<std::pair<int, int>> explicit_pairs = {}) {
    InterdictionRelation r;
    r.mode_ = mode;
    switch (mode) {
      case InterdictionMode::Explicit:
        r.pairs_ = std::move(explicit_pairs);
        break;
      case InterdictionMode::EdgeEquality: {
        // Same (layer, tail label, head label). Graphs may index vertices
        // differently, so match labels, not ids.
        std::map<std::tuple<int, std::string, std::string>, std::vector<int>> by_key;
        for (int e = 0; e < gd.num_edges(); ++e) {
          const Edge& ed = gd.edge(e);
          by_key[{gd.layer_of(ed.tail), gd.label(ed.tail), gd.label(ed.head)}].push_back(e);
        }
        for (int e = 0; e < ga.num_edges(); ++e) {
          const Edge& ea = ga.edge(e);
          auto it = by_key.find({ga.layer_of(ea.tail), ga.label(ea.tail), ga.label(ea.head)});
          if (it == by_key.end()) continue;
          for (int de : it->second) r.pairs_.emplace_back(de, e);
        }
        break;
      }
      case InterdictionMode::SharedHeadVertex: {
        std::map<std::pair<int, std::string>, std::vector<int>> by_head;
        for (int e = 0; e < gd.num_edges(); ++e) {
          const Edge& ed = gd.edge(e);
          by_head[{gd.layer_of(ed.head), gd.label(ed.head)}].push_back(e);
        }
        for (int e = 0; e < ga.num_edges(); ++e) {
          const Edge& ea = ga.edge(e);
          auto it = by_head.find({ga.layer_of(ea.head), ga.label(ea.head)});
          if (it == by_head.end()) continue;
          for (int de : it->second) r.pairs_.emplace_back(de, e);
        }
        break;
      }
    }
    std::sort(r.pairs_.begin(), r.pairs_.end());
    r.pairs_.erase(std::unique(r.pairs_.begin(), r.pairs_.end()), r.pairs_.end());
    for (auto [de, ae] : r.pairs_) {
      if (de < 0 || de >= gd.num_edges() || ae < 0 || ae >= ga.num_edges())
        throw UnknownEdge("interdiction pair references unknown edge");
    }
    r.forward_.assign(gd.num_edges(), {});
    r.reverse_.assign(ga.num_edges(), {});
    for (auto [de, ae] : r.pairs_) {
      r.forward_[de].push_back(ae);
      r.reverse_[ae].push_back(de);
    }
    return r;
  }

  InterdictionMode declared_mode() const { return mode_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  // Attacker edges catchable by a defender edge, sorted.
  const std::vector<int>& attacker_edges_for(int defender_edge) const {
    return forward_[defender_edge];
  }
  // Defender edges that catch an attacker edge, sorted.
  const std::vector<int>& defender_edges_for(int attacker_edge) const {
    return reverse_[attacker_edge];
  }
  int num_defender_edges() const { return static_cast<int>(forward_.size()); }
  int num_attacker_edges() const { return static_cast<int>(reverse_.size()); }

 private:
  InterdictionMode mode_ = InterdictionMode::Explicit;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<std::vector<int>> forward_;
  std::vector<std::vector<int>> reverse_;
};

// Sparse edge-pair payoff table for linear utilities; absent pairs are 0.
struct LinPayoff {
  std::vector<std::tuple<int, int, double>> entries;  // (e_d, e_a, value)
};

// The full two-player zero-sum game: both layered graphs, target values on
// the attacker's terminal layer, the interdiction relation, and the utility
// mode. Only the attacker utility u is stored; the defender's is -u.
// Immutable and shareable after construction.
class GameInstance {
 public:
  GameInstance(LayeredGraph gd, LayeredGraph ga,
               std::map<int, double> targets, InterdictionRelation relation,
               UtilityKind kind, LinPayoff lin = {})
      : gd_(std::move(gd)),
        ga_(std::move(ga)),
        relation_(std::move(relation)),
        kind_(kind) {
    if (gd_.num_layers() != ga_.num_layers())
      throw Error("GameInstance: player graphs disagree on layer count");
    if (relation_.num_defender_edges() != gd_.num_edges() ||
        relation_.num_attacker_edges() != ga_.num_edges())
      throw Error("GameInstance: interdiction relation built for different graphs");
    targets_.assign(ga_.num_vertices(), 0.0);
    for (auto [v, val] : targets) {
      if (v < 0 || v >= ga_.num_vertices() || !ga_.is_terminal(v))
        throw Error("GameInstance: target on non-terminal vertex " + std::to_string(v));
      targets_[v] = val;
    }
    if (kind_ == UtilityKind::Lin) {
      lin_by_defender_.assign(gd_.num_edges(), {});
      lin_by_attacker_.assign(ga_.num_edges(), {});
      for (auto [de, ae, q] : lin.entries) {
        if (de < 0 || de >= gd_.num_edges() || ae < 0 || ae >= ga_.num_edges())
          throw UnknownEdge("LIN payoff references unknown edge");
        lin_by_defender_[de].emplace_back(ae, q);
        lin_by_attacker_[ae].emplace_back(de, q);
      }
    }
  }

  const LayeredGraph& defender_graph() const { return gd_; }
  const LayeredGraph& attacker_graph() const { return ga_; }
  const InterdictionRelation& interdiction() const { return relation_; }
  UtilityKind utility_kind() const { return kind_; }

  double target_value(int attacker_terminal) const { return targets_[attacker_terminal]; }
  const std::vector<double>& target_values() const { return targets_; }

  // Sparse LIN rows: (attacker edge, Q) per defender edge, and the transpose.
  const std::vector<std::pair<int, double>>& lin_row(int defender_edge) const {
    return lin_by_defender_[defender_edge];
  }
  const std::vector<std::pair<int, double>>& lin_col(int attacker_edge) const {
    return lin_by_attacker_[attacker_edge];
  }

  bool interdicts(int defender_edge, int attacker_edge) const {
    if (defender_edge < 0 || defender_edge >= gd_.num_edges())
      throw UnknownEdge("interdicts: bad defender edge " + std::to_string(defender_edge));
    if (attacker_edge < 0 || attacker_edge >= ga_.num_edges())
      throw UnknownEdge("interdicts: bad attacker edge " + std::to_string(attacker_edge));
    const auto& row = relation_.attacker_edges_for(defender_edge);
    return std::binary_search(row.begin(), row.end(), attacker_edge);
  }

  double u_lin(const Path& pd, const Path& pa) const {
    require_kind(UtilityKind::Lin, "u_lin");
    return u_lin_stamped(pd, stamp(pa));
  }

  double u_bin(const Path& pd, const Path& pa) const {
    require_kind(UtilityKind::Bin, "u_bin");
    return u_bin_stamped(pd, pa, stamp(pa));
  }

  double utility(const Path& pd, const Path& pa) const {
    return kind_ == UtilityKind::Lin ? u_lin(pd, pa) : u_bin(pd, pa);
  }

  // E_{pd~xd, pa~xa} u(pd, pa).
  double expected_utility(const MixedStrategy& xd, const MixedStrategy& xa) const {
    xd.check_valid();
    xa.check_valid();
    double total = 0.0;
    for (std::size_t j = 0; j < xa.support.size(); ++j) {
      if (xa.probs[j] == 0.0) continue;
      auto mark = stamp(xa.support[j]);
      for (std::size_t i = 0; i < xd.support.size(); ++i) {
        if (xd.probs[i] == 0.0) continue;
        const double u = kind_ == UtilityKind::Lin
                             ? u_lin_stamped(xd.support[i], mark)
                             : u_bin_stamped(xd.support[i], xa.support[j], mark);
        total += xd.probs[i] * xa.probs[j] * u;
      }
    }
    return total;
  }

  // u(pd, xa): one defender path against an attacker mixture.
  double utility_vs_attacker_mixture(const Path& pd, const MixedStrategy& xa) const {
    double total = 0.0;
    for (std::size_t j = 0; j < xa.support.size(); ++j)
      total += xa.probs[j] * utility(pd, xa.support[j]);
    return total;
  }

  double utility_vs_defender_mixture(const MixedStrategy& xd, const Path& pa) const {
    double total = 0.0;
    auto mark = stamp(pa);
    for (std::size_t i = 0; i < xd.support.size(); ++i) {
      const double u = kind_ == UtilityKind::Lin ? u_lin_stamped(xd.support[i], mark)
                                                 : u_bin_stamped(xd.support[i], pa, mark);
      total += xd.probs[i] * u;
    }
    return total;
  }

  // Full |P_d| x |P_a| payoff table in enumerate_paths order. Guarded by a
  // cap on the path-pair product since either factor can be astronomical.
  std::vector<std::vector<double>> payoff_matrix(std::uint64_t cap) const {
    const BigInt pairs = count_paths(gd_) * count_paths(ga_);
    if (pairs > cap)
      throw CapExceeded("payoff_matrix: " + pairs.str() + " path pairs exceed cap " +
                        std::to_string(cap));
    const auto rows = enumerate_paths(gd_, cap);
    const auto cols = enumerate_paths(ga_, cap);
    std::vector<std::vector<double>> m(rows.size(), std::vector<double>(cols.size(), 0.0));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      auto mark = stamp(cols[j]);
      for (std::size_t i = 0; i < rows.size(); ++i)
        m[i][j] = kind_ == UtilityKind::Lin ? u_lin_stamped(rows[i], mark)
                                            : u_bin_stamped(rows[i], cols[j], mark);
    }
    return m;
  }

 private:
  void require_kind(UtilityKind k, const char* op) const {
    if (kind_ != k)
      throw ModeMismatch(std::string(op) + ": game has the other utility mode");
  }

  // Membership mask over attacker edges for one attacker path.
  std::vector<char> stamp(const Path& pa) const {
    std::vector<char> mark(ga_.num_edges(), 0);
    for (int e : pa.edges) mark[e] = 1;
    return mark;
  }

  double u_lin_stamped(const Path& pd, const std::vector<char>& mark) const {
    double sum = 0.0;
    for (int de : pd.edges)
      for (auto [ae, q] : lin_by_defender_[de])
        if (mark[ae]) sum += q;
    return sum;
  }

  double u_bin_stamped(const Path& pd, const Path& pa, const std::vector<char>& mark) const {
    for (int de : pd.edges)
      for (int ae : relation_.attacker_edges_for(de))
        if (mark[ae]) return 0.0;
    return targets_[ga_.edge(pa.edges.back()).head];
  }

  LayeredGraph gd_;
  LayeredGraph ga_;
  InterdictionRelation relation_;
  UtilityKind kind_;
  std::vector<double> targets_;
  std::vector<std::vector<std::pair<int, double>>> lin_by_defender_;
  std::vector<std::vector<std::pair<int, double>>> lin_by_attacker_;
};

// The canonical linear payoff Q = -R: a unit penalty per interdiction.
inline LinPayoff lin_from_interdiction(const InterdictionRelation& r) {
  LinPayoff q;
  q.entries.reserve(r.pairs().size());
  for (auto [de, ae] : r.pairs()) q.entries.emplace_back(de, ae, -1.0);
  return q;
}

}  // namespace lgs
