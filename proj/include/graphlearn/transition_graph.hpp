#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "graphlearn/errors.hpp"
#include "graphlearn/feedback_graph.hpp"

namespace graphlearn {

// Size guards for constructed transition graphs; builders fail fast with
// TooLargeError instead of exhausting memory.
inline constexpr std::int64_t kMaxDupVertices = 10'000'000;
inline constexpr std::int64_t kMaxArcs = 100'000'000;

// The evolution graph: a directed graph over duplicated vertices, each of
// which projects onto a base vertex of the feedback graph. Rows are
// stochastic: a vertex with out-arcs keeps mass 1-b on its self-loop and
// splits b uniformly over its non-self arcs; a vertex with no out-arcs keeps
// the full mass. Immutable after construction.
class TransitionGraph {
public:
    TransitionGraph(int base_count, std::vector<int> base_of, std::vector<int> arc_offsets,
                    std::vector<int> arc_targets, double move_prob)
        : base_count_(base_count),
          base_of_(std::move(base_of)),
          arc_offsets_(std::move(arc_offsets)),
          arc_targets_(std::move(arc_targets)),
          move_prob_(move_prob) {
        if (move_prob_ < 0.0 || move_prob_ > 1.0) throw Error("move probability must be in [0,1]");
        max_out_degree_ = 0;
        for (int u = 0; u < dup_count(); ++u) {
            max_out_degree_ = std::max(max_out_degree_, out_degree(u));
        }
    }

    int dup_count() const { return static_cast<int>(base_of_.size()); }
    int base_count() const { return base_count_; }
    int base_of(int u) const { return base_of_[static_cast<std::size_t>(u)]; }
    double move_prob() const { return move_prob_; }

    /// Max out-degree over duplicated vertices, self-loops excluded.
    int max_out_degree() const { return max_out_degree_; }

    int out_degree(int u) const {
        return arc_offsets_[static_cast<std::size_t>(u) + 1] - arc_offsets_[static_cast<std::size_t>(u)];
    }

    std::span<const int> out_arcs(int u) const {
        const auto begin = static_cast<std::size_t>(arc_offsets_[static_cast<std::size_t>(u)]);
        const auto end = static_cast<std::size_t>(arc_offsets_[static_cast<std::size_t>(u) + 1]);
        return {arc_targets_.data() + begin, end - begin};
    }

    double self_probability(int u) const { return out_degree(u) == 0 ? 1.0 : 1.0 - move_prob_; }

    /// Probability of each non-self arc out of u (uniform split of b).
    double arc_probability(int u) const {
        const int deg = out_degree(u);
        return deg == 0 ? 0.0 : move_prob_ / deg;
    }

    /// Lower bound b/max_out_degree on non-self arc probabilities at vertices
    /// of max degree.
    double pi_out() const {
        return max_out_degree_ == 0 ? 0.0 : move_prob_ / max_out_degree_;
    }

private:
    int base_count_;
    std::vector<int> base_of_;
    std::vector<int> arc_offsets_;  // CSR offsets, size dup_count+1
    std::vector<int> arc_targets_;
    double move_prob_;
    int max_out_degree_;
};

namespace detail {

class ArcBuilder {
public:
    explicit ArcBuilder(int dup_count) { offsets_.reserve(static_cast<std::size_t>(dup_count) + 1); }

    // Vertices must be finalized in ascending id order.
    void begin_vertex() { offsets_.push_back(static_cast<int>(targets_.size())); }

    void add_arc(int to) {
        if (static_cast<std::int64_t>(targets_.size()) >= kMaxArcs) {
            throw TooLargeError("transition graph exceeds the arc guard");
        }
        targets_.push_back(to);
    }

    // (offsets, targets); the builder is spent afterwards
    std::pair<std::vector<int>, std::vector<int>> finish() {
        offsets_.push_back(static_cast<int>(targets_.size()));
        return {std::move(offsets_), std::move(targets_)};
    }

private:
    std::vector<int> offsets_;
    std::vector<int> targets_;
};

inline TransitionGraph build_from(int base_count, std::vector<int> base_of, ArcBuilder& arcs,
                                  double move_prob) {
    auto [offsets, targets] = arcs.finish();
    return TransitionGraph(base_count, std::move(base_of), std::move(offsets), std::move(targets),
                           move_prob);
}

inline void check_move_prob(double b) {
    if (b < 0.0 || b > 1.0) throw Error("move probability must be in [0,1]");
}

}  // namespace detail

/// Drifting model: the target moves along the edges of the feedback graph
/// itself, so the transition graph mirrors G with uniform arc probabilities.
inline TransitionGraph drifting_transition(const FeedbackGraph& g, double b) {
    detail::check_move_prob(b);
    const int n = g.vertex_count();
    std::vector<int> base_of(static_cast<std::size_t>(n));
    detail::ArcBuilder arcs(n);
    for (int v = 0; v < n; ++v) {
        base_of[static_cast<std::size_t>(v)] = v;
        arcs.begin_vertex();
        for (int u : g.neighbors(v)) arcs.add_arc(u);
    }
    return detail::build_from(n, std::move(base_of), arcs, b);
}

// Shifting model: the target lives inside an unknown k-subset of vertices.
// One k-clique component per k-subset, C(n,k) components in lexicographic
// subset order, members in ascending base id.
inline TransitionGraph shifting_transition(int n, int k, double b) {
    detail::check_move_prob(b);
    if (k < 1 || k > n) throw Error("shifting requires 1 <= k <= n");
    double dup_estimate = static_cast<double>(k);
    for (int i = 1; i <= k; ++i) {
        dup_estimate *= static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    if (dup_estimate > static_cast<double>(kMaxDupVertices)) {
        throw TooLargeError("shifting transition graph would have ~" +
                            std::to_string(dup_estimate) + " duplicated vertices");
    }

    std::vector<int> base_of;
    detail::ArcBuilder arcs(static_cast<int>(dup_estimate));
    std::vector<int> subset(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i;
    while (true) {
        const int first_dup = static_cast<int>(base_of.size());
        if (static_cast<std::int64_t>(base_of.size()) + k > kMaxDupVertices) {
            throw TooLargeError("shifting transition graph exceeds the vertex guard");
        }
        for (int i = 0; i < k; ++i) {
            base_of.push_back(subset[static_cast<std::size_t>(i)]);
            arcs.begin_vertex();
            for (int j = 0; j < k; ++j) {
                if (j != i) arcs.add_arc(first_dup + j);
            }
        }
        // next k-subset in lexicographic order
        int pos = k - 1;
        while (pos >= 0 && subset[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
        if (pos < 0) break;
        ++subset[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i) {
            subset[static_cast<std::size_t>(i)] = subset[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    return detail::build_from(n, std::move(base_of), arcs, b);
}

/// One k-clique component over an explicit vertex subset (the shifting
/// construction restricted to a single known subset). Used e.g. to confine a
/// star graph's target to its leaves.
inline TransitionGraph subset_clique_transition(int n, std::vector<int> subset, double b) {
    detail::check_move_prob(b);
    std::sort(subset.begin(), subset.end());
    const int k = static_cast<int>(subset.size());
    if (k < 1) throw Error("subset must be non-empty");
    for (int v : subset) {
        if (v < 0 || v >= n) throw Error("subset vertex out of range");
    }
    detail::ArcBuilder arcs(k);
    for (int i = 0; i < k; ++i) {
        arcs.begin_vertex();
        for (int j = 0; j < k; ++j) {
            if (j != i) arcs.add_arc(j);
        }
    }
    return detail::build_from(n, std::move(subset), arcs, b);
}

namespace detail {

// Enumerate every shortest s->t path (as a vertex sequence) via DFS over the
// shortest-path DAG. `work` guards against exponential blowups.
template <typename Fn>
void for_each_shortest_path(const FeedbackGraph& g, int s, int t, std::vector<int>& path,
                            std::int64_t& work, Fn&& fn) {
    if (++work > 50'000'000) throw TooLargeError("shortest-path enumeration exceeds the work guard");
    const int u = path.back();
    if (u == t) {
        fn(path);
        return;
    }
    for (const auto& [v, w] : g.adjacency(u)) {
        // the edge must extend a shortest prefix and still reach t tightly
        const bool on_dag = std::abs(g.dist(s, u) + w - g.dist(s, v)) <= kDistTol;
        if (on_dag && std::abs(g.dist(s, v) + g.dist(v, t) - g.dist(s, t)) <= kDistTol) {
            path.push_back(v);
            for_each_shortest_path(g, s, t, path, work, fn);
            path.pop_back();
        }
    }
}

}  // namespace detail

// Shortest-path model: the target visits at most `budget` waypoints of a
// single shortest path, in traversal order. One directed path component per
// distinct waypoint set; a set appearing on several shortest paths is kept
// once with the ordering of its first occurrence (pairs (s,t) scanned in
// ascending order). Components are id-ordered lexicographically by their
// base-vertex set.
//
// `move_prob` is the kernel's per-round move mass; the model itself is
// driven by the move budget, so it defaults to 0 (static kernel) and the
// experiment harness passes B/R.
inline TransitionGraph shortest_path_transition(const FeedbackGraph& g, int budget,
                                                double move_prob = 0.0) {
    detail::check_move_prob(move_prob);
    if (budget < 1) throw Error("shortest-path budget must be >= 1");
    const int n = g.vertex_count();
    std::map<std::vector<int>, std::vector<int>> components;  // sorted set -> ordered sequence
    std::int64_t dup_total = 0;
    std::int64_t work = 0;
    std::vector<int> path;
    std::vector<int> subset;
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            path.assign(1, s);
            detail::for_each_shortest_path(g, s, t, path, work, [&](const std::vector<int>& p) {
                const int len = static_cast<int>(p.size());
                // every subsequence of p with at most `budget` vertices
                const int take = std::min(budget, len);
                subset.clear();
                auto recurse = [&](auto&& self, int start) -> void {
                    if (!subset.empty()) {
                        std::vector<int> key = subset;
                        std::sort(key.begin(), key.end());
                        auto [it, inserted] = components.emplace(std::move(key), subset);
                        if (inserted) {
                            dup_total += static_cast<std::int64_t>(subset.size());
                            if (dup_total > kMaxDupVertices) {
                                throw TooLargeError(
                                    "shortest-path transition graph exceeds the vertex guard");
                            }
                        }
                    }
                    if (static_cast<int>(subset.size()) == take) return;
                    for (int i = start; i < len; ++i) {
                        subset.push_back(p[static_cast<std::size_t>(i)]);
                        self(self, i + 1);
                        subset.pop_back();
                    }
                    if (++work > 50'000'000) {
                        throw TooLargeError("shortest-path subset enumeration exceeds the work guard");
                    }
                };
                recurse(recurse, 0);
            });
        }
    }

    std::vector<int> base_of;
    base_of.reserve(static_cast<std::size_t>(dup_total));
    detail::ArcBuilder arcs(static_cast<int>(dup_total));
    for (const auto& [key, sequence] : components) {
        const int first_dup = static_cast<int>(base_of.size());
        const int len = static_cast<int>(sequence.size());
        for (int i = 0; i < len; ++i) {
            base_of.push_back(sequence[static_cast<std::size_t>(i)]);
            arcs.begin_vertex();
            if (i + 1 < len) arcs.add_arc(first_dup + i + 1);
        }
    }
    return detail::build_from(n, std::move(base_of), arcs, move_prob);
}

/// m-neighborhood model: an arc from every vertex to everything within
/// distance m. m=1 on a unit-weight graph coincides with drifting.
inline TransitionGraph m_neighborhood_transition(const FeedbackGraph& g, double m, double b) {
    detail::check_move_prob(b);
    const int n = g.vertex_count();
    std::vector<int> base_of(static_cast<std::size_t>(n));
    detail::ArcBuilder arcs(n);
    for (int v = 0; v < n; ++v) {
        base_of[static_cast<std::size_t>(v)] = v;
        arcs.begin_vertex();
        for (int u : m_neighborhood(g, v, m)) arcs.add_arc(u);
    }
    return detail::build_from(n, std::move(base_of), arcs, b);
}

/// Complete model: no information about target evolution; arcs between all
/// pairs.
inline TransitionGraph complete_transition(int n, double b) {
    detail::check_move_prob(b);
    if (n < 1) throw Error("complete transition needs n >= 1");
    if (static_cast<std::int64_t>(n) * (n - 1) > kMaxArcs) {
        throw TooLargeError("complete transition graph exceeds the arc guard");
    }
    std::vector<int> base_of(static_cast<std::size_t>(n));
    detail::ArcBuilder arcs(n);
    for (int v = 0; v < n; ++v) {
        base_of[static_cast<std::size_t>(v)] = v;
        arcs.begin_vertex();
        for (int u = 0; u < n; ++u) {
            if (u != v) arcs.add_arc(u);
        }
    }
    return detail::build_from(n, std::move(base_of), arcs, b);
}

/// Inspection export: edge-list-like rows with arc probabilities and the
/// base projection of the source vertex.
inline void write_transition(std::ostream& out, const TransitionGraph& tg) {
    out << "n " << tg.dup_count() << " directed 1\n";
    out << "# u v prob base_of_u (self-loops implicit: mass " << (1.0 - tg.move_prob())
        << " at vertices with out-arcs, 1 otherwise)\n";
    for (int u = 0; u < tg.dup_count(); ++u) {
        for (int v : tg.out_arcs(u)) {
            out << u << " " << v << " " << tg.arc_probability(u) << " " << tg.base_of(u) << "\n";
        }
    }
}

}  // namespace graphlearn
