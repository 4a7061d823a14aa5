#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphlearn/errors.hpp"

namespace graphlearn {

/// Absolute tolerance for shortest-path distance comparisons. Integral
/// weights compare exactly; fractional weights within this slack.
inline constexpr double kDistTol = 1e-9;

struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

/// A likelihood assignment over the vertices of a feedback graph. Entries
/// are non-negative with at least one strictly positive.
using Likelihood = std::vector<double>;

inline double likelihood_total(const Likelihood& like) {
    double total = 0.0;
    for (double x : like) total += x;
    return total;
}

inline void normalize_likelihood(Likelihood& like) {
    const double total = likelihood_total(like);
    if (total > 0.0) {
        for (double& x : like) x /= total;
    }
}

// The concept-class graph. Queries are vertices; a correct answer to a wrong
// query is a neighbor on a shortest path toward the target. Immutable after
// construction, so it can be shared freely across concurrent trials.
//
// Construction runs Dijkstra from every source (all weights are positive) and
// caches the full distance matrix: O(n (m + n log n)) time, O(n^2) space,
// which is fine at the few-thousand-vertex scale this library targets.
class FeedbackGraph {
public:
    FeedbackGraph(int vertex_count, const std::vector<Edge>& edges, bool directed);

    int vertex_count() const { return n_; }
    bool directed() const { return directed_; }
    const std::vector<Edge>& edges() const { return edges_; }

    double dist(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }

    /// Neighbors a feedback answer may come from: out-neighbors for digraphs.
    const std::vector<int>& neighbors(int v) const { return out_ids_[static_cast<std::size_t>(v)]; }

    /// (neighbor, edge weight) pairs, ascending by neighbor id.
    const std::vector<std::pair<int, double>>& adjacency(int v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }

    bool has_neighbor(int q, int z) const {
        const auto& ns = neighbors(q);
        return std::find(ns.begin(), ns.end(), z) != ns.end();
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// Max degree (out-degree for digraphs).
    int max_degree() const;

    double diameter() const;

    /// Sum of distances from v to every vertex (the 1-median objective with
    /// uniform likelihood).
    double distance_sum(int v) const;

private:
    void check_edges() const;
    void run_dijkstra(int source);

    int n_;
    bool directed_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_ids_;                       // neighbor ids, ascending
    std::vector<std::vector<std::pair<int, double>>> adjacency_;  // (neighbor, weight)
    std::vector<double> dist_;                                    // row-major n*n
};

inline FeedbackGraph::FeedbackGraph(int vertex_count, const std::vector<Edge>& edges,
                                    bool directed)
    : n_(vertex_count), directed_(directed), edges_(edges) {
    if (n_ < 1) throw InvalidEdgeError("vertex_count must be >= 1");
    check_edges();
    adjacency_.assign(static_cast<std::size_t>(n_), {});
    for (const Edge& e : edges_) {
        adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, e.w});
        if (!directed_) adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, e.w});
    }
    out_ids_.assign(static_cast<std::size_t>(n_), {});
    for (int v = 0; v < n_; ++v) {
        auto& adj = adjacency_[static_cast<std::size_t>(v)];
        std::sort(adj.begin(), adj.end());
        for (const auto& [to, w] : adj) out_ids_[static_cast<std::size_t>(v)].push_back(to);
    }
    dist_.assign(static_cast<std::size_t>(n_) * n_, std::numeric_limits<double>::infinity());
    for (int s = 0; s < n_; ++s) run_dijkstra(s);
    for (double d : dist_) {
        if (!std::isfinite(d)) {
            throw DisconnectedGraphError(
                directed_ ? "graph is not strongly connected" : "graph is not connected");
        }
    }
}

inline void FeedbackGraph::check_edges() const {
    std::set<std::pair<int, int>> seen;
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
            throw InvalidEdgeError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                                   std::to_string(e.v) + ")");
        }
        if (e.u == e.v) throw InvalidEdgeError("self-loop at vertex " + std::to_string(e.u));
        if (!(e.w > 0.0) || !std::isfinite(e.w)) {
            throw InvalidEdgeError("edge weight must be positive and finite");
        }
        const std::pair<int, int> key =
            directed_ ? std::pair{e.u, e.v} : std::pair{std::min(e.u, e.v), std::max(e.u, e.v)};
        if (!seen.insert(key).second) {
            throw InvalidEdgeError("duplicate edge (" + std::to_string(e.u) + "," +
                                   std::to_string(e.v) + ")");
        }
    }
}

inline void FeedbackGraph::run_dijkstra(int source) {
    using Item = std::pair<double, int>;  // (dist, vertex)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    double* row = &dist_[static_cast<std::size_t>(source) * n_];
    std::vector<bool> done(static_cast<std::size_t>(n_), false);
    row[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(v)]) continue;
        done[static_cast<std::size_t>(v)] = true;
        for (const auto& [to, w] : adjacency_[static_cast<std::size_t>(v)]) {
            if (d + w < row[to]) {
                row[to] = d + w;
                heap.push({row[to], to});
            }
        }
    }
}

inline int FeedbackGraph::max_degree() const {
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

inline double FeedbackGraph::diameter() const {
    double best = 0.0;
    for (double d : dist_) best = std::max(best, d);
    return best;
}

inline double FeedbackGraph::distance_sum(int v) const {
    double total = 0.0;
    for (int j = 0; j < n_; ++j) total += dist(v, j);
    return total;
}

inline FeedbackGraph build_graph(int vertex_count, const std::vector<Edge>& edges,
                                 bool directed = false) {
    return FeedbackGraph(vertex_count, edges, directed);
}

// The version space S(q,z): every vertex v such that z lies on a shortest
// weighted path from q to v, i.e. dist(q,z) + dist(z,v) = dist(q,v). The
// self-feedback z == q means "query was correct" and yields exactly {q}.
// Sorted ascending.
inline std::vector<int> version_space(const FeedbackGraph& g, int q, int z) {
    if (q < 0 || q >= g.vertex_count() || z < 0 || z >= g.vertex_count()) {
        throw NotNeighborError("version_space: vertex out of range");
    }
    if (z == q) return {q};
    if (!g.has_neighbor(q, z)) {
        throw NotNeighborError("version_space: " + std::to_string(z) + " is not a neighbor of " +
                               std::to_string(q));
    }
    std::vector<int> out;
    const double dqz = g.dist(q, z);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (std::abs(dqz + g.dist(z, v) - g.dist(q, v)) <= kDistTol) out.push_back(v);
    }
    return out;
}

inline bool in_version_space(const FeedbackGraph& g, int q, int z, int v) {
    if (z == q) return v == q;
    return std::abs(g.dist(q, z) + g.dist(z, v) - g.dist(q, v)) <= kDistTol;
}

/// Likelihood-weighted cost of querying u: sum over v of L(v) * dist(u,v).
inline double median_cost(const FeedbackGraph& g, const Likelihood& like, int u) {
    double cost = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) cost += like[static_cast<std::size_t>(v)] * g.dist(u, v);
    return cost;
}

// The weighted median: argmin_u sum_v L(v) * dist(u,v), ties broken by
// smallest vertex id. Querying it halves the consistent likelihood mass on
// undirected graphs.
inline int weighted_median(const FeedbackGraph& g, const Likelihood& like) {
    if (static_cast<int>(like.size()) != g.vertex_count()) {
        throw Error("weighted_median: likelihood size mismatch");
    }
    bool any_positive = false;
    for (double x : like) {
        if (x < 0.0 || !std::isfinite(x)) throw Error("weighted_median: invalid likelihood entry");
        if (x > 0.0) any_positive = true;
    }
    if (!any_positive) throw Error("weighted_median: likelihood is all zero");
    int best = 0;
    double best_cost = median_cost(g, like, 0);
    for (int u = 1; u < g.vertex_count(); ++u) {
        const double c = median_cost(g, like, u);
        if (c < best_cost - kDistTol) {
            best = u;
            best_cost = c;
        }
    }
    return best;
}

/// Vertices u != v with dist(v,u) <= m, sorted ascending.
inline std::vector<int> m_neighborhood(const FeedbackGraph& g, int v, double m) {
    if (m < 1) throw Error("m_neighborhood: m must be >= 1");
    std::vector<int> out;
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (u != v && g.dist(v, u) <= m + kDistTol) out.push_back(u);
    }
    return out;
}

inline double diameter(const FeedbackGraph& g) { return g.diameter(); }

// ---------------------------------------------------------------------------
// Edge-list file format.
//
//   # comment lines start with '#'
//   n <vertex_count> directed <0|1>
//   u v w
//   ...
//
// Whitespace-separated, 0-indexed vertex ids, decimal weights.

inline FeedbackGraph read_edge_list(std::istream& in) {
    std::string line;
    int n = -1;
    bool directed = false;
    bool have_header = false;
    std::vector<Edge> edges;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string key_n, key_d;
            int dflag = 0;
            if (!(fields >> key_n >> n >> key_d >> dflag) || key_n != "n" || key_d != "directed") {
                throw InvalidEdgeError("edge-list line " + std::to_string(line_no) +
                                       ": expected header 'n <count> directed <0|1>'");
            }
            directed = dflag != 0;
            have_header = true;
            continue;
        }
        Edge e;
        if (!(fields >> e.u >> e.v >> e.w)) {
            throw InvalidEdgeError("edge-list line " + std::to_string(line_no) +
                                   ": expected 'u v w'");
        }
        edges.push_back(e);
    }
    if (!have_header) throw InvalidEdgeError("edge-list: missing header line");
    return FeedbackGraph(n, edges, directed);
}

inline FeedbackGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const FeedbackGraph& g) {
    out << "n " << g.vertex_count() << " directed " << (g.directed() ? 1 : 0) << "\n";
    for (const Edge& e : g.edges()) out << e.u << " " << e.v << " " << e.w << "\n";
}

// ---------------------------------------------------------------------------
// Stock graph families used throughout the experiments.

inline FeedbackGraph make_path(int n, double w = 1.0) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
    return FeedbackGraph(n, edges, false);
}

inline FeedbackGraph make_cycle(int n, double w = 1.0) {
    if (n < 3) throw InvalidEdgeError("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
    return FeedbackGraph(n, edges, false);
}

inline FeedbackGraph make_clique(int n, double w = 1.0) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, w});
    return FeedbackGraph(n, edges, false);
}

/// Star with center 0 and vertices 1..leaves.
inline FeedbackGraph make_star(int leaves, double w = 1.0) {
    if (leaves < 1) throw InvalidEdgeError("star needs at least 1 leaf");
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, w});
    return FeedbackGraph(leaves + 1, edges, false);
}

// Center 0 joined to `branches` disjoint paths of d/2 vertices each, so the
// graph has diameter d (d even, branches >= 2). Branch b occupies vertices
// 1 + b*(d/2) ... (b+1)*(d/2), nearest-to-center first.
inline FeedbackGraph make_quasi_star(int branches, int d, double w = 1.0) {
    if (d < 4 || d % 2 != 0) throw InvalidEdgeError("quasi-star diameter must be even and >= 4");
    if (branches < 2) throw InvalidEdgeError("quasi-star needs at least 2 branches");
    const int len = d / 2;
    std::vector<Edge> edges;
    for (int b = 0; b < branches; ++b) {
        const int base = 1 + b * len;
        edges.push_back({0, base, w});
        for (int i = 0; i + 1 < len; ++i) edges.push_back({base + i, base + i + 1, w});
    }
    return FeedbackGraph(1 + branches * len, edges, false);
}

}  // namespace graphlearn
