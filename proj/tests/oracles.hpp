#pragma once

// Test-only brute-force oracles. These deliberately avoid the library's
// computation paths: distances come from Floyd-Warshall instead of Dijkstra,
// version-space membership from explicit enumeration of shortest paths
// instead of the distance-sum identity, and chain statistics from Monte
// Carlo simulation instead of linear solves.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "graphlearn/feedback_graph.hpp"
#include "graphlearn/markov_chain.hpp"
#include "graphlearn/rng.hpp"

namespace oracles {

constexpr double kTol = 1e-9;

inline std::vector<std::vector<double>> floyd_warshall(int n,
                                                       const std::vector<graphlearn::Edge>& edges,
                                                       bool directed) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n), inf));
    for (int v = 0; v < n; ++v) dist[v][v] = 0.0;
    for (const auto& e : edges) {
        dist[e.u][e.v] = std::min(dist[e.u][e.v], e.w);
        if (!directed) dist[e.v][e.u] = std::min(dist[e.v][e.u], e.w);
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
            }
        }
    }
    return dist;
}

struct WeightedAdjacency {
    std::vector<std::vector<std::pair<int, double>>> out;
};

inline WeightedAdjacency adjacency_of(int n, const std::vector<graphlearn::Edge>& edges,
                                      bool directed) {
    WeightedAdjacency adj;
    adj.out.assign(static_cast<std::size_t>(n), {});
    for (const auto& e : edges) {
        adj.out[e.u].push_back({e.v, e.w});
        if (!directed) adj.out[e.v].push_back({e.u, e.w});
    }
    return adj;
}

namespace detail {

inline bool dfs_contains(const WeightedAdjacency& adj, const std::vector<std::vector<double>>& dist,
                         int q, int z, int v, int u, double len, bool seen_z) {
    if (seen_z || u == z) seen_z = true;
    if (u == v) return seen_z && std::abs(len - dist[q][v]) <= kTol;
    for (const auto& [next, w] : adj.out[static_cast<std::size_t>(u)]) {
        // extend only along prefixes of shortest q->v paths
        if (std::abs(len + w - dist[q][next]) <= kTol &&
            std::abs(dist[q][next] + dist[next][v] - dist[q][v]) <= kTol) {
            if (dfs_contains(adj, dist, q, z, v, next, len + w, seen_z)) return true;
        }
    }
    return false;
}

}  // namespace detail

/// True when z lies on at least one shortest q->v path, decided by walking
/// every shortest path.
inline bool on_some_shortest_path(const WeightedAdjacency& adj,
                                  const std::vector<std::vector<double>>& dist, int q, int z,
                                  int v) {
    return detail::dfs_contains(adj, dist, q, z, v, q, 0.0, false);
}

/// Every shortest s->t path as a vertex sequence (small graphs only).
inline void enumerate_shortest_paths(const WeightedAdjacency& adj,
                                     const std::vector<std::vector<double>>& dist, int s, int t,
                                     std::vector<int>& path, double len,
                                     std::vector<std::vector<int>>& out) {
    const int u = path.back();
    if (u == t && std::abs(len - dist[s][t]) <= kTol) {
        out.push_back(path);
        return;
    }
    for (const auto& [next, w] : adj.out[static_cast<std::size_t>(u)]) {
        if (std::abs(len + w - dist[s][next]) <= kTol &&
            std::abs(dist[s][next] + dist[next][t] - dist[s][t]) <= kTol) {
            path.push_back(next);
            enumerate_shortest_paths(adj, dist, s, t, path, len + w, out);
            path.pop_back();
        }
    }
}

// Random connected undirected graph: a random spanning tree plus extra
// edges. fractional=true draws weights from (1,2) to exercise the distance
// tolerance; otherwise all weights are 1.
inline graphlearn::FeedbackGraph random_connected_graph(int n, int extra_edges, bool fractional,
                                                        graphlearn::Rng& rng) {
    std::vector<graphlearn::Edge> edges;
    auto weight = [&]() { return fractional ? 1.0 + rng.next_double() : 1.0; };
    for (int v = 1; v < n; ++v) edges.push_back({rng.next_index(v), v, weight()});
    auto has_edge = [&](int a, int b) {
        for (const auto& e : edges) {
            if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return true;
        }
        return false;
    };
    for (int i = 0; i < extra_edges; ++i) {
        const int a = rng.next_index(n);
        const int b = rng.next_index(n);
        if (a != b && !has_edge(a, b)) edges.push_back({a, b, weight()});
    }
    return graphlearn::FeedbackGraph(n, edges, false);
}

/// Random positive likelihood vector.
inline graphlearn::Likelihood random_likelihood(int n, graphlearn::Rng& rng) {
    graphlearn::Likelihood like(static_cast<std::size_t>(n));
    for (double& x : like) x = 0.05 + rng.next_double();
    return like;
}

// --- Markov chain Monte Carlo ----------------------------------------------

inline int chain_step(const graphlearn::MarkovChain& chain, int state, graphlearn::Rng& rng) {
    double u = rng.next_double();
    for (int j = 0; j < chain.size; ++j) {
        u -= chain.at(state, j);
        if (u < 0.0) return j;
    }
    return chain.size - 1;
}

inline long sample_hitting_time(const graphlearn::MarkovChain& chain, int from, int to,
                                graphlearn::Rng& rng) {
    long steps = 0;
    int state = from;
    while (state != to) {
        state = chain_step(chain, state, rng);
        ++steps;
        if (steps > 100'000'000L) break;  // runaway guard
    }
    return steps;
}

}  // namespace oracles
