#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "graphlearn/errors.hpp"

namespace graphlearn {

// A labeled row-stochastic matrix. States encode the learner's distance to
// the target, but the two analyses in this library disagree on direction, so
// `convention` records which end is "correct": chains built by clique_chain,
// star_chain and quasi_star_chain put the target at state 0; walk_chain puts
// it at state d.
struct MarkovChain {
    int size = 0;
    std::vector<double> p;  // row-major size*size
    std::string convention;
    std::vector<std::string> labels;

    double at(int i, int j) const { return p[static_cast<std::size_t>(i) * size + j]; }
    double& at(int i, int j) { return p[static_cast<std::size_t>(i) * size + j]; }

    double row_sum(int i) const {
        double total = 0.0;
        for (int j = 0; j < size; ++j) total += at(i, j);
        return total;
    }

    bool is_row_stochastic(double tol = 1e-12) const {
        for (int i = 0; i < size; ++i) {
            if (std::abs(row_sum(i) - 1.0) > tol) return false;
            for (int j = 0; j < size; ++j) {
                if (at(i, j) < -tol || at(i, j) > 1.0 + tol) return false;
            }
        }
        return true;
    }
};

namespace detail {

inline MarkovChain make_chain(int size, const std::string& convention) {
    MarkovChain chain;
    chain.size = size;
    chain.p.assign(static_cast<std::size_t>(size) * size, 0.0);
    chain.convention = convention;
    chain.labels.resize(static_cast<std::size_t>(size));
    return chain;
}

}  // namespace detail

/// Clique follow-the-feedback chain: both rows ((1-p)(1-b), p+b-pb).
inline MarkovChain clique_chain(double p, double b) {
    if (p < 0.0 || p >= 1.0 || b < 0.0 || b >= 1.0) throw Error("clique_chain needs p,b in [0,1)");
    MarkovChain chain = detail::make_chain(2, "state = learner distance to target; 0 is correct");
    for (int i = 0; i < 2; ++i) {
        chain.at(i, 0) = (1.0 - p) * (1.0 - b);
        chain.at(i, 1) = p + b - p * b;
    }
    chain.labels = {"distance 0", "distance 1"};
    return chain;
}

/// Star follow-the-feedback chain on states {0,1,2} = distance to the target.
inline MarkovChain star_chain(double p, double b) {
    if (p < 0.0 || p >= 1.0 || b < 0.0 || b >= 1.0) throw Error("star_chain needs p,b in [0,1)");
    MarkovChain chain = detail::make_chain(3, "state = learner distance to target; 0 is correct");
    chain.at(0, 0) = (1.0 - p) * (1.0 - b);
    chain.at(0, 1) = p;
    chain.at(0, 2) = (1.0 - p) * b;
    chain.at(1, 0) = (1.0 - p) * (1.0 - b);
    chain.at(1, 1) = 0.0;
    chain.at(1, 2) = p + b - p * b;
    chain.at(2, 0) = 0.0;
    chain.at(2, 1) = 1.0 - p;
    chain.at(2, 2) = p;
    chain.labels = {"distance 0", "distance 1", "distance 2"};
    return chain;
}

// Quasi-star chain on states {0..d}: one closer step with mass (1-p)(1-b),
// one further step with mass p(1-b), never exactly two closer or in place
// (except P_00 = (1-p)(1-b)); whatever mass remains is split uniformly over
// the columns the rules left unassigned (these are the target's jumps of
// distance >= 2). d=2 leaves row 1 with no free column, so the construction
// needs d >= 4.
inline MarkovChain quasi_star_chain(int d, double p, double b) {
    if (d < 4 || d % 2 != 0) {
        throw InvalidDiameterError("quasi_star_chain needs an even diameter d >= 4");
    }
    if (p < 0.0 || p >= 1.0 || b < 0.0 || b >= 1.0) throw Error("quasi_star_chain needs p,b in [0,1)");
    MarkovChain chain =
        detail::make_chain(d + 1, "state = learner distance to target; 0 is correct");
    const double kUnset = -1.0;
    for (double& x : chain.p) x = kUnset;
    for (int i = 0; i <= d; ++i) {
        double assigned = 0.0;
        int free_columns = 0;
        auto set = [&](int j, double value) {
            chain.at(i, j) = value;
            assigned += value;
        };
        if (i - 1 >= 0) set(i - 1, (1.0 - p) * (1.0 - b));
        if (i + 1 <= d) set(i + 1, p * (1.0 - b));
        if (i - 2 >= 0) set(i - 2, 0.0);
        if (i == 0) {
            set(0, (1.0 - p) * (1.0 - b));
        } else {
            set(i, 0.0);
        }
        for (int j = 0; j <= d; ++j) {
            if (chain.at(i, j) == kUnset) ++free_columns;
        }
        const double leftover = 1.0 - assigned;
        if (free_columns == 0) {
            if (std::abs(leftover) > 1e-12) {
                throw InvalidDiameterError("quasi-star row has leftover mass and no free column");
            }
            continue;
        }
        const double share = leftover / free_columns;
        for (int j = 0; j <= d; ++j) {
            if (chain.at(i, j) == kUnset) chain.at(i, j) = share;
        }
    }
    for (int i = 0; i <= d; ++i) chain.labels[static_cast<std::size_t>(i)] = "distance " + std::to_string(i);
    return chain;
}

/// Biased walk toward the target: forward (toward state d) with mass 1-p,
/// backward with mass p, self-loops closing the end rows.
inline MarkovChain walk_chain(int d, double p) {
    if (d < 1) throw Error("walk_chain needs d >= 1");
    if (p < 0.0 || p > 1.0) throw Error("walk_chain needs p in [0,1]");
    MarkovChain chain = detail::make_chain(d + 1, "state = d - distance to target; d is correct");
    for (int i = 0; i <= d; ++i) {
        if (i + 1 <= d) chain.at(i, i + 1) = 1.0 - p;
        if (i - 1 >= 0) chain.at(i, i - 1) = p;
    }
    chain.at(0, 0) = p;
    chain.at(d, d) = 1.0 - p;
    for (int i = 0; i <= d; ++i) {
        chain.labels[static_cast<std::size_t>(i)] = "distance " + std::to_string(d - i);
    }
    return chain;
}

namespace detail {

inline std::vector<std::vector<int>> support_adjacency(const MarkovChain& chain) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(chain.size));
    for (int i = 0; i < chain.size; ++i) {
        for (int j = 0; j < chain.size; ++j) {
            if (chain.at(i, j) > 0.0) adj[static_cast<std::size_t>(i)].push_back(j);
        }
    }
    return adj;
}

inline std::vector<bool> reachable_from(const std::vector<std::vector<int>>& adj, int start) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<int> stack{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                stack.push_back(u);
            }
        }
    }
    return seen;
}

// A chain has a unique stationary distribution iff exactly one communicating
// class is closed. Quadratic reachability is fine at desk scale.
inline int closed_class_count(const MarkovChain& chain) {
    const auto adj = support_adjacency(chain);
    std::vector<std::vector<bool>> reach;
    reach.reserve(static_cast<std::size_t>(chain.size));
    for (int i = 0; i < chain.size; ++i) reach.push_back(reachable_from(adj, i));
    std::vector<bool> counted(static_cast<std::size_t>(chain.size), false);
    int closed = 0;
    for (int i = 0; i < chain.size; ++i) {
        if (counted[static_cast<std::size_t>(i)]) continue;
        bool is_closed = true;
        for (int j = 0; j < chain.size; ++j) {
            if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                !reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
                is_closed = false;  // escapes its class
                break;
            }
        }
        if (!is_closed) continue;
        ++closed;
        // mark the whole class
        for (int j = 0; j < chain.size; ++j) {
            if (reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] &&
                reach[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
                counted[static_cast<std::size_t>(j)] = true;
            }
        }
    }
    return closed;
}

}  // namespace detail

// The unique stationary distribution. Direct least-squares solve of
// [P^T - I; 1^T] pi = [0; 1] for chains up to 1024 states; damped power
// iteration (tolerance 1e-12, at most 1e6 sweeps) beyond that. Throws
// ReducibleChainError when the stationary distribution is not unique.
inline std::vector<double> stationary(const MarkovChain& chain) {
    if (!chain.is_row_stochastic()) throw Error("stationary: matrix is not row-stochastic");
    if (detail::closed_class_count(chain) != 1) {
        throw ReducibleChainError("chain has no unique stationary distribution");
    }
    const int n = chain.size;
    std::vector<double> pi(static_cast<std::size_t>(n));
    if (n <= 1024) {
        Eigen::MatrixXd a(n + 1, n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                a(i, j) = chain.at(j, i) - (i == j ? 1.0 : 0.0);
            }
            a(n, j) = 1.0;
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
        rhs(n) = 1.0;
        Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs);
        for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = x(i);
    } else {
        // lazy chain (P+I)/2 kills periodicity without moving the fixed point
        std::vector<double> cur(static_cast<std::size_t>(n), 1.0 / n);
        std::vector<double> next(static_cast<std::size_t>(n));
        for (long iter = 0; iter < 1'000'000; ++iter) {
            std::fill(next.begin(), next.end(), 0.0);
            for (int i = 0; i < n; ++i) {
                const double mass = cur[static_cast<std::size_t>(i)];
                next[static_cast<std::size_t>(i)] += 0.5 * mass;
                for (int j = 0; j < n; ++j) next[static_cast<std::size_t>(j)] += 0.5 * mass * chain.at(i, j);
            }
            double delta = 0.0;
            for (int i = 0; i < n; ++i) {
                delta = std::max(delta, std::abs(next[static_cast<std::size_t>(i)] -
                                                 cur[static_cast<std::size_t>(i)]));
            }
            cur.swap(next);
            if (delta < 1e-12) break;
        }
        pi = cur;
    }
    double total = 0.0;
    for (double& x : pi) {
        if (x < 0.0 && x > -1e-10) x = 0.0;
        total += x;
    }
    for (double& x : pi) x /= total;
    // residual check against the documented tolerance
    double residual = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += pi[static_cast<std::size_t>(i)] * chain.at(i, j);
        residual = std::max(residual, std::abs(col - pi[static_cast<std::size_t>(j)]));
    }
    if (residual >= 1e-10) throw Error("stationary solve residual exceeds 1e-10");
    return pi;
}

// Expected first-passage time from `from` to `to`, by linear solve of
// h_i = 1 + sum_j P_ij h_j over the states that can reach `to`. Returns +inf
// when the walk can escape to states that never reach `to`.
inline double hitting_time(const MarkovChain& chain, int from, int to) {
    const int n = chain.size;
    if (from < 0 || from >= n || to < 0 || to >= n) throw Error("hitting_time: state out of range");
    if (from == to) return 0.0;
    const auto adj = detail::support_adjacency(chain);
    // states that can reach `to`
    std::vector<std::vector<int>> radj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int j : adj[static_cast<std::size_t>(i)]) radj[static_cast<std::size_t>(j)].push_back(i);
    }
    const std::vector<bool> can_reach = detail::reachable_from(radj, to);
    if (!can_reach[static_cast<std::size_t>(from)]) {
        throw UnreachableStateError("target state unreachable from start state");
    }
    for (int i = 0; i < n; ++i) {
        if (!can_reach[static_cast<std::size_t>(i)]) continue;
        if (i == to) continue;
        for (int j : adj[static_cast<std::size_t>(i)]) {
            if (!can_reach[static_cast<std::size_t>(j)]) {
                return std::numeric_limits<double>::infinity();  // positive escape probability
            }
        }
    }
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> states;
    for (int i = 0; i < n; ++i) {
        if (can_reach[static_cast<std::size_t>(i)] && i != to) {
            index[static_cast<std::size_t>(i)] = static_cast<int>(states.size());
            states.push_back(i);
        }
    }
    const int m = static_cast<int>(states.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            a(r, c) -= chain.at(states[static_cast<std::size_t>(r)], states[static_cast<std::size_t>(c)]);
        }
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(m);
    Eigen::VectorXd h = a.partialPivLu().solve(rhs);
    return h(index[static_cast<std::size_t>(from)]);
}

/// R(1 - pi_correct): the long-run expected mistake count over R rounds.
inline double expected_mistakes(const MarkovChain& chain, double rounds, int correct_state) {
    const auto pi = stationary(chain);
    return rounds * (1.0 - pi[static_cast<std::size_t>(correct_state)]);
}

/// CSV export, row-major with header "state,0,...,d".
inline void write_chain_csv(std::ostream& out, const MarkovChain& chain) {
    const auto saved = out.precision(12);
    out << "state";
    for (int j = 0; j < chain.size; ++j) out << "," << j;
    out << "\n";
    for (int i = 0; i < chain.size; ++i) {
        out << i;
        for (int j = 0; j < chain.size; ++j) out << "," << chain.at(i, j);
        out << "\n";
    }
    out.precision(saved);
}

}  // namespace graphlearn
