#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphlearn/errors.hpp"

namespace graphlearn {

// Closed-form mistake-bound calculators. All logarithms and entropies are
// base 2 (bits), applied consistently across every formula here.

/// Binary entropy in bits; H(0) = H(1) = 0 by continuity.
inline double entropy(double p) {
    if (p < 0.0 || p > 1.0) throw Error("entropy needs p in [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// The noise inflation factor 1/(1 - H(p)) multiplying every query bound.
inline double noise_factor(double p) {
    const double h = entropy(p);
    if (h >= 1.0 - 1e-15) {
        throw NoisePoorlyPosedError("1 - H(p) vanishes; bounds undefined at p = 1/2");
    }
    return 1.0 / (1.0 - h);
}

/// R * H(B/R) with the B = 0 / R = 0 limits pinned to 0.
inline double switching_entropy_term(double budget, double rounds) {
    if (rounds <= 0.0 || budget <= 0.0) return 0.0;
    return rounds * entropy(budget / rounds);
}

// A bound value together with its term breakdown: value = scale * sum of
// components. `inputs` echoes the parameters for reporting.
struct BoundReport {
    std::string name;
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::pair<std::string, double>> components;
    double scale = 1.0;
    double value = 0.0;

    double component_sum() const {
        double total = 0.0;
        for (const auto& [label, x] : components) total += x;
        return total;
    }

    /// Recomputes value from the breakdown; true when consistent to 1e-9.
    bool consistent() const {
        const double recomputed = scale * component_sum();
        return std::abs(recomputed - value) <= 1e-9 * std::max(1.0, std::abs(value));
    }
};

namespace detail {

inline BoundReport finish_report(BoundReport report) {
    report.value = report.scale * report.component_sum();
    return report;
}

}  // namespace detail

// Mistake bound of the likelihood-update learner on any transition graph:
// (log n' + B log D' + R H(B/R)) / (1 - H(p)).
inline BoundReport unified_bound(double dup_count, double max_out_degree, double budget,
                                 double rounds, double p) {
    if (dup_count < 1.0) throw Error("unified_bound needs n' >= 1");
    if (max_out_degree < 1.0) throw Error("unified_bound needs Delta' >= 1");
    if (budget < 0.0 || budget > rounds) throw Error("unified_bound needs 0 <= B <= R");
    BoundReport report;
    report.name = "unified";
    report.inputs = {{"nprime", dup_count},
                     {"delta_prime", max_out_degree},
                     {"B", budget},
                     {"R", rounds},
                     {"p", p}};
    report.components = {{"log2_nprime", std::log2(dup_count)},
                         {"B_log2_delta_prime", budget * std::log2(max_out_degree)},
                         {"R_H_B_over_R", switching_entropy_term(budget, rounds)}};
    report.scale = noise_factor(p);
    return detail::finish_report(report);
}

// The prior mass of the true target sequence under the unified model, in
// both printed forms. The exact form divides by C(R,B); the alternate form
// uses per-round probabilities and differs by the Stirling-style
// approximation of the binomial, so the gap is reported, not forced to 0.
struct SequencePrior {
    double log2_exact = 0.0;   // log2 of 1 / (n' Delta'^B C(R,B))
    double log2_approx = 0.0;  // log2 of (1/n') pi_out^B (1-b)^(R-B)
    double exact = 0.0;        // 0 when it underflows
    double approx = 0.0;
    double log2_gap = 0.0;  // log2_exact - log2_approx >= 0
};

inline SequencePrior sequence_prior(double dup_count, double max_out_degree, double budget,
                                    double rounds) {
    if (dup_count < 1.0) throw Error("sequence_prior needs n' >= 1");
    if (max_out_degree < 1.0) throw Error("sequence_prior needs Delta' >= 1");
    if (budget < 0.0 || budget > rounds) throw Error("sequence_prior needs 0 <= B <= R");
    constexpr double kLn2 = 0.6931471805599453;
    const double log2_binom =
        (std::lgamma(rounds + 1.0) - std::lgamma(budget + 1.0) - std::lgamma(rounds - budget + 1.0)) /
        kLn2;
    SequencePrior prior;
    prior.log2_exact = -(std::log2(dup_count) + budget * std::log2(max_out_degree) + log2_binom);
    prior.log2_approx = -(std::log2(dup_count) + budget * std::log2(max_out_degree) +
                          switching_entropy_term(budget, rounds));
    prior.exact = std::exp2(prior.log2_exact);
    prior.approx = std::exp2(prior.log2_approx);
    prior.log2_gap = prior.log2_exact - prior.log2_approx;
    return prior;
}

enum class ModelKind { kDrifting, kShifting, kShortestPath, kMNeighborhood, kComplete };

inline const char* to_string(ModelKind m) {
    switch (m) {
        case ModelKind::kDrifting: return "drifting";
        case ModelKind::kShifting: return "shifting";
        case ModelKind::kShortestPath: return "shortest_path";
        case ModelKind::kMNeighborhood: return "m_neighborhood";
        case ModelKind::kComplete: return "complete";
    }
    return "?";
}

struct ModelParams {
    std::optional<double> n;      // feedback graph size
    std::optional<double> delta;  // feedback graph max degree
    std::optional<double> k;      // shifting subset size
    std::optional<double> m;      // neighborhood radius
    std::optional<double> budget;
    std::optional<double> rounds;
    std::optional<double> p;
};

namespace detail {

inline double require_param(const std::optional<double>& field, const char* name) {
    if (!field.has_value()) throw MissingParamError(std::string("missing parameter: ") + name);
    return *field;
}

}  // namespace detail

// Per-model corollary bounds. These keep the printed constants (log k for
// shifting, (B+1) log n for complete) even where the constructed transition
// graphs have out-degree one less.
inline BoundReport model_bound(ModelKind model, const ModelParams& params) {
    const double budget = detail::require_param(params.budget, "B");
    const double rounds = detail::require_param(params.rounds, "R");
    const double p = detail::require_param(params.p, "p");
    if (budget < 0.0 || budget > rounds) throw Error("model_bound needs 0 <= B <= R");
    BoundReport report;
    report.name = to_string(model);
    report.inputs = {{"B", budget}, {"R", rounds}, {"p", p}};
    const double switching = switching_entropy_term(budget, rounds);
    switch (model) {
        case ModelKind::kDrifting: {
            const double n = detail::require_param(params.n, "n");
            const double delta = detail::require_param(params.delta, "delta");
            if (delta < 1.0) throw Error("drifting bound needs Delta >= 1");
            report.inputs.push_back({"n", n});
            report.inputs.push_back({"delta", delta});
            report.components = {{"log2_n", std::log2(n)},
                                 {"B_log2_delta", budget * std::log2(delta)},
                                 {"R_H_B_over_R", switching}};
            break;
        }
        case ModelKind::kShifting: {
            const double n = detail::require_param(params.n, "n");
            const double k = detail::require_param(params.k, "k");
            if (k < 1.0) throw Error("shifting bound needs k >= 1");
            report.inputs.push_back({"n", n});
            report.inputs.push_back({"k", k});
            report.components = {{"k_log2_n", k * std::log2(n)},
                                 {"B_plus_1_log2_k", (budget + 1.0) * std::log2(k)},
                                 {"R_H_B_over_R", switching}};
            break;
        }
        case ModelKind::kShortestPath: {
            const double n = detail::require_param(params.n, "n");
            if (budget < 1.0) throw Error("shortest-path bound needs B >= 1");
            report.inputs.push_back({"n", n});
            report.components = {{"B_log2_n", budget * std::log2(n)},
                                 {"B_plus_1_log2_B", (budget + 1.0) * std::log2(budget)},
                                 {"R_H_B_over_R", switching}};
            break;
        }
        case ModelKind::kMNeighborhood: {
            const double n = detail::require_param(params.n, "n");
            const double delta = detail::require_param(params.delta, "delta");
            const double m = detail::require_param(params.m, "m");
            if (delta < 1.0 || m < 1.0) throw Error("m-neighborhood bound needs Delta >= 1, m >= 1");
            report.inputs.push_back({"n", n});
            report.inputs.push_back({"delta", delta});
            report.inputs.push_back({"m", m});
            report.components = {{"log2_n", std::log2(n)},
                                 {"B_m_log2_delta", budget * m * std::log2(delta)},
                                 {"R_H_B_over_R", switching}};
            break;
        }
        case ModelKind::kComplete: {
            const double n = detail::require_param(params.n, "n");
            report.inputs.push_back({"n", n});
            report.components = {{"B_plus_1_log2_n", (budget + 1.0) * std::log2(n)},
                                 {"R_H_B_over_R", switching}};
            break;
        }
    }
    report.scale = noise_factor(p);
    return detail::finish_report(report);
}

// Main term of the matching query lower bound. Spelled out rather than
// delegated so the gap-closing identity against unified_bound is a check of
// two code paths.
inline double lower_bound_main_term(double n, double max_out_degree, double budget, double rounds,
                                    double p) {
    if (n < 1.0 || max_out_degree < 1.0) throw Error("lower_bound_main_term needs n, Delta' >= 1");
    if (budget < 0.0 || budget > rounds) throw Error("lower_bound_main_term needs 0 <= B <= R");
    double numerator = std::log2(n);
    numerator += budget * std::log2(max_out_degree);
    numerator += switching_entropy_term(budget, rounds);
    return numerator * noise_factor(p);
}

// --- Follow-the-feedback closed forms ---------------------------------------

/// Clique: B + p(R - B), exact in expectation.
inline double clique_bound(double rounds, double budget, double p) {
    if (budget < 0.0 || budget > rounds) throw Error("clique_bound needs 0 <= B <= R");
    return budget + p * (rounds - budget);
}

/// Star upper bound: 2B + p(R-B) + p^2(R-B).
inline double star_bound(double rounds, double budget, double p) {
    if (budget < 0.0 || budget > rounds) throw Error("star_bound needs 0 <= B <= R");
    return 2.0 * budget + p * (rounds - budget) + p * p * (rounds - budget);
}

/// Star exact expectation from the elimination of the x,y,z system.
inline double star_exact(double rounds, double budget, double p) {
    if (budget < 0.0 || budget > rounds) throw Error("star_exact needs 0 <= B <= R");
    if (rounds == 0.0) return 0.0;
    const double slack = budget + p * p * (rounds - budget);
    const double correction = slack * (1.0 - p) * (rounds - budget) / (slack + (1.0 - p) * rounds);
    return budget + p * (rounds - budget) + correction;
}

/// Diameter-d upper bound: (dB - pB/(1-2p) + pR) / (1-p).
inline double diameter_bound(double d, double rounds, double budget, double p) {
    if (p >= 0.5) throw InvalidNoiseError("diameter_bound needs p < 1/2");
    if (budget < 0.0 || budget > rounds) throw Error("diameter_bound needs 0 <= B <= R");
    return (d * budget - p * budget / (1.0 - 2.0 * p) + p * rounds) / (1.0 - p);
}

/// Upper bound on the biased walk's hitting time: d/(1-2p) - p/(1-2p)^2.
inline double hitting_bound(double d, double p) {
    if (p >= 0.5) throw InvalidNoiseError("hitting_bound needs p < 1/2");
    const double gap = 1.0 - 2.0 * p;
    return d / gap - p / (gap * gap);
}

/// Bound on the stationary fraction of rounds spent off the target: p/(1-p).
inline double t_off_bound(double p) {
    if (p < 0.0 || p >= 1.0) throw Error("t_off_bound needs p in [0,1)");
    return p / (1.0 - p);
}

}  // namespace graphlearn
