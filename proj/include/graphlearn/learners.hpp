#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphlearn/environment.hpp"
#include "graphlearn/errors.hpp"
#include "graphlearn/feedback_graph.hpp"
#include "graphlearn/rng.hpp"
#include "graphlearn/transition_graph.hpp"

namespace graphlearn {

// ---------------------------------------------------------------------------
// Likelihood-update learner: keep a likelihood per duplicated vertex, query
// the weighted median of the base aggregation, reweight by feedback
// consistency, push one step through the transition kernel.

struct LikelihoodState {
    std::vector<double> dup_likelihoods;  // over V', normalized
    int round = 1;
};

inline LikelihoodState mwu_init(const TransitionGraph& tg) {
    LikelihoodState state;
    state.dup_likelihoods.assign(static_cast<std::size_t>(tg.dup_count()),
                                 1.0 / static_cast<double>(tg.dup_count()));
    state.round = 1;
    return state;
}

/// Base-vertex aggregation: L(i) = sum of dup likelihoods over V'_i.
inline Likelihood aggregate_likelihood(const LikelihoodState& state, const TransitionGraph& tg) {
    Likelihood agg(static_cast<std::size_t>(tg.base_count()), 0.0);
    for (int u = 0; u < tg.dup_count(); ++u) {
        agg[static_cast<std::size_t>(tg.base_of(u))] += state.dup_likelihoods[static_cast<std::size_t>(u)];
    }
    return agg;
}

inline int mwu_query(const LikelihoodState& state, const FeedbackGraph& g,
                     const TransitionGraph& tg) {
    return weighted_median(g, aggregate_likelihood(state, tg));
}

// One round of the update: multiply each dup's likelihood by 1-p or p
// according to whether its base vertex is consistent with feedback z to
// query q, then apply the transition kernel (self-loops included) and
// renormalize. Renormalizing does not change future medians (the argmin is
// scale-invariant) and keeps long runs clear of underflow.
inline void mwu_update(LikelihoodState& state, const FeedbackGraph& g, const TransitionGraph& tg,
                       int q, int z, double p) {
    // p = 1/2 is allowed here: the reweight degenerates to a pure transition
    // step. Runs reject it upstream because learning needs p < 1/2.
    if (p < 0.0 || p > 0.5) throw InvalidNoiseError("learner noise rate must satisfy 0 <= p <= 1/2");
    const int dup_count = tg.dup_count();
    std::vector<double> reweighted(static_cast<std::size_t>(dup_count));
    std::vector<char> consistent(static_cast<std::size_t>(tg.base_count()));
    for (int i = 0; i < tg.base_count(); ++i) {
        consistent[static_cast<std::size_t>(i)] = in_version_space(g, q, z, i) ? 1 : 0;
    }
    for (int u = 0; u < dup_count; ++u) {
        const double weight = consistent[static_cast<std::size_t>(tg.base_of(u))] ? 1.0 - p : p;
        reweighted[static_cast<std::size_t>(u)] =
            weight * state.dup_likelihoods[static_cast<std::size_t>(u)];
    }
    std::vector<double>& next = state.dup_likelihoods;
    next.assign(static_cast<std::size_t>(dup_count), 0.0);
    for (int v = 0; v < dup_count; ++v) {
        const double mass = reweighted[static_cast<std::size_t>(v)];
        if (mass == 0.0) continue;
        next[static_cast<std::size_t>(v)] += mass * tg.self_probability(v);
        const double arc_mass = mass * tg.arc_probability(v);
        if (arc_mass > 0.0) {
            for (int u : tg.out_arcs(v)) next[static_cast<std::size_t>(u)] += arc_mass;
        }
    }
    double next_total = 0.0;
    for (double x : next) next_total += x;
    if (!(next_total > 0.0)) {
        throw DegenerateStateError("likelihood mass vanished; noise rate or instance misconfigured");
    }
    for (double& x : next) x /= next_total;
    ++state.round;
}

// ---------------------------------------------------------------------------
// Follow-the-feedback learner: start at a distance-sum center, then query
// whatever the last feedback said. No per-round computation at all.

inline int follow_feedback_init(const FeedbackGraph& g) {
    int best = 0;
    double best_sum = g.distance_sum(0);
    for (int v = 1; v < g.vertex_count(); ++v) {
        const double s = g.distance_sum(v);
        if (s < best_sum - kDistTol) {
            best = v;
            best_sum = s;
        }
    }
    return best;
}

inline int follow_feedback_step(int z) { return z; }

// ---------------------------------------------------------------------------
// Interaction protocol.

enum class LearnerKind { kMwu, kFollow };

inline const char* to_string(LearnerKind k) {
    return k == LearnerKind::kMwu ? "mwu" : "follow";
}

// Whether the round-r target move happens before or after the learner's
// round-r query. move_first charges a mistake for the round of each move;
// query_first defers the move's effect to the next round.
enum class Ordering { kMoveFirst, kQueryFirst };

inline const char* to_string(Ordering o) {
    return o == Ordering::kMoveFirst ? "move_first" : "query_first";
}

struct RunConfig {
    int rounds = 0;
    int budget = 0;
    double noise = 0.0;           // environment p
    double learner_noise = -1.0;  // p handed to the learner; <0 means same as noise
    AdversaryKind adversary = AdversaryKind::kDistanceMax;
    Ordering ordering = Ordering::kMoveFirst;
    SchedulePolicy schedule = SchedulePolicy::kUniformRounds;
    std::vector<int> fixed_moves;
};

struct RoundLog {
    int query = 0;
    int target = 0;  // base vertex at query time
    int feedback = 0;
    bool mistake = false;
    bool noisy = false;
};

struct RunRecord {
    LearnerKind learner = LearnerKind::kMwu;
    RunConfig config;
    std::uint64_t seed = 0;
    std::vector<RoundLog> rounds;
    int total_mistakes = 0;
};

// One full interaction: generate the trajectory, then per round (under
// move_first) move, query, count a mistake when the query misses the current
// base target, answer, update. Deterministic given the seed.
inline RunRecord run(LearnerKind learner, const FeedbackGraph& g, const TransitionGraph& tg,
                     const RunConfig& config, std::uint64_t seed) {
    if (config.noise < 0.0 || config.noise >= 0.5) {
        throw InvalidNoiseError("noise rate must satisfy 0 <= p < 1/2");
    }
    if (learner == LearnerKind::kFollow && config.adversary == AdversaryKind::kLikelihoodGreedy) {
        throw ConfigError("likelihood_greedy adversary requires the mwu learner");
    }
    RunRecord record;
    record.learner = learner;
    record.config = config;
    record.seed = seed;

    Rng rng(seed);
    const Trajectory traj = generate_trajectory(tg, config.rounds, config.budget, config.schedule,
                                                rng, config.fixed_moves);
    const double learner_p = config.learner_noise < 0.0 ? config.noise : config.learner_noise;

    LikelihoodState state;
    Likelihood aggregated;
    int follow_query = 0;
    if (learner == LearnerKind::kMwu) {
        state = mwu_init(tg);
    } else {
        follow_query = follow_feedback_init(g);
    }

    AdversaryPolicy policy;
    policy.kind = config.adversary;
    policy.learner_likelihood = &aggregated;

    record.rounds.reserve(static_cast<std::size_t>(config.rounds));
    for (int r = 1; r <= config.rounds; ++r) {
        const int target_dup = config.ordering == Ordering::kMoveFirst
                                   ? traj.targets[static_cast<std::size_t>(r - 1)]
                                   : (r == 1 ? traj.initial
                                             : traj.targets[static_cast<std::size_t>(r - 2)]);
        const int target = tg.base_of(target_dup);

        int q;
        if (learner == LearnerKind::kMwu) {
            aggregated = aggregate_likelihood(state, tg);
            q = weighted_median(g, aggregated);
        } else {
            q = follow_query;
        }

        const FeedbackEvent ev = feedback(g, q, target, config.noise, policy, rng, r);

        RoundLog log;
        log.query = q;
        log.target = target;
        log.feedback = ev.feedback;
        log.mistake = q != target;
        log.noisy = ev.noisy;
        record.rounds.push_back(log);
        if (log.mistake) ++record.total_mistakes;

        if (learner == LearnerKind::kMwu) {
            mwu_update(state, g, tg, q, ev.feedback, learner_p);
        } else {
            follow_query = follow_feedback_step(ev.feedback);
        }
    }
    return record;
}

}  // namespace graphlearn
