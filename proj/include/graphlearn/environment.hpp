#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "graphlearn/errors.hpp"
#include "graphlearn/feedback_graph.hpp"
#include "graphlearn/rng.hpp"
#include "graphlearn/transition_graph.hpp"

namespace graphlearn {

// ---------------------------------------------------------------------------
// Target trajectories.

enum class SchedulePolicy {
    kUniformRounds,  // exactly B distinct move rounds, uniform without replacement
    kBernoulli,      // move each round with probability B/R, capped at B realized moves
    kFixed,          // explicit round list
};

inline const char* to_string(SchedulePolicy s) {
    switch (s) {
        case SchedulePolicy::kUniformRounds: return "uniform_rounds";
        case SchedulePolicy::kBernoulli: return "bernoulli";
        case SchedulePolicy::kFixed: return "fixed";
    }
    return "?";
}

// The ground-truth target sequence over the transition graph. targets[r-1]
// is the duplicated vertex occupied after round r's move; initial is the
// position drawn before round 1. move_rounds lists the rounds r with
// t_r != t_{r-1}, i.e. realized moves only; a scheduled move at a vertex
// with no positive-probability out-arc is a no-op.
struct Trajectory {
    int initial = 0;
    std::vector<int> targets;      // dup ids, length R
    std::vector<int> move_rounds;  // ascending, subset of {1..R}
    int rounds = 0;
    int budget = 0;
};

inline Trajectory generate_trajectory(const TransitionGraph& tg, int rounds, int budget,
                                      SchedulePolicy schedule, Rng& rng,
                                      const std::vector<int>& fixed_rounds = {}) {
    if (rounds < 0 || budget < 0 || budget > rounds) {
        throw InvalidScheduleError("need 0 <= B <= R");
    }
    std::vector<int> scheduled;
    switch (schedule) {
        case SchedulePolicy::kUniformRounds:
            scheduled = rng.sample_without_replacement(1, rounds, budget);
            break;
        case SchedulePolicy::kBernoulli:
            break;  // coin flips drawn in the loop below
        case SchedulePolicy::kFixed: {
            scheduled = fixed_rounds;
            std::sort(scheduled.begin(), scheduled.end());
            if (static_cast<int>(scheduled.size()) > budget) {
                throw InvalidScheduleError("fixed schedule lists more than B moves");
            }
            for (std::size_t i = 0; i < scheduled.size(); ++i) {
                if (scheduled[i] < 1 || scheduled[i] > rounds) {
                    throw InvalidScheduleError("fixed schedule round out of range");
                }
                if (i > 0 && scheduled[i] == scheduled[i - 1]) {
                    throw InvalidScheduleError("fixed schedule repeats a round");
                }
            }
            break;
        }
    }

    Trajectory traj;
    traj.rounds = rounds;
    traj.budget = budget;
    traj.initial = rng.next_index(tg.dup_count());
    traj.targets.reserve(static_cast<std::size_t>(rounds));

    const double move_chance = rounds > 0 ? static_cast<double>(budget) / rounds : 0.0;
    int realized = 0;
    std::size_t next_scheduled = 0;
    int cur = traj.initial;
    for (int r = 1; r <= rounds; ++r) {
        bool want_move = false;
        if (schedule == SchedulePolicy::kBernoulli) {
            want_move = rng.bernoulli(move_chance) && realized < budget;
        } else if (next_scheduled < scheduled.size() && scheduled[next_scheduled] == r) {
            want_move = true;
            ++next_scheduled;
        }
        if (want_move && tg.arc_probability(cur) > 0.0) {
            const auto arcs = tg.out_arcs(cur);
            cur = arcs[static_cast<std::size_t>(rng.next_index(static_cast<int>(arcs.size())))];
            traj.move_rounds.push_back(r);
            ++realized;
        }
        traj.targets.push_back(cur);
    }
    return traj;
}

/// Checks the Trajectory invariants against its transition graph.
inline bool trajectory_is_legal(const Trajectory& traj, const TransitionGraph& tg) {
    if (static_cast<int>(traj.targets.size()) != traj.rounds) return false;
    if (static_cast<int>(traj.move_rounds.size()) > traj.budget) return false;
    if (traj.initial < 0 || traj.initial >= tg.dup_count()) return false;
    int prev = traj.initial;
    std::size_t mi = 0;
    for (int r = 1; r <= traj.rounds; ++r) {
        const int cur = traj.targets[static_cast<std::size_t>(r - 1)];
        if (cur != prev) {
            const auto arcs = tg.out_arcs(prev);
            if (std::find(arcs.begin(), arcs.end(), cur) == arcs.end()) return false;
            if (tg.arc_probability(prev) <= 0.0) return false;
            if (mi >= traj.move_rounds.size() || traj.move_rounds[mi] != r) return false;
            ++mi;
        } else if (mi < traj.move_rounds.size() && traj.move_rounds[mi] == r) {
            return false;  // recorded move without a position change
        }
        prev = cur;
    }
    return mi == traj.move_rounds.size();
}

// ---------------------------------------------------------------------------
// Adversarial feedback.

enum class AdversaryKind {
    kDistanceMax,       // maximize dist(answer, target)
    kRandom,            // uniform over the admissible answers
    kLikelihoodGreedy,  // maximize the likelihood mass surviving the answer
};

inline const char* to_string(AdversaryKind a) {
    switch (a) {
        case AdversaryKind::kDistanceMax: return "distance_max";
        case AdversaryKind::kRandom: return "random";
        case AdversaryKind::kLikelihoodGreedy: return "likelihood_greedy";
    }
    return "?";
}

struct AdversaryPolicy {
    AdversaryKind kind = AdversaryKind::kDistanceMax;
    // Aggregated learner likelihood over base vertices; required by
    // likelihood_greedy, ignored otherwise.
    const Likelihood* learner_likelihood = nullptr;
};

struct FeedbackEvent {
    int round = 0;
    int query = 0;
    int target = 0;
    int feedback = 0;
    bool noisy = false;
};

namespace detail {

inline double surviving_mass(const FeedbackGraph& g, const Likelihood& like, int q, int z) {
    double mass = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (in_version_space(g, q, z, v)) mass += like[static_cast<std::size_t>(v)];
    }
    return mass;
}

// Pick from `candidates` (ascending ids) per the policy; ties keep the
// smallest id.
inline int pick_answer(const FeedbackGraph& g, const std::vector<int>& candidates, int q, int t,
                       const AdversaryPolicy& policy, Rng& rng) {
    switch (policy.kind) {
        case AdversaryKind::kRandom:
            return candidates[static_cast<std::size_t>(
                rng.next_index(static_cast<int>(candidates.size())))];
        case AdversaryKind::kDistanceMax: {
            int best = candidates.front();
            double best_d = g.dist(best, t);
            for (int z : candidates) {
                const double d = g.dist(z, t);
                if (d > best_d + kDistTol) {
                    best = z;
                    best_d = d;
                }
            }
            return best;
        }
        case AdversaryKind::kLikelihoodGreedy: {
            if (policy.learner_likelihood == nullptr) {
                throw Error("likelihood_greedy adversary needs the learner likelihood");
            }
            int best = candidates.front();
            double best_mass = surviving_mass(g, *policy.learner_likelihood, q, best);
            for (int z : candidates) {
                const double mass = surviving_mass(g, *policy.learner_likelihood, q, z);
                if (mass > best_mass + 1e-15) {
                    best = z;
                    best_mass = mass;
                }
            }
            return best;
        }
    }
    return candidates.front();
}

}  // namespace detail

// One query/answer exchange. With probability 1-p the answer is truthful:
// the target itself when the query hit, otherwise a neighbor on a shortest
// path to the target (policy-chosen among the valid ones). With probability
// p the answer is any policy-chosen neighbor of the query; the noisy flag
// records the coin, not whether the answer happened to be helpful.
inline FeedbackEvent feedback(const FeedbackGraph& g, int q, int t, double p,
                              const AdversaryPolicy& policy, Rng& rng, int round = 0) {
    if (p < 0.0 || p >= 0.5) throw InvalidNoiseError("noise rate must satisfy 0 <= p < 1/2");
    FeedbackEvent ev;
    ev.round = round;
    ev.query = q;
    ev.target = t;
    ev.noisy = rng.bernoulli(p);
    const auto& neighbors = g.neighbors(q);
    if (neighbors.empty()) {
        throw IsolatedVertexError("query vertex " + std::to_string(q) + " has no neighbors");
    }
    if (!ev.noisy) {
        if (q == t) {
            ev.feedback = q;
            return ev;
        }
        std::vector<int> valid;
        for (int z : neighbors) {
            if (std::abs(g.dist(q, z) + g.dist(z, t) - g.dist(q, t)) <= kDistTol) {
                valid.push_back(z);
            }
        }
        ev.feedback = detail::pick_answer(g, valid, q, t, policy, rng);
    } else {
        ev.feedback = detail::pick_answer(g, neighbors, q, t, policy, rng);
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Hard-instance construction: searching among m items reduces to learning a
// target that walks a path graph, with items encoded as base-n digit
// sequences read most-significant first.

class BaseNCoder {
public:
    BaseNCoder(int base, int length) : base_(base), length_(length) {
        if (base < 2 || length < 1) throw Error("encoder needs base >= 2 and length >= 1");
        item_count_ = 1;
        for (int i = 0; i < length; ++i) {
            if (item_count_ > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(base)) {
                throw OverflowError("base^length exceeds the 64-bit item range");
            }
            item_count_ *= static_cast<std::uint64_t>(base);
        }
    }

    int base() const { return base_; }
    int length() const { return length_; }
    std::uint64_t item_count() const { return item_count_; }

    std::vector<int> encode(std::uint64_t item) const {
        if (item >= item_count_) throw Error("item out of range");
        std::vector<int> digits(static_cast<std::size_t>(length_));
        for (int i = length_ - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<int>(item % static_cast<std::uint64_t>(base_));
            item /= static_cast<std::uint64_t>(base_);
        }
        return digits;
    }

    std::uint64_t decode(const std::vector<int>& digits) const {
        if (static_cast<int>(digits.size()) != length_) throw Error("digit sequence length mismatch");
        std::uint64_t item = 0;
        for (int d : digits) {
            if (d < 0 || d >= base_) throw Error("digit out of range");
            item = item * static_cast<std::uint64_t>(base_) + static_cast<std::uint64_t>(d);
        }
        return item;
    }

private:
    int base_;
    int length_;
    std::uint64_t item_count_;
};

struct LowerBoundInstance {
    FeedbackGraph graph;  // unit-weight path on n vertices
    BaseNCoder coder;     // item <-> length-R digit sequence, digit r = round-r target
};

inline LowerBoundInstance lower_bound_instance(int n, int rounds) {
    if (n < 2) throw Error("lower-bound instance needs n >= 2");
    if (rounds < 1) throw Error("lower-bound instance needs R >= 1");
    return LowerBoundInstance{make_path(n), BaseNCoder(n, rounds)};
}

}  // namespace graphlearn
