// Acceptance suite: end-to-end checks that the simulator reproduces the
// closed-form mistake predictions at their stated tolerances. Prints one
// pass/fail line per criterion; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "graphlearn/graphlearn.hpp"
#include "oracles.hpp"

using namespace graphlearn;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double x) { return format_double(x); }

ExperimentConfig follow_config(GraphKind graph, int n, int rounds, int budget, double p,
                               int trials, std::uint64_t seed) {
    ExperimentConfig config;
    config.graph = graph;
    config.n = n;
    config.learner = LearnerKind::kFollow;
    config.adversary = AdversaryKind::kDistanceMax;
    config.ordering = Ordering::kMoveFirst;
    config.schedule = SchedulePolicy::kUniformRounds;
    config.rounds = rounds;
    config.budget = budget;
    config.noise = p;
    config.trials = trials;
    config.seed = seed;
    return config;
}

// --- criterion 1: clique mistake count ---------------------------------------

void criterion_clique() {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig config = follow_config(GraphKind::kClique, 20, 10000, 100, 0.1, 200, 101);
    const ExperimentSummary summary = run_experiment(config);
    const double target = clique_bound(10000, 100, 0.1);  // B + p(R-B) = 1090
    const double elapsed = seconds_since(start);
    const bool within = std::abs(summary.mean_mistakes - target) <= 0.05 * target;
    const bool fast = elapsed < 60.0;
    report(1, "clique follow-the-feedback reproduces B + p(R-B)", within && fast,
           "mean=" + fmt(summary.mean_mistakes) + " target=" + fmt(target) + " +-5% in " +
               fmt(elapsed) + "s");
}

// --- criterion 2: star mistake count and chain agreement ---------------------

void criterion_star() {
    const ExperimentConfig config = follow_config(GraphKind::kStar, 20, 10000, 100, 0.1, 200, 102);
    const ExperimentSummary summary = run_experiment(config);
    const double exact = star_exact(10000, 100, 0.1);
    const double upper = star_bound(10000, 100, 0.1);
    const double chain_prediction = expected_mistakes(star_chain(0.1, 100.0 / 10000.0), 10000, 0);
    const bool below_bound = summary.mean_mistakes <= upper;
    const bool near_exact = std::abs(summary.mean_mistakes - exact) <= 0.05 * exact;
    const bool chain_agrees = std::abs(chain_prediction - exact) <= 0.02 * exact;
    std::string detail = "mean=" + fmt(summary.mean_mistakes) + " exact=" + fmt(exact) +
                         " bound=" + fmt(upper) + " chain=" + fmt(chain_prediction);
    if (!chain_agrees) {
        detail += " [stationary prediction disagrees with the closed form by " +
                  fmt(100.0 * std::abs(chain_prediction - exact) / exact) + "%]";
    }
    report(2, "star follow-the-feedback matches the exact expectation",
           below_bound && near_exact && chain_agrees, detail);
}

// --- criterion 3: hitting-time lemma ------------------------------------------

void criterion_hitting_time() {
    // exact hitting times against the printed closed form over the full grid
    int checked = 0;
    int violations = 0;
    double worst_excess = 0.0;
    std::string worst_point;
    for (int d = 2; d <= 50; ++d) {
        for (int pi = 1; pi <= 9; ++pi) {
            const double p = 0.05 * pi;
            const double h = hitting_time(walk_chain(d, p), 0, d);
            const double bound = hitting_bound(d, p);
            ++checked;
            if (h > bound) {
                ++violations;
                if (h - bound > worst_excess) {
                    worst_excess = h - bound;
                    worst_point = "d=" + std::to_string(d) + " p=" + fmt(p) + " h=" + fmt(h) +
                                  " bound=" + fmt(bound);
                }
            }
        }
    }
    const bool lemma_holds = violations == 0;

    bool noiseless_equality = true;
    for (int d : {2, 10, 25, 50}) {
        if (std::abs(hitting_time(walk_chain(d, 0.0), 0, d) - d) > 1e-9) noiseless_equality = false;
    }

    // Monte Carlo cross-check of the exact solve
    const double exact = hitting_time(walk_chain(10, 0.25), 0, 10);
    Rng rng(103);
    const int walks = 100000;
    double total = 0.0;
    double total_sq = 0.0;
    const MarkovChain chain = walk_chain(10, 0.25);
    for (int i = 0; i < walks; ++i) {
        const double t = static_cast<double>(oracles::sample_hitting_time(chain, 0, 10, rng));
        total += t;
        total_sq += t * t;
    }
    const double mc_mean = total / walks;
    const double mc_var = (total_sq - walks * mc_mean * mc_mean) / (walks - 1);
    const double mc_se = std::sqrt(mc_var / walks);
    const bool mc_agrees = std::abs(mc_mean - exact) <= 3.0 * mc_se;

    std::string detail;
    if (lemma_holds) {
        detail = "all " + std::to_string(checked) + " grid points below the closed form";
    } else {
        detail = std::to_string(violations) + "/" + std::to_string(checked) +
                 " grid points exceed the closed form (worst: " + worst_point +
                 "); the exact value is the closed form plus a positive geometric tail, so the "
                 "printed inequality cannot hold";
    }
    detail += "; h=d at p=0 " + std::string(noiseless_equality ? "ok" : "VIOLATED");
    detail += "; MC mean=" + fmt(mc_mean) + " exact=" + fmt(exact) + " se=" + fmt(mc_se) +
              (mc_agrees ? " ok" : " VIOLATED");
    report(3, "hitting-time closed form upper-bounds the exact solve",
           lemma_holds && noiseless_equality && mc_agrees, detail);
}

// --- criterion 4: off-target fraction bound -----------------------------------

void criterion_t_off() {
    int checked = 0;
    bool ok = true;
    std::string breach;
    for (int d = 2; d <= 50; ++d) {
        for (int pi = 1; pi <= 9; ++pi) {
            const double p = 0.05 * pi;
            const double r = p / (1.0 - p);
            const double off = 1.0 - (1.0 - r) / (1.0 - std::pow(r, d + 1));
            ++checked;
            if (off > t_off_bound(p) + 1e-12) {
                ok = false;
                breach = "d=" + std::to_string(d) + " p=" + fmt(p);
            }
        }
    }
    report(4, "stationary off-target fraction stays below p/(1-p)", ok,
           ok ? std::to_string(checked) + " grid points verified" : "violated at " + breach);
}

// --- criterion 5: diameter bound on cycles ------------------------------------

void criterion_diameter() {
    bool ok = true;
    std::string breach;
    double tightest = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 105;
    for (int d = 3; d <= 8; ++d) {
        for (int budget : {10, 50}) {
            for (double p : {0.1, 0.2}) {
                ExperimentConfig config =
                    follow_config(GraphKind::kCycle, 2 * d, 10000, budget, p, 200, seed++);
                const ExperimentSummary summary = run_experiment(config);
                const double bound = diameter_bound(d, 10000, budget, p);
                tightest = std::min(tightest, bound - summary.mean_mistakes);
                if (summary.mean_mistakes > bound) {
                    ok = false;
                    breach = "d=" + std::to_string(d) + " B=" + std::to_string(budget) +
                             " p=" + fmt(p) + " mean=" + fmt(summary.mean_mistakes) +
                             " bound=" + fmt(bound);
                }
            }
        }
    }
    report(5, "follow-the-feedback stays under the diameter bound on cycles", ok,
           ok ? "24 configurations, smallest margin " + fmt(tightest) : breach);
}

// --- criterion 6: likelihood-learner upper bounds ------------------------------

struct ModelCase {
    std::string label;
    ExperimentConfig config;
    double bound;
};

void criterion_model_bounds() {
    std::vector<ModelCase> cases;
    std::uint64_t seed = 106;
    for (int budget : {0, 10}) {
        for (double p : {0.1, 0.25}) {
            const int rounds = 500;
            {
                ExperimentConfig config;
                config.graph = GraphKind::kPath;
                config.n = 30;
                config.model = ModelKind::kDrifting;
                config.learner = LearnerKind::kMwu;
                config.rounds = rounds;
                config.budget = budget;
                config.noise = p;
                config.trials = 100;
                config.seed = seed++;
                ModelParams params;
                params.n = 30;
                params.delta = 2;
                params.budget = budget;
                params.rounds = rounds;
                params.p = p;
                cases.push_back({"drifting/path30", config, model_bound(ModelKind::kDrifting, params).value});
            }
            {
                ExperimentConfig config;
                config.graph = GraphKind::kPath;
                config.n = 10;
                config.model = ModelKind::kShifting;
                config.k = 2;
                config.learner = LearnerKind::kMwu;
                config.rounds = rounds;
                config.budget = budget;
                config.noise = p;
                config.trials = 100;
                config.seed = seed++;
                ModelParams params;
                params.n = 10;
                params.k = 2;
                params.budget = budget;
                params.rounds = rounds;
                params.p = p;
                cases.push_back({"shifting/n10k2", config, model_bound(ModelKind::kShifting, params).value});
            }
            {
                ExperimentConfig config;
                config.graph = GraphKind::kCycle;
                config.n = 20;
                config.model = ModelKind::kMNeighborhood;
                config.m = 2;
                config.learner = LearnerKind::kMwu;
                config.rounds = rounds;
                config.budget = budget;
                config.noise = p;
                config.trials = 100;
                config.seed = seed++;
                ModelParams params;
                params.n = 20;
                params.delta = 2;
                params.m = 2;
                params.budget = budget;
                params.rounds = rounds;
                params.p = p;
                cases.push_back(
                    {"m_neighborhood/cycle20", config, model_bound(ModelKind::kMNeighborhood, params).value});
            }
            {
                ExperimentConfig config;
                config.graph = GraphKind::kCycle;
                config.n = 20;
                config.model = ModelKind::kComplete;
                config.learner = LearnerKind::kMwu;
                config.rounds = rounds;
                config.budget = budget;
                config.noise = p;
                config.trials = 200;
                config.seed = seed++;
                ModelParams params;
                params.n = 20;
                params.budget = budget;
                params.rounds = rounds;
                params.p = p;
                cases.push_back({"complete/cycle20", config, model_bound(ModelKind::kComplete, params).value});
            }
        }
    }
    bool ok = true;
    std::string breach;
    double tightest_ratio = 0.0;
    std::string tightest_case;
    for (const ModelCase& c : cases) {
        const ExperimentSummary summary = run_experiment(c.config);
        const double ratio = c.bound > 0.0 ? summary.mean_mistakes / c.bound : 1e9;
        if (ratio > tightest_ratio) {
            tightest_ratio = ratio;
            tightest_case = c.label + " B=" + std::to_string(c.config.budget) +
                            " p=" + fmt(c.config.noise) + " mean=" + fmt(summary.mean_mistakes) +
                            " bound=" + fmt(c.bound);
        }
        if (summary.mean_mistakes > c.bound) {
            ok = false;
            breach = c.label + " B=" + std::to_string(c.config.budget) + " p=" +
                     fmt(c.config.noise) + " mean=" + fmt(summary.mean_mistakes) + " bound=" +
                     fmt(c.bound);
        }
    }
    report(6, "likelihood learner stays under every model bound", ok,
           ok ? std::to_string(cases.size()) + " configurations, tightest " + tightest_case
              : breach);
}

// --- criterion 7: lower-bound main term equals the unified bound ---------------

void criterion_gap_identity() {
    int points = 0;
    bool ok = true;
    for (double n : {4.0, 8.0, 16.0, 32.0, 64.0}) {
        for (double delta : {2.0, 4.0}) {
            for (double budget : {0.0, 1.0, 2.0, 5.0, 10.0}) {
                const double rounds = 40.0;
                const double p = 0.15;
                const double lower = lower_bound_main_term(n, delta, budget, rounds, p);
                const double upper = unified_bound(n, delta, budget, rounds, p).value;
                if (std::abs(lower - upper) > 1e-12) ok = false;
                ++points;
            }
        }
    }
    report(7, "lower-bound main term equals the unified upper bound", ok && points == 50,
           std::to_string(points) + " grid points at 1e-12");
}

// --- criterion 8: combinatorial oracles ----------------------------------------

void criterion_oracles() {
    Rng rng(108);
    bool version_ok = true;
    for (int g_index = 0; g_index < 100 && version_ok; ++g_index) {
        const int n = 3 + rng.next_index(10);  // up to 12
        const FeedbackGraph g = oracles::random_connected_graph(n, n / 2, g_index % 3 == 0, rng);
        const auto fw = oracles::floyd_warshall(n, g.edges(), false);
        const auto adj = oracles::adjacency_of(n, g.edges(), false);
        for (int q = 0; q < n && version_ok; ++q) {
            for (int z : g.neighbors(q)) {
                const auto space = version_space(g, q, z);
                for (int v = 0; v < n; ++v) {
                    const bool expected = oracles::on_some_shortest_path(adj, fw, q, z, v);
                    const bool got = std::binary_search(space.begin(), space.end(), v);
                    if (expected != got) {
                        version_ok = false;
                        break;
                    }
                }
            }
        }
    }

    bool halving_ok = true;
    for (int g_index = 0; g_index < 100 && halving_ok; ++g_index) {
        const int n = 2 + rng.next_index(19);  // up to 20
        const FeedbackGraph g = oracles::random_connected_graph(n, n / 2, g_index % 2 == 0, rng);
        const Likelihood like = oracles::random_likelihood(n, rng);
        const double total = likelihood_total(like);
        const int median = weighted_median(g, like);
        for (int z : g.neighbors(median)) {
            double surviving = 0.0;
            for (int v : version_space(g, median, z)) surviving += like[v];
            if (surviving > 0.5 * total + 1e-9) {
                halving_ok = false;
                break;
            }
        }
    }
    report(8, "version-space and median-halving oracles agree", version_ok && halving_ok,
           std::string("version space ") + (version_ok ? "ok" : "MISMATCH") + " on 100 graphs; " +
               "halving " + (halving_ok ? "ok" : "VIOLATED") + " on 100 graphs");
}

// --- criterion 9: quasi-star golden matrix -------------------------------------

void criterion_quasi_star() {
    const double p = 0.1;
    const double b = 0.05;
    const MarkovChain chain = quasi_star_chain(4, p, b);
    const double close = (1 - p) * (1 - b);
    const double away = p * (1 - b);
    const double miss = p + b - p * b;
    const double golden[5][5] = {
        {close, away, b / 3, b / 3, b / 3},
        {close, 0, away, b / 2, b / 2},
        {0, close, 0, away, b},
        {b, 0, close, 0, away},
        {miss / 2, miss / 2, 0, close, 0},
    };
    bool entries_ok = true;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (std::abs(chain.at(i, j) - golden[i][j]) > 1e-12) entries_ok = false;
        }
    }
    bool rows_ok = true;
    for (int d : {4, 6, 8, 10}) {
        for (double pp : {0.05, 0.25, 0.45}) {
            for (double bb : {0.0, 0.01, 0.2}) {
                if (!quasi_star_chain(d, pp, bb).is_row_stochastic(1e-12)) rows_ok = false;
            }
        }
    }
    report(9, "quasi-star chain reproduces the printed matrix", entries_ok && rows_ok,
           std::string("25 golden entries ") + (entries_ok ? "ok" : "MISMATCH") +
               "; row sums ok across the grid: " + (rows_ok ? "yes" : "no"));
}

// --- criterion 10: determinism --------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_determinism() {
    ExperimentConfig config;
    config.graph = GraphKind::kCycle;
    config.n = 12;
    config.learner = LearnerKind::kMwu;
    config.model = ModelKind::kDrifting;
    config.adversary = AdversaryKind::kLikelihoodGreedy;
    config.rounds = 300;
    config.budget = 12;
    config.noise = 0.2;
    config.trials = 10;
    config.seed = 110;

    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "graphlearn_acceptance_a.csv").string();
    const std::string b = (dir / "graphlearn_acceptance_b.csv").string();
    config.out = a;
    config.threads = 1;
    run_experiment(config);
    config.out = b;
    config.threads = 2;
    run_experiment(config);
    const bool rounds_same = slurp(a) == slurp(b) && !slurp(a).empty();
    const bool summary_same = slurp(summary_path_for(a)) == slurp(summary_path_for(b));
    for (const std::string& path : {a, b, summary_path_for(a), summary_path_for(b)}) {
        std::remove(path.c_str());
    }
    report(10, "identical seeds yield byte-identical CSV output", rounds_same && summary_same,
           std::string("per-round CSV ") + (rounds_same ? "identical" : "DIFFERS") + ", summary " +
               (summary_same ? "identical" : "DIFFERS") + " across thread counts");
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_clique();
    criterion_star();
    criterion_hitting_time();
    criterion_t_off();
    criterion_diameter();
    criterion_model_bounds();
    criterion_gap_identity();
    criterion_oracles();
    criterion_quasi_star();
    criterion_determinism();
    std::printf("%d/10 criteria passed in %.1fs\n", 10 - failures, seconds_since(start));
    return failures;
}
