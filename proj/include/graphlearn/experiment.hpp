#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "graphlearn/bounds.hpp"
#include "graphlearn/environment.hpp"
#include "graphlearn/errors.hpp"
#include "graphlearn/feedback_graph.hpp"
#include "graphlearn/learners.hpp"
#include "graphlearn/markov_chain.hpp"
#include "graphlearn/rng.hpp"
#include "graphlearn/transition_graph.hpp"

namespace graphlearn {

// ---------------------------------------------------------------------------
// Formatting. CSV floats carry 12 significant digits, rendered with
// std::to_chars so output is locale-free and reproducible byte for byte.

inline std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Experiment configuration. Flat key=value schema; every key can come from a
// config file or a CLI flag of the same name, flags winning.

enum class GraphKind { kClique, kStar, kPath, kCycle, kQuasiStar, kFile };

inline const char* to_string(GraphKind g) {
    switch (g) {
        case GraphKind::kClique: return "clique";
        case GraphKind::kStar: return "star";
        case GraphKind::kPath: return "path";
        case GraphKind::kCycle: return "cycle";
        case GraphKind::kQuasiStar: return "quasi_star";
        case GraphKind::kFile: return "file";
    }
    return "?";
}

enum class OutputFormat { kCsv, kJson };

struct ExperimentConfig {
    GraphKind graph = GraphKind::kClique;
    int n = 10;           // vertices for clique/path/cycle, leaf count for star
    int branches = 2;     // quasi-star branch count
    int d = 4;            // quasi-star diameter
    std::string graph_file;

    ModelKind model = ModelKind::kDrifting;
    int k = 2;  // shifting subset size
    int m = 1;  // neighborhood radius

    LearnerKind learner = LearnerKind::kFollow;
    AdversaryKind adversary = AdversaryKind::kDistanceMax;
    Ordering ordering = Ordering::kMoveFirst;
    SchedulePolicy schedule = SchedulePolicy::kUniformRounds;
    std::vector<int> fixed_moves;

    int rounds = 100;
    int budget = 0;
    double noise = 0.0;
    double learner_noise = -1.0;  // <0: same as noise

    int trials = 1;
    std::uint64_t seed = 1;
    std::string out;
    int threads = 0;  // 0 = hardware concurrency
    bool quiet = false;
    OutputFormat format = OutputFormat::kCsv;
};

namespace detail {

inline bool parse_bool(const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw ConfigError("expected a boolean, got '" + value + "'");
}

inline int parse_int(const std::string& value) {
    int out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw ConfigError("expected an integer, got '" + value + "'");
    }
    return out;
}

inline std::uint64_t parse_u64(const std::string& value) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw ConfigError("expected an unsigned integer, got '" + value + "'");
    }
    return out;
}

inline double parse_double(const std::string& value) {
    try {
        std::size_t used = 0;
        const double out = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + value + "'");
    }
}

inline std::vector<int> parse_int_list(const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(parse_int(tok));
    }
    return out;
}

}  // namespace detail

inline GraphKind parse_graph_kind(const std::string& value) {
    if (value == "clique") return GraphKind::kClique;
    if (value == "star") return GraphKind::kStar;
    if (value == "path") return GraphKind::kPath;
    if (value == "cycle") return GraphKind::kCycle;
    if (value == "quasi_star") return GraphKind::kQuasiStar;
    if (value == "file") return GraphKind::kFile;
    throw ConfigError("unknown graph kind '" + value + "'");
}

inline ModelKind parse_model_kind(const std::string& value) {
    if (value == "drifting") return ModelKind::kDrifting;
    if (value == "shifting") return ModelKind::kShifting;
    if (value == "shortest_path") return ModelKind::kShortestPath;
    if (value == "m_neighborhood") return ModelKind::kMNeighborhood;
    if (value == "complete") return ModelKind::kComplete;
    throw ConfigError("unknown model '" + value + "'");
}

inline LearnerKind parse_learner_kind(const std::string& value) {
    if (value == "mwu") return LearnerKind::kMwu;
    if (value == "follow") return LearnerKind::kFollow;
    throw ConfigError("unknown learner '" + value + "'");
}

inline AdversaryKind parse_adversary_kind(const std::string& value) {
    if (value == "distance_max") return AdversaryKind::kDistanceMax;
    if (value == "random") return AdversaryKind::kRandom;
    if (value == "likelihood_greedy") return AdversaryKind::kLikelihoodGreedy;
    throw ConfigError("unknown adversary '" + value + "'");
}

inline Ordering parse_ordering(const std::string& value) {
    if (value == "move_first") return Ordering::kMoveFirst;
    if (value == "query_first") return Ordering::kQueryFirst;
    throw ConfigError("unknown ordering '" + value + "'");
}

inline SchedulePolicy parse_schedule(const std::string& value) {
    if (value == "uniform_rounds") return SchedulePolicy::kUniformRounds;
    if (value == "bernoulli") return SchedulePolicy::kBernoulli;
    if (value == "fixed") return SchedulePolicy::kFixed;
    throw ConfigError("unknown schedule '" + value + "'");
}

inline OutputFormat parse_format(const std::string& value) {
    if (value == "csv") return OutputFormat::kCsv;
    if (value == "json") return OutputFormat::kJson;
    throw ConfigError("unknown format '" + value + "'");
}

/// Applies one key=value setting. Throws ConfigError naming the field.
inline void apply_setting(ExperimentConfig& config, const std::string& key,
                          const std::string& value) {
    try {
        if (key == "graph") config.graph = parse_graph_kind(value);
        else if (key == "n") config.n = detail::parse_int(value);
        else if (key == "branches") config.branches = detail::parse_int(value);
        else if (key == "d") config.d = detail::parse_int(value);
        else if (key == "graph_file") config.graph_file = value;
        else if (key == "model") config.model = parse_model_kind(value);
        else if (key == "k") config.k = detail::parse_int(value);
        else if (key == "m") config.m = detail::parse_int(value);
        else if (key == "learner") config.learner = parse_learner_kind(value);
        else if (key == "adversary") config.adversary = parse_adversary_kind(value);
        else if (key == "ordering") config.ordering = parse_ordering(value);
        else if (key == "schedule") config.schedule = parse_schedule(value);
        else if (key == "fixed_moves") config.fixed_moves = detail::parse_int_list(value);
        else if (key == "R") config.rounds = detail::parse_int(value);
        else if (key == "B") config.budget = detail::parse_int(value);
        else if (key == "p") config.noise = detail::parse_double(value);
        else if (key == "learner_p") config.learner_noise = detail::parse_double(value);
        else if (key == "trials") config.trials = detail::parse_int(value);
        else if (key == "seed") config.seed = detail::parse_u64(value);
        else if (key == "out") config.out = value;
        else if (key == "threads") config.threads = detail::parse_int(value);
        else if (key == "quiet") config.quiet = detail::parse_bool(value);
        else if (key == "format") config.format = parse_format(value);
        else throw ConfigError("unknown key '" + key + "'");
    } catch (const ConfigError& e) {
        throw ConfigError("field '" + key + "': " + e.what());
    }
}

/// Reads a flat key=value config file ('#' comments, blank lines ignored).
inline void load_config_file(ExperimentConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        try {
            apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

inline void validate_config(const ExperimentConfig& config) {
    if (config.noise < 0.0 || config.noise >= 0.5) {
        throw ConfigError("field 'p': noise rate must satisfy 0 <= p < 1/2");
    }
    if (config.learner_noise >= 0.5) {
        throw ConfigError("field 'learner_p': learner noise must satisfy 0 <= p < 1/2");
    }
    if (config.rounds < 0) throw ConfigError("field 'R': rounds must be >= 0");
    if (config.budget < 0 || config.budget > config.rounds) {
        throw ConfigError("field 'B': need 0 <= B <= R");
    }
    if (config.trials < 1) throw ConfigError("field 'trials': need at least 1 trial");
    if (config.graph == GraphKind::kFile) {
        if (config.graph_file.empty()) throw ConfigError("field 'graph_file': required for graph=file");
        if (!std::filesystem::exists(config.graph_file)) {
            throw ConfigError("field 'graph_file': no such file: " + config.graph_file);
        }
    }
    if (config.learner == LearnerKind::kFollow &&
        config.adversary == AdversaryKind::kLikelihoodGreedy) {
        throw ConfigError("field 'adversary': likelihood_greedy requires learner=mwu");
    }
    if (config.model == ModelKind::kShortestPath && config.budget < 1) {
        throw ConfigError("field 'B': the shortest_path model needs B >= 1");
    }
    if (config.schedule == SchedulePolicy::kFixed &&
        static_cast<int>(config.fixed_moves.size()) > config.budget) {
        throw ConfigError("field 'fixed_moves': lists more rounds than B");
    }
}

// ---------------------------------------------------------------------------
// Instance construction.

inline FeedbackGraph build_feedback_graph(const ExperimentConfig& config) {
    switch (config.graph) {
        case GraphKind::kClique: return make_clique(config.n);
        case GraphKind::kStar: return make_star(config.n);
        case GraphKind::kPath: return make_path(config.n);
        case GraphKind::kCycle: return make_cycle(config.n);
        case GraphKind::kQuasiStar: return make_quasi_star(config.branches, config.d);
        case GraphKind::kFile: return read_edge_list_file(config.graph_file);
    }
    throw ConfigError("unknown graph kind");
}

// Star targets live on the leaves only, via a single-clique transition over
// the leaf set; every other graph kind takes the configured model. The
// kernel's per-round move mass is B/R throughout.
inline TransitionGraph build_transition_graph(const ExperimentConfig& config,
                                              const FeedbackGraph& g) {
    const double b = config.rounds > 0
                         ? static_cast<double>(config.budget) / static_cast<double>(config.rounds)
                         : 0.0;
    if (config.graph == GraphKind::kStar) {
        std::vector<int> leaves;
        for (int v = 1; v < g.vertex_count(); ++v) leaves.push_back(v);
        return subset_clique_transition(g.vertex_count(), leaves, b);
    }
    switch (config.model) {
        case ModelKind::kDrifting: return drifting_transition(g, b);
        case ModelKind::kShifting: {
            if (config.k < 1 || config.k > g.vertex_count()) {
                throw ConfigError("field 'k': need 1 <= k <= n");
            }
            return shifting_transition(g.vertex_count(), config.k, b);
        }
        case ModelKind::kShortestPath: return shortest_path_transition(g, config.budget, b);
        case ModelKind::kMNeighborhood: {
            if (config.m < 1) throw ConfigError("field 'm': need m >= 1");
            return m_neighborhood_transition(g, config.m, b);
        }
        case ModelKind::kComplete: return complete_transition(g.vertex_count(), b);
    }
    throw ConfigError("unknown model kind");
}

// The theoretical value a summary row is compared against: the unified bound
// of the actual transition graph for the likelihood learner, and the
// clique / star / diameter closed forms for follow-the-feedback.
struct TheoreticalBound {
    std::string name;
    double value = 0.0;
};

inline TheoreticalBound matching_bound(const ExperimentConfig& config, const FeedbackGraph& g,
                                       const TransitionGraph& tg) {
    const double rounds = config.rounds;
    const double budget = config.budget;
    if (config.learner == LearnerKind::kMwu) {
        const double delta_prime = std::max(1, tg.max_out_degree());
        return {"unified",
                unified_bound(tg.dup_count(), delta_prime, budget, rounds, config.noise).value};
    }
    switch (config.graph) {
        case GraphKind::kClique: return {"clique", clique_bound(rounds, budget, config.noise)};
        case GraphKind::kStar: return {"star", star_bound(rounds, budget, config.noise)};
        default:
            return {"diameter", diameter_bound(g.diameter(), rounds, budget, config.noise)};
    }
}

// ---------------------------------------------------------------------------
// Worker pool: runs fn(0..count-1) on up to `threads` workers; the caller
// consumes results in index order, so output never depends on scheduling.

inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// ---------------------------------------------------------------------------
// Experiment execution.

struct ExperimentSummary {
    ExperimentConfig config;
    int n = 0;
    int dup_count = 0;
    double move_prob = 0.0;
    double mean_mistakes = 0.0;
    double stderr_mistakes = 0.0;
    TheoreticalBound bound;
    double ratio = 0.0;  // mean / bound; 0 when the bound is 0
    std::vector<int> per_trial_mistakes;
};

inline const std::vector<std::string>& summary_columns() {
    static const std::vector<std::string> cols = {
        "graph",  "model", "learner",       "adversary",       "ordering",   "schedule", "n",
        "nprime", "R",     "B",             "p",               "b",          "trials",   "seed",
        "mean_mistakes",   "stderr_mistakes", "bound_name",    "bound",      "ratio"};
    return cols;
}

inline std::vector<std::string> summary_row(const ExperimentSummary& s) {
    return {to_string(s.config.graph),
            to_string(s.config.model),
            to_string(s.config.learner),
            to_string(s.config.adversary),
            to_string(s.config.ordering),
            to_string(s.config.schedule),
            std::to_string(s.n),
            std::to_string(s.dup_count),
            std::to_string(s.config.rounds),
            std::to_string(s.config.budget),
            format_double(s.config.noise),
            format_double(s.move_prob),
            std::to_string(s.config.trials),
            std::to_string(s.config.seed),
            format_double(s.mean_mistakes),
            format_double(s.stderr_mistakes),
            s.bound.name,
            format_double(s.bound.value),
            format_double(s.ratio)};
}

inline void write_summary_csv(std::ostream& out, const std::vector<ExperimentSummary>& rows) {
    const auto& cols = summary_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& s : rows) {
        const auto row = summary_row(s);
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

inline nlohmann::json summary_json(const ExperimentSummary& s) {
    const auto& cols = summary_columns();
    const auto row = summary_row(s);
    nlohmann::json j;
    for (std::size_t i = 0; i < cols.size(); ++i) j[cols[i]] = row[i];
    j["per_trial_mistakes"] = s.per_trial_mistakes;
    return j;
}

/// Companion summary path for a per-round CSV path: run.csv -> run.summary.csv.
inline std::string summary_path_for(const std::string& rounds_path) {
    const std::filesystem::path p(rounds_path);
    std::filesystem::path out = p;
    out.replace_extension();
    out += ".summary";
    out += p.extension().empty() ? std::filesystem::path(".csv") : p.extension();
    return out.string();
}

// Runs `trials` independent seeded interactions. Trial i uses substream
// mix_seed(seed, i). Writes the per-round CSV and a summary file when `out`
// is set; reruns with the same config and seed are byte-identical.
inline ExperimentSummary run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    const FeedbackGraph g = build_feedback_graph(config);
    const TransitionGraph tg = build_transition_graph(config, g);

    RunConfig run_config;
    run_config.rounds = config.rounds;
    run_config.budget = config.budget;
    run_config.noise = config.noise;
    run_config.learner_noise = config.learner_noise;
    run_config.adversary = config.adversary;
    run_config.ordering = config.ordering;
    run_config.schedule = config.schedule;
    run_config.fixed_moves = config.fixed_moves;

    const bool keep_rounds = !config.out.empty();
    std::vector<RunRecord> records(keep_rounds ? static_cast<std::size_t>(config.trials) : 0);
    std::vector<int> mistakes(static_cast<std::size_t>(config.trials), 0);

    parallel_for(config.trials, config.threads, [&](int trial) {
        RunRecord record = run(config.learner, g, tg, run_config,
                               mix_seed(config.seed, static_cast<std::uint64_t>(trial)));
        mistakes[static_cast<std::size_t>(trial)] = record.total_mistakes;
        if (keep_rounds) records[static_cast<std::size_t>(trial)] = std::move(record);
    });

    ExperimentSummary summary;
    summary.config = config;
    summary.n = g.vertex_count();
    summary.dup_count = tg.dup_count();
    summary.move_prob = tg.move_prob();
    summary.per_trial_mistakes = mistakes;
    double total = 0.0;
    for (int x : mistakes) total += x;
    summary.mean_mistakes = total / config.trials;
    if (config.trials > 1) {
        double ss = 0.0;
        for (int x : mistakes) {
            const double delta = x - summary.mean_mistakes;
            ss += delta * delta;
        }
        summary.stderr_mistakes =
            std::sqrt(ss / (config.trials - 1)) / std::sqrt(static_cast<double>(config.trials));
    }
    summary.bound = matching_bound(config, g, tg);
    summary.ratio = summary.bound.value > 0.0 ? summary.mean_mistakes / summary.bound.value : 0.0;

    if (keep_rounds) {
        std::ofstream rounds_out(config.out, std::ios::binary);
        if (!rounds_out) throw IoError("cannot open output file: " + config.out);
        rounds_out << "trial,round,query,target,feedback,mistake,noisy,cum_mistakes\n";
        for (int trial = 0; trial < config.trials; ++trial) {
            const RunRecord& record = records[static_cast<std::size_t>(trial)];
            int cum = 0;
            for (int r = 0; r < static_cast<int>(record.rounds.size()); ++r) {
                const RoundLog& log = record.rounds[static_cast<std::size_t>(r)];
                cum += log.mistake ? 1 : 0;
                rounds_out << trial << ',' << (r + 1) << ',' << log.query << ',' << log.target
                           << ',' << log.feedback << ',' << (log.mistake ? 1 : 0) << ','
                           << (log.noisy ? 1 : 0) << ',' << cum << '\n';
            }
        }
        const std::string summary_path = summary_path_for(config.out);
        std::ofstream summary_out(summary_path, std::ios::binary);
        if (!summary_out) throw IoError("cannot open output file: " + summary_path);
        if (config.format == OutputFormat::kJson) {
            summary_out << summary_json(summary).dump(2) << "\n";
        } else {
            write_summary_csv(summary_out, {summary});
        }
    }
    return summary;
}

// ---------------------------------------------------------------------------
// Parameter sweeps.

// One run_experiment per value of the axis; point j runs under the derived
// master seed mix_seed(seed, j) so the whole sweep is reproducible and
// points stay decoupled.
inline std::vector<ExperimentSummary> run_sweep(const ExperimentConfig& base,
                                                const std::string& axis,
                                                const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    std::vector<ExperimentSummary> rows;
    rows.reserve(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
        ExperimentConfig point = base;
        const double value = values[j];
        const int int_value = static_cast<int>(std::llround(value));
        if (axis == "p") {
            point.noise = value;
        } else if (axis == "B") {
            point.budget = int_value;
        } else if (axis == "n") {
            point.n = int_value;
        } else if (axis == "k") {
            point.k = int_value;
        } else if (axis == "m") {
            point.m = int_value;
        } else if (axis == "d") {
            if (base.graph == GraphKind::kQuasiStar) {
                point.d = int_value;
            } else if (base.graph == GraphKind::kCycle) {
                point.n = 2 * int_value;  // even cycle with diameter d
            } else {
                throw ConfigError("sweep axis 'd' needs graph=quasi_star or graph=cycle");
            }
        } else {
            throw ConfigError("unknown sweep axis '" + axis + "' (one of p,B,n,d,k,m)");
        }
        point.seed = mix_seed(base.seed, static_cast<std::uint64_t>(j));
        point.out.clear();  // sweep writes one table, not per-point round logs
        rows.push_back(run_experiment(point));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Chain reports: the chain matrix next to its stationary solution, expected
// mistakes, hitting times, and the matching closed forms.

enum class ChainKind { kClique, kStar, kQuasiStar, kWalk };

inline const char* to_string(ChainKind c) {
    switch (c) {
        case ChainKind::kClique: return "clique";
        case ChainKind::kStar: return "star";
        case ChainKind::kQuasiStar: return "quasi_star";
        case ChainKind::kWalk: return "walk";
    }
    return "?";
}

inline ChainKind parse_chain_kind(const std::string& value) {
    if (value == "clique") return ChainKind::kClique;
    if (value == "star") return ChainKind::kStar;
    if (value == "quasi_star") return ChainKind::kQuasiStar;
    if (value == "walk") return ChainKind::kWalk;
    throw ConfigError("unknown chain kind '" + value + "'");
}

struct ChainReport {
    ChainKind kind = ChainKind::kClique;
    MarkovChain chain;
    std::vector<double> pi;
    int correct_state = 0;
    double rounds = 0.0;
    double expected = 0.0;  // R (1 - pi_correct)
    std::vector<std::pair<std::string, double>> figures;
};

inline ChainReport chain_report(ChainKind kind, int d, double p, double b, double rounds) {
    ChainReport report;
    report.kind = kind;
    report.rounds = rounds;
    const double budget = b * rounds;
    switch (kind) {
        case ChainKind::kClique:
            report.chain = clique_chain(p, b);
            report.correct_state = 0;
            report.figures.push_back({"clique_bound", clique_bound(rounds, budget, p)});
            break;
        case ChainKind::kStar:
            report.chain = star_chain(p, b);
            report.correct_state = 0;
            report.figures.push_back({"star_exact", star_exact(rounds, budget, p)});
            report.figures.push_back({"star_bound", star_bound(rounds, budget, p)});
            break;
        case ChainKind::kQuasiStar:
            report.chain = quasi_star_chain(d, p, b);
            report.correct_state = 0;
            if (p < 0.5) {
                report.figures.push_back({"diameter_bound", diameter_bound(d, rounds, budget, p)});
            }
            break;
        case ChainKind::kWalk:
            report.chain = walk_chain(d, p);
            report.correct_state = d;
            report.figures.push_back({"hitting_time_0_to_d", hitting_time(report.chain, 0, d)});
            if (p < 0.5) {
                report.figures.push_back({"hitting_bound", hitting_bound(d, p)});
                report.figures.push_back({"t_off_bound", t_off_bound(p)});
            }
            break;
    }
    report.pi = stationary(report.chain);
    report.expected =
        rounds * (1.0 - report.pi[static_cast<std::size_t>(report.correct_state)]);
    if (kind == ChainKind::kWalk) {
        report.figures.push_back(
            {"t_off_stationary", 1.0 - report.pi[static_cast<std::size_t>(report.correct_state)]});
    }
    return report;
}

inline void print_chain_report(std::ostream& out, const ChainReport& report) {
    out << "chain: " << to_string(report.kind) << " (" << report.chain.size << " states; "
        << report.chain.convention << ")\n\ntransition matrix:\n";
    write_chain_csv(out, report.chain);
    out << "\nstationary distribution:\n";
    for (int i = 0; i < report.chain.size; ++i) {
        out << "  pi[" << i << "] = " << format_double(report.pi[static_cast<std::size_t>(i)])
            << "  (" << report.chain.labels[static_cast<std::size_t>(i)] << ")\n";
    }
    out << "\nexpected mistakes over R=" << format_double(report.rounds)
        << " rounds: R(1-pi_correct) = " << format_double(report.expected) << "\n";
    if (!report.figures.empty()) {
        out << "\nreference figures:\n";
        for (const auto& [name, value] : report.figures) {
            out << "  " << name << " = " << format_double(value) << "\n";
        }
    }
}

inline nlohmann::json chain_report_json(const ChainReport& report) {
    nlohmann::json j;
    j["kind"] = to_string(report.kind);
    j["convention"] = report.chain.convention;
    j["size"] = report.chain.size;
    std::vector<std::vector<double>> matrix;
    for (int i = 0; i < report.chain.size; ++i) {
        std::vector<double> row;
        for (int c = 0; c < report.chain.size; ++c) row.push_back(report.chain.at(i, c));
        matrix.push_back(std::move(row));
    }
    j["matrix"] = matrix;
    j["stationary"] = report.pi;
    j["correct_state"] = report.correct_state;
    j["rounds"] = report.rounds;
    j["expected_mistakes"] = report.expected;
    for (const auto& [name, value] : report.figures) j["figures"][name] = value;
    return j;
}

}  // namespace graphlearn
