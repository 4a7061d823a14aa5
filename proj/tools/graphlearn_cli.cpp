// Command-line driver: run experiments and parameter sweeps, evaluate the
// closed-form mistake bounds, inspect the mistake Markov chains, and
// export/inspect graphs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphlearn/graphlearn.hpp"

namespace {

using namespace graphlearn;

// Exit codes: 0 success, 2 configuration/usage, 3 file I/O, 4 domain errors
// (disconnected graphs, size guards, unattainable solves), 1 anything else.
int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
        dynamic_cast<const MissingParamError*>(&e) != nullptr ||
        dynamic_cast<const InvalidScheduleError*>(&e) != nullptr) {
        return 2;
    }
    if (dynamic_cast<const IoError*>(&e) != nullptr) return 3;
    if (dynamic_cast<const Error*>(&e) != nullptr) return 4;
    return 1;
}

struct ConfigFlags {
    std::string config_path;
    bool quiet = false;
    std::vector<std::pair<std::string, std::string*>> bindings;
    std::vector<std::unique_ptr<std::string>> storage;

    // Registers --key flags whose values feed apply_setting verbatim, so CLI
    // flags share the config-file vocabulary. Precedence: flags > file >
    // defaults.
    void register_options(CLI::App* app, const std::vector<std::pair<std::string, std::string>>& keys) {
        app->add_option("--config", config_path, "flat key=value config file");
        app->add_flag("--quiet", quiet, "suppress progress notes");
        for (const auto& [key, help] : keys) {
            if (key == "quiet") continue;
            storage.push_back(std::make_unique<std::string>());
            bindings.push_back({key, storage.back().get()});
            app->add_option("--" + key, *storage.back(), help);
        }
    }

    ExperimentConfig resolve(const CLI::App* app) const {
        ExperimentConfig config;
        if (!config_path.empty()) load_config_file(config, config_path);
        for (const auto& [key, value] : bindings) {
            if (app->count("--" + key) > 0) apply_setting(config, key, *value);
        }
        if (quiet) config.quiet = true;
        return config;
    }
};

const std::vector<std::pair<std::string, std::string>> kRunKeys = {
    {"graph", "clique|star|path|cycle|quasi_star|file"},
    {"n", "vertex count (leaf count for star)"},
    {"branches", "quasi-star branch count"},
    {"d", "quasi-star diameter (even, >= 4)"},
    {"graph_file", "edge-list file for graph=file"},
    {"model", "drifting|shifting|shortest_path|m_neighborhood|complete"},
    {"k", "shifting subset size"},
    {"m", "neighborhood radius"},
    {"learner", "mwu|follow"},
    {"adversary", "distance_max|random|likelihood_greedy"},
    {"ordering", "move_first|query_first"},
    {"schedule", "uniform_rounds|bernoulli|fixed"},
    {"fixed_moves", "comma-separated move rounds for schedule=fixed"},
    {"R", "rounds per trial"},
    {"B", "target move budget"},
    {"p", "feedback noise rate, 0 <= p < 1/2"},
    {"learner_p", "noise rate handed to the learner (default: p)"},
    {"trials", "independent trials"},
    {"seed", "master seed"},
    {"out", "per-round CSV path (summary lands next to it)"},
    {"threads", "worker threads (0 = hardware)"},
    {"quiet", "suppress progress notes"},
    {"format", "csv|json summary format"},
};

void print_summaries(const std::vector<ExperimentSummary>& rows, OutputFormat format) {
    if (format == OutputFormat::kJson) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : rows) j.push_back(summary_json(s));
        std::cout << j.dump(2) << "\n";
    } else {
        write_summary_csv(std::cout, rows);
    }
}

int cmd_run(const ConfigFlags& flags, const CLI::App* app) {
    ExperimentConfig config = flags.resolve(app);
    if (!config.quiet) {
        std::cerr << "run: graph=" << to_string(config.graph) << " learner="
                  << to_string(config.learner) << " R=" << config.rounds << " B=" << config.budget
                  << " p=" << config.noise << " trials=" << config.trials << "\n";
    }
    const ExperimentSummary summary = run_experiment(config);
    print_summaries({summary}, config.format);
    if (!config.quiet && !config.out.empty()) {
        std::cerr << "wrote " << config.out << " and " << summary_path_for(config.out) << "\n";
    }
    return 0;
}

int cmd_sweep(const ConfigFlags& flags, const CLI::App* app, const std::string& axis,
              const std::string& values_csv) {
    ExperimentConfig config = flags.resolve(app);
    std::vector<double> values;
    std::stringstream ss(values_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) values.push_back(std::stod(tok));
    }
    const auto rows = run_sweep(config, axis, values);
    if (!config.out.empty()) {
        std::ofstream out(config.out, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + config.out);
        if (config.format == OutputFormat::kJson) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& s : rows) j.push_back(summary_json(s));
            out << j.dump(2) << "\n";
        } else {
            write_summary_csv(out, rows);
        }
    }
    print_summaries(rows, config.format);
    return 0;
}

struct BoundArgs {
    double rounds = 0.0;
    double budget = 0.0;
    double p = 0.0;
    double nprime = 0.0;
    double delta_prime = 0.0;
    double n = 0.0;
    double delta = 0.0;
    double k = 0.0;
    double m = 0.0;
    double d = 0.0;
    std::string model;
    std::string format = "table";
};

int cmd_bound(const BoundArgs& args, const CLI::App* app) {
    std::vector<BoundReport> reports;
    std::vector<std::pair<std::string, double>> scalars;

    if (app->count("--nprime") && app->count("--delta_prime")) {
        reports.push_back(unified_bound(args.nprime, args.delta_prime, args.budget, args.rounds, args.p));
        scalars.push_back({"lower_bound_main_term", lower_bound_main_term(args.nprime, args.delta_prime,
                                                                          args.budget, args.rounds, args.p)});
        const SequencePrior prior =
            sequence_prior(args.nprime, args.delta_prime, args.budget, args.rounds);
        scalars.push_back({"sequence_prior_log2_exact", prior.log2_exact});
        scalars.push_back({"sequence_prior_log2_approx", prior.log2_approx});
        scalars.push_back({"sequence_prior_log2_gap", prior.log2_gap});
    }
    if (app->count("--model")) {
        ModelParams params;
        params.budget = args.budget;
        params.rounds = args.rounds;
        params.p = args.p;
        if (app->count("--n")) params.n = args.n;
        if (app->count("--delta")) params.delta = args.delta;
        if (app->count("--k")) params.k = args.k;
        if (app->count("--m")) params.m = args.m;
        reports.push_back(model_bound(parse_model_kind(args.model), params));
    }
    scalars.push_back({"clique_bound", clique_bound(args.rounds, args.budget, args.p)});
    scalars.push_back({"star_bound", star_bound(args.rounds, args.budget, args.p)});
    scalars.push_back({"star_exact", star_exact(args.rounds, args.budget, args.p)});
    scalars.push_back({"t_off_bound", t_off_bound(args.p)});
    if (app->count("--d") && args.p < 0.5) {
        scalars.push_back({"diameter_bound", diameter_bound(args.d, args.rounds, args.budget, args.p)});
        scalars.push_back({"hitting_bound", hitting_bound(args.d, args.p)});
    }
    scalars.push_back({"entropy_p", entropy(args.p)});
    scalars.push_back({"noise_factor", noise_factor(args.p)});

    if (args.format == "json") {
        nlohmann::json j;
        for (const auto& report : reports) {
            nlohmann::json r;
            r["value"] = report.value;
            r["scale"] = report.scale;
            for (const auto& [name, value] : report.inputs) r["inputs"][name] = value;
            for (const auto& [name, value] : report.components) r["components"][name] = value;
            j["reports"][report.name] = r;
        }
        for (const auto& [name, value] : scalars) j["figures"][name] = value;
        std::cout << j.dump(2) << "\n";
    } else if (args.format == "csv") {
        std::cout << "name,value,detail\n";
        for (const auto& report : reports) {
            std::string detail;
            for (const auto& [name, value] : report.components) {
                detail += (detail.empty() ? "" : ";") + name + "=" + format_double(value);
            }
            detail += ";scale=" + format_double(report.scale);
            std::cout << report.name << "," << format_double(report.value) << "," << detail << "\n";
        }
        for (const auto& [name, value] : scalars) {
            std::cout << name << "," << format_double(value) << ",\n";
        }
    } else {
        for (const auto& report : reports) {
            std::cout << report.name << " = " << format_double(report.value) << "\n";
            for (const auto& [name, value] : report.components) {
                std::cout << "    " << name << " = " << format_double(value) << "\n";
            }
            std::cout << "    scale = " << format_double(report.scale) << "\n";
        }
        for (const auto& [name, value] : scalars) {
            std::cout << name << " = " << format_double(value) << "\n";
        }
    }
    return 0;
}

int cmd_chain(const std::string& kind, int d, double p, double b, double rounds,
              const std::string& format, const std::string& out_path) {
    const ChainReport report = chain_report(parse_chain_kind(kind), d, p, b, rounds);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw IoError("cannot open output file: " + out_path);
        out = &file;
    }
    if (format == "csv") {
        write_chain_csv(*out, report.chain);
    } else if (format == "json") {
        *out << chain_report_json(report).dump(2) << "\n";
    } else {
        print_chain_report(*out, report);
    }
    return 0;
}

int cmd_graph(const ConfigFlags& flags, const CLI::App* app, const std::string& export_path,
              const std::string& export_transition_path) {
    ExperimentConfig config = flags.resolve(app);
    const FeedbackGraph g = build_feedback_graph(config);
    std::cout << "n " << g.vertex_count() << "\n"
              << "edges " << g.edges().size() << "\n"
              << "directed " << (g.directed() ? 1 : 0) << "\n"
              << "max_degree " << g.max_degree() << "\n"
              << "diameter " << format_double(g.diameter()) << "\n"
              << "center " << follow_feedback_init(g) << "\n";
    if (!export_path.empty()) {
        std::ofstream out(export_path, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + export_path);
        write_edge_list(out, g);
    }
    if (!export_transition_path.empty()) {
        const TransitionGraph tg = build_transition_graph(config, g);
        std::cout << "nprime " << tg.dup_count() << "\n"
                  << "max_out_degree " << tg.max_out_degree() << "\n"
                  << "move_prob " << format_double(tg.move_prob()) << "\n";
        std::ofstream out(export_transition_path, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + export_transition_path);
        write_transition(out, tg);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interactive learning of moving targets on graphs"};
    app.require_subcommand(1);

    ConfigFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "run one experiment configuration");
    run_flags.register_options(run_cmd, kRunKeys);

    ConfigFlags sweep_flags;
    std::string sweep_axis;
    std::string sweep_values;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep along one parameter axis");
    sweep_flags.register_options(sweep_cmd, kRunKeys);
    sweep_cmd->add_option("--axis", sweep_axis, "one of p,B,n,d,k,m")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated axis values")->required();

    BoundArgs bound_args;
    auto* bound_cmd = app.add_subcommand("bound", "evaluate the closed-form mistake bounds");
    bound_cmd->add_option("--R", bound_args.rounds, "rounds")->required();
    bound_cmd->add_option("--B", bound_args.budget, "move budget")->required();
    bound_cmd->add_option("--p", bound_args.p, "noise rate")->required();
    bound_cmd->add_option("--nprime", bound_args.nprime, "transition graph size n'");
    bound_cmd->add_option("--delta_prime", bound_args.delta_prime, "transition max out-degree");
    bound_cmd->add_option("--model", bound_args.model,
                          "drifting|shifting|shortest_path|m_neighborhood|complete");
    bound_cmd->add_option("--n", bound_args.n, "feedback graph size");
    bound_cmd->add_option("--delta", bound_args.delta, "feedback graph max degree");
    bound_cmd->add_option("--k", bound_args.k, "shifting subset size");
    bound_cmd->add_option("--m", bound_args.m, "neighborhood radius");
    bound_cmd->add_option("--d", bound_args.d, "graph diameter");
    bound_cmd->add_option("--format", bound_args.format, "table|csv|json");

    std::string chain_kind = "clique";
    int chain_d = 4;
    double chain_p = 0.1;
    double chain_b = 0.0;
    double chain_rounds = 10000.0;
    std::string chain_format = "table";
    std::string chain_out;
    auto* chain_cmd = app.add_subcommand("chain", "inspect a mistake Markov chain");
    chain_cmd->add_option("--kind", chain_kind, "clique|star|quasi_star|walk")->required();
    chain_cmd->add_option("--d", chain_d, "diameter / walk length");
    chain_cmd->add_option("--p", chain_p, "noise rate")->required();
    chain_cmd->add_option("--b", chain_b, "per-round move probability");
    chain_cmd->add_option("--R", chain_rounds, "rounds for R(1-pi_0)");
    chain_cmd->add_option("--format", chain_format, "table|csv|json");
    chain_cmd->add_option("--out", chain_out, "write the report to a file");

    ConfigFlags graph_flags;
    std::string graph_export;
    std::string graph_export_transition;
    auto* graph_cmd = app.add_subcommand("graph", "inspect or export a graph");
    graph_flags.register_options(graph_cmd, kRunKeys);
    graph_cmd->add_option("--export", graph_export, "write the edge list to a file");
    graph_cmd->add_option("--export_transition", graph_export_transition,
                          "write the model's transition graph to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_flags, run_cmd);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_flags, sweep_cmd, sweep_axis, sweep_values);
        if (bound_cmd->parsed()) return cmd_bound(bound_args, bound_cmd);
        if (chain_cmd->parsed()) {
            return cmd_chain(chain_kind, chain_d, chain_p, chain_b, chain_rounds, chain_format,
                             chain_out);
        }
        if (graph_cmd->parsed()) {
            return cmd_graph(graph_flags, graph_cmd, graph_export, graph_export_transition);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
