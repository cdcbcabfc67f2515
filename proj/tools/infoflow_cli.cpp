// Command-line front end: validate, evaluate, simulate, sweep, rank.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "infoflow/errors.hpp"
#include "infoflow/io.hpp"
#include "infoflow/network.hpp"
#include "infoflow/sensitivity.hpp"
#include "infoflow/simulation.hpp"

namespace {

using namespace infoflow;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string network;
    std::string output;
    io::Format format = io::Format::Json;
    std::size_t threads = 0;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const CommonOptions& opts, const std::string& report, const std::string& human) {
    if (opts.output.empty()) {
        std::cout << report;
        return;
    }
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) throw UsageError("cannot write " + opts.output);
    out << report;
    if (!out.flush()) throw UsageError("failed writing " + opts.output);
    std::cout << human;
}

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("network", opts.network, "Network document (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--output,-o", opts.output, "Write the report here instead of stdout");
    cmd->add_option("--format", opts.format, "Report format")
        ->transform(CLI::CheckedTransformer(std::map<std::string, io::Format>{{"json", io::Format::Json},
                                                                              {"csv", io::Format::Csv}}));
    cmd->add_option("--threads", opts.threads, "Worker threads (0: INFOFLOW_THREADS or all cores)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Information-flow effectiveness analysis on absorbing Markov chains"};
    app.require_subcommand(1);

    CommonOptions opts;
    PlugInMode eval_mode = PlugInMode::RawFrequency;
    SweepMode sweep_mode = SweepMode::MonteCarlo;
    std::size_t iterations = 1000;
    std::uint64_t seed = 0;
    std::size_t bins = kDefaultBins;
    std::string stakeholder;
    double increment = 1.0;

    const std::map<std::string, PlugInMode> eval_modes{{"raw", PlugInMode::RawFrequency},
                                                       {"posterior-mean", PlugInMode::PosteriorMean}};
    const std::map<std::string, SweepMode> sweep_modes{{"mc", SweepMode::MonteCarlo}, {"plugin", SweepMode::PlugIn}};

    auto* validate_cmd = app.add_subcommand("validate", "Check a network document");
    add_common(validate_cmd, opts);

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Plug-in absorption probabilities");
    add_common(evaluate_cmd, opts);
    evaluate_cmd->add_option("--mode", eval_mode, "raw | posterior-mean")
        ->transform(CLI::CheckedTransformer(eval_modes));

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo over posterior chains");
    add_common(simulate_cmd, opts);
    simulate_cmd->add_option("--iterations", iterations)->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", seed)->required();
    simulate_cmd->add_option("--bins", bins, "Histogram bins over [0,1]")->check(CLI::PositiveNumber);

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one stakeholder's discarded flow");
    add_common(sweep_cmd, opts);
    sweep_cmd->add_option("--stakeholder", stakeholder)->required();
    sweep_cmd->add_option("--iterations", iterations)->required()->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--seed", seed)->required();
    sweep_cmd->add_option("--mode", sweep_mode, "mc | plugin")->transform(CLI::CheckedTransformer(sweep_modes));
    sweep_cmd->add_option("--increment", increment)->check(CLI::PositiveNumber);

    auto* rank_cmd = app.add_subcommand("rank", "Rank stakeholders by impact ratio");
    add_common(rank_cmd, opts);
    rank_cmd->add_option("--iterations", iterations)->required()->check(CLI::PositiveNumber);
    rank_cmd->add_option("--seed", seed)->required();
    rank_cmd->add_option("--mode", sweep_mode, "mc | plugin")->transform(CLI::CheckedTransformer(sweep_modes));
    rank_cmd->add_option("--increment", increment)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const std::string bytes = read_file(opts.network);
        io::ReportHeader header{"", io::input_digest(bytes), std::nullopt, std::nullopt};

        if (validate_cmd->parsed()) {
            header.command = "validate";
            const NetworkSpec spec = io::parse_network_document(bytes);
            const ValidationReport report = validate(spec);
            for (const auto& v : report.violations) std::cerr << "violation: " << v.message << "\n";
            emit(opts, io::validation_report(header, report, opts.format),
                 report.ok() ? "valid\n" : std::to_string(report.violations.size()) + " violation(s)\n");
            return report.ok() ? kExitOk : kExitInvalid;
        }

        const NetworkSpec spec = io::parse_network(bytes);

        if (evaluate_cmd->parsed()) {
            header.command = "evaluate";
            const AbsorptionResult res = absorption_probabilities(plug_in_chain(spec, eval_mode));
            const std::size_t s = *spec.index_of(spec.start);
            emit(opts, io::evaluation_report(header, spec, eval_mode, res, opts.format),
                 "P_DI " + fixed3(res.b(s, 0)) + "  P_S " + fixed3(res.b(s, 1)) + "  P_US " + fixed3(res.b(s, 2)) +
                     "\n");
        } else if (simulate_cmd->parsed()) {
            header.command = "simulate";
            header.seed = seed;
            header.iterations = iterations;
            const SimulationSummary summary = run(spec, iterations, seed, {bins, opts.threads});
            emit(opts, io::simulation_report(header, spec, summary, opts.format),
                 "mean P_S " + fixed3(summary.mean_s) + " (sd " + fixed3(summary.std_s) + "), mean P_US " +
                     fixed3(summary.mean_us) + ", mean P_DI " + fixed3(summary.mean_di) + "\n");
        } else if (sweep_cmd->parsed()) {
            header.command = "sweep";
            header.seed = seed;
            header.iterations = iterations;
            const SweepResult sweep =
                sweep_ineffective(spec, stakeholder, iterations, seed, sweep_mode, {increment, opts.threads});
            emit(opts, io::sweep_report(header, sweep, sweep_mode, opts.format),
                 stakeholder + ": P_S " + fixed3(sweep.p_s_at_min_di) + " -> " + fixed3(sweep.p_s_at_max_di) +
                     ", impact ratio " + io::format_double(sweep.impact_ratio) + "\n");
        } else if (rank_cmd->parsed()) {
            header.command = "rank";
            header.seed = seed;
            header.iterations = iterations;
            const auto ranking = rank_stakeholders(spec, iterations, seed, sweep_mode, {increment, opts.threads});
            std::ostringstream human;
            for (std::size_t k = 0; k < ranking.size(); ++k)
                human << k + 1 << ". " << ranking[k].stakeholder << "  " << fixed3(ranking[k].sweep.p_s_at_min_di)
                      << " -> " << fixed3(ranking[k].sweep.p_s_at_max_di) << "  ratio "
                      << io::format_double(ranking[k].impact_ratio) << "\n";
            emit(opts, io::ranking_report(header, ranking, sweep_mode, opts.format), human.str());
        }
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownStakeholderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
