#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "vqsp/errors.hpp"
#include "vqsp/harness.hpp"

using namespace vqsp;

namespace {

struct Flags {
    std::string config;
    std::string target;
    std::string target_file;
    std::string ansatz;
    std::string qubits;
    std::string layers;
    std::string optimizer;
    double learning_rate = 0.0;
    double regularization = 0.0;
    std::string mode;
    std::uint64_t shots = 0;
    std::size_t iterations = 0;
    std::size_t repeats = 0;
    double threshold = 0.0;
    std::string eps;
    bool mitigate = false;
    std::uint64_t calibration_shots = 0;
    std::string calibration_in;
    std::string calibration_out;
    std::size_t samples = 0;
    std::size_t param_index = 0;
    std::string depth_targets;
    std::string depth_ansatze;
    std::uint64_t seed = 0;
    std::size_t jobs = 0;
    std::string out;
    std::string format;
    bool quiet = false;
};

ExperimentConfig defaults_for(ExperimentKind kind) {
    ExperimentConfig c;
    c.kind = kind;
    switch (kind) {
    case ExperimentKind::SweepN:
    case ExperimentKind::BpVariance:
        c.layers = 2;
        break;
    case ExperimentKind::SweepL:
        c.n_qubits = 8;
        break;
    case ExperimentKind::NoiseSweep:
        c.n_qubits = 5;
        c.layers = 2;
        c.optimizer = "qng";
        c.shots_mode = true;
        break;
    default:
        break;
    }
    return c;
}

void add_common(CLI::App &sub, Flags &f, ExperimentKind kind) {
    sub.add_option("--config", f.config, "INI config file; flags given on the command line win");
    sub.add_option("--seed", f.seed, "Base seed");
    sub.add_option("--jobs,-j", f.jobs, "Worker threads");
    sub.add_option("--out,-o", f.out, "Output file (stdout when omitted)");
    sub.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub.add_flag("--quiet,-q", f.quiet, "No summary on stderr");
    if (kind == ExperimentKind::DepthReport) {
        sub.add_option("--targets", f.depth_targets, "Comma-separated name:N list, e.g. ghz:3,w:3");
        sub.add_option("--ansatze", f.depth_ansatze, "Comma-separated kind:N:L list, e.g. g2:3:1,g2_gn:3:2");
        sub.add_option("--optimizer", f.optimizer, "adam or qng");
        sub.add_option("--iters", f.iterations, "Training iterations per run");
        sub.add_option("--repeats", f.repeats, "Training runs per table entry");
        return;
    }
    sub.add_option("--target", f.target, "ghz, w, ame or custom");
    sub.add_option("--target-file", f.target_file, "Amplitude file for --target custom");
    sub.add_option("--ansatz", f.ansatz, "g2, g2_gn or g2_gn_w");
    const bool qubit_list = kind == ExperimentKind::SweepN || kind == ExperimentKind::BpVariance;
    sub.add_option("--qubits,-n", f.qubits, qubit_list ? "Register sizes, e.g. 2..8 or 2,4,6" : "Register size");
    sub.add_option("--layers,-l", f.layers,
                   kind == ExperimentKind::SweepL ? "Layer counts, e.g. 1..5" : "Number of ansatz layers");
    if (kind == ExperimentKind::BpVariance) {
        sub.add_option("--samples", f.samples, "Random parameter draws per N");
        sub.add_option("--param-index", f.param_index, "Parameter whose derivative is sampled");
        return;
    }
    sub.add_option("--optimizer", f.optimizer, "adam or qng");
    sub.add_option("--lr", f.learning_rate, "Learning rate");
    sub.add_option("--lambda", f.regularization, "QNG metric regularization");
    sub.add_option("--mode", f.mode, "exact or shots")->check(CLI::IsMember({"exact", "shots"}));
    sub.add_option("--shots", f.shots, "Shots per circuit evaluation");
    sub.add_option("--iters", f.iterations, "Training iterations");
    sub.add_option("--repeats", f.repeats, "Independent runs per point");
    sub.add_option("--threshold", f.threshold, "Stop a run once its cost falls below this");
    if (kind == ExperimentKind::NoiseSweep) {
        sub.add_option("--eps", f.eps, "Readout error rates, e.g. 0.01,0.02,0.03,0.04");
        sub.add_flag("--mitigate", f.mitigate, "Also run with calibration-matrix mitigation");
        sub.add_option("--calibration-shots", f.calibration_shots, "Shots per calibration circuit");
        sub.add_option("--calibration-out", f.calibration_out, "Directory to export calibration matrices to");
        sub.add_option("--calibration-in", f.calibration_in, "Directory to import calibration matrices from");
    }
}

bool given(const CLI::App &sub, const std::string &name) {
    try {
        return sub.count(name) > 0;
    } catch (const CLI::OptionNotFound &) {
        return false;
    }
}

ExperimentConfig build_config(const CLI::App &sub, const Flags &f, ExperimentKind kind) {
    ExperimentConfig c = f.config.empty() ? defaults_for(kind) : load_config(f.config);
    c.kind = kind;
    if (kind == ExperimentKind::NoiseSweep && !given(sub, "--mode")) {
        c.shots_mode = true;
    }
    const bool qubit_list = kind == ExperimentKind::SweepN || kind == ExperimentKind::BpVariance;
    if (given(sub, "--target")) {
        c.target = target_name_from_string(f.target);
    }
    if (given(sub, "--target-file")) {
        c.target_file = f.target_file;
    }
    if (given(sub, "--ansatz")) {
        c.ansatz = ansatz_kind_from_string(f.ansatz);
    }
    if (given(sub, "--qubits")) {
        const auto list = parse_size_list(f.qubits);
        if (qubit_list) {
            c.qubits_list = list;
        } else if (list.size() == 1) {
            c.n_qubits = list.front();
        } else {
            throw ValidationError("--qubits takes a single value for this experiment");
        }
    }
    if (given(sub, "--layers")) {
        const auto list = parse_size_list(f.layers);
        if (kind == ExperimentKind::SweepL) {
            c.layers_list = list;
        } else if (list.size() == 1) {
            c.layers = list.front();
        } else {
            throw ValidationError("--layers takes a single value for this experiment");
        }
    }
    if (given(sub, "--optimizer")) {
        c.optimizer = f.optimizer;
    }
    if (given(sub, "--lr")) {
        c.learning_rate = f.learning_rate;
    }
    if (given(sub, "--lambda")) {
        c.regularization = f.regularization;
    }
    if (given(sub, "--mode")) {
        c.shots_mode = f.mode == "shots";
    }
    if (given(sub, "--shots")) {
        c.shots = f.shots;
    }
    if (given(sub, "--iters")) {
        c.iterations = f.iterations;
    }
    if (given(sub, "--repeats")) {
        c.repeats = f.repeats;
    }
    if (given(sub, "--threshold")) {
        c.convergence_threshold = f.threshold;
    }
    if (given(sub, "--eps")) {
        c.epsilons = parse_double_list(f.eps);
    }
    if (given(sub, "--mitigate")) {
        c.mitigate = f.mitigate;
    }
    if (given(sub, "--calibration-shots")) {
        c.calibration_shots = f.calibration_shots;
    }
    if (given(sub, "--calibration-in")) {
        c.calibration_in = f.calibration_in;
    }
    if (given(sub, "--calibration-out")) {
        c.calibration_out = f.calibration_out;
    }
    if (given(sub, "--samples")) {
        c.bp_samples = f.samples;
    }
    if (given(sub, "--param-index")) {
        c.bp_param_index = f.param_index;
    }
    if (given(sub, "--targets")) {
        c.depth_targets.clear();
        std::stringstream ss(f.depth_targets);
        for (std::string item; std::getline(ss, item, ',');) {
            c.depth_targets.push_back(parse_target_spec(item));
        }
    }
    if (given(sub, "--ansatze")) {
        c.depth_ansatze.clear();
        std::stringstream ss(f.depth_ansatze);
        for (std::string item; std::getline(ss, item, ',');) {
            c.depth_ansatze.push_back(parse_ansatz_spec(item));
        }
    }
    if (given(sub, "--seed")) {
        c.seed = f.seed;
    }
    if (given(sub, "--jobs")) {
        c.jobs = f.jobs;
    }
    if (given(sub, "--out")) {
        c.output = f.out;
    }
    if (given(sub, "--format")) {
        c.format = f.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    }
    return c;
}

void print_experiments() {
    std::cout << std::left << std::setw(14) << "figure" << std::setw(14) << "experiment" << std::setw(10)
              << "command" << "description\n";
    for (const auto &m : figure_mappings()) {
        std::cout << std::setw(14) << m.figure << std::setw(14) << to_string(m.kind) << std::setw(10)
                  << subcommand_name(m.kind) << m.description << '\n';
    }
}

void print_summary(const ExperimentResult &r) {
    auto &err = std::cerr;
    err << std::fixed << std::setprecision(4);
    std::set<std::string> warnings;
    for (const auto &p : r.points) {
        err << "N=" << p.n_qubits << " L=" << p.layers;
        if (r.config.kind == ExperimentKind::NoiseSweep) {
            err << " eps=" << p.epsilon << (p.mitigated ? " mitigated" : "");
        }
        err << "  cost " << p.final_cost.mean << " +- " << p.final_cost.std << "  exact " << p.final_exact_cost.mean
            << " +- " << p.final_exact_cost.std << '\n';
        for (const auto &rep : p.repeats) {
            warnings.insert(rep.trace.warnings.begin(), rep.trace.warnings.end());
            if (rep.trace.error) {
                err << "  repeat " << rep.repeat << " failed: " << *rep.trace.error << '\n';
            }
        }
    }
    for (const auto &p : r.bp_points) {
        err << "N=" << p.n_qubits << "  var " << std::scientific << p.variance << std::fixed << '\n';
    }
    if (r.bp_fit) {
        err << "slope " << r.bp_fit->slope << " +- " << r.bp_fit->slope_stderr << "  intercept " << r.bp_fit->intercept
            << "  R^2 " << r.bp_fit->r_squared << '\n';
    }
    if (r.trend) {
        err << "spearman " << *r.trend << '\n';
    }
    if (!r.depth_rows.empty()) {
        err << format_depth_table(r.depth_rows);
    }
    for (const auto &w : warnings) {
        err << "warning: " << w << '\n';
    }
    err << "wall time " << r.wall_time_s << " s\n";
}

bool any_failed(const ExperimentResult &r) {
    for (const auto &p : r.points) {
        for (const auto &rep : p.repeats) {
            if (rep.trace.error) {
                return true;
            }
        }
    }
    return false;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational quantum state preparation experiments"};
    app.set_version_flag("--version", std::string(VQSP_VERSION));
    bool list = false;
    app.add_flag("--list-experiments", list, "Print the figure to experiment mapping");
    app.require_subcommand(0, 1);

    const std::pair<ExperimentKind, const char *> kinds[] = {
        {ExperimentKind::TrainOnce, "Train one configuration"},
        {ExperimentKind::SweepN, "Distance versus number of qubits"},
        {ExperimentKind::SweepL, "Distance versus number of layers"},
        {ExperimentKind::BpVariance, "Gradient variance versus number of qubits"},
        {ExperimentKind::NoiseSweep, "Readout noise sweep, optionally mitigated"},
        {ExperimentKind::DepthReport, "Parameter count and depth table"},
    };
    Flags flags;
    std::vector<std::pair<CLI::App *, ExperimentKind>> subs;
    for (const auto &[kind, help] : kinds) {
        auto *sub = app.add_subcommand(std::string(subcommand_name(kind)), help);
        add_common(*sub, flags, kind);
        subs.emplace_back(sub, kind);
    }
    auto *list_sub = app.add_subcommand("list-experiments", "Print the figure to experiment mapping");

    CLI11_PARSE(app, argc, argv);

    if (list || list_sub->parsed()) {
        print_experiments();
        return 0;
    }
    try {
        for (const auto &[sub, kind] : subs) {
            if (!sub->parsed()) {
                continue;
            }
            const auto config = build_config(*sub, flags, kind);
            const auto result = run(config);
            emit(result, result.config.output, result.config.format);
            if (!flags.quiet) {
                print_summary(result);
            }
            return any_failed(result) ? 3 : 0;
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CapacityError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << app.help();
    return 1;
}
