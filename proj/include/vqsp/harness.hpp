#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vqsp/ansatz.hpp"
#include "vqsp/optimizers.hpp"
#include "vqsp/stats.hpp"
#include "vqsp/targets.hpp"

namespace vqsp {

enum class ExperimentKind { TrainOnce, SweepN, SweepL, BpVariance, NoiseSweep, DepthReport };

[[nodiscard]] std::string_view to_string(ExperimentKind kind);
/// Accepts the snake_case names ("sweep_N" etc.) and the CLI subcommand names.
[[nodiscard]] ExperimentKind experiment_kind_from_string(std::string_view name);
[[nodiscard]] std::string_view subcommand_name(ExperimentKind kind);

struct FigureMapping {
    std::string figure;
    ExperimentKind kind;
    std::string description;
};

/// Figure and table labels with the experiment that produces each.
[[nodiscard]] const std::vector<FigureMapping> &figure_mappings();

enum class OutputFormat { Json, Csv };

struct TargetSpec {
    TargetName name = TargetName::GHZ;
    std::size_t n_qubits = 3;

    bool operator==(const TargetSpec &) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::TrainOnce;

    TargetName target = TargetName::GHZ;
    /// Amplitude file for the custom target.
    std::string target_file;
    std::size_t n_qubits = 3;
    AnsatzKind ansatz = AnsatzKind::G2;
    std::size_t layers = 1;

    std::string optimizer = "adam";
    double learning_rate = 0.1;
    double regularization = 1e-3;

    bool shots_mode = false;
    std::uint64_t shots = 10000;
    std::size_t iterations = 100;
    std::size_t repeats = 10;
    std::optional<double> convergence_threshold;

    /// Register sizes for sweep_N and bp_variance.
    std::vector<std::size_t> qubits_list;
    /// Layer counts for sweep_L.
    std::vector<std::size_t> layers_list;

    std::vector<double> epsilons;
    bool mitigate = false;
    std::uint64_t calibration_shots = 10000;
    /// Directory to write calibration matrices to, or read them from.
    std::string calibration_out;
    std::string calibration_in;

    std::size_t bp_samples = 200;
    std::size_t bp_param_index = 0;

    std::vector<TargetSpec> depth_targets;
    std::vector<AnsatzConfig> depth_ansatze;
    double depth_success_threshold = 0.05;

    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::string output;
    OutputFormat format = OutputFormat::Json;

    /// Fills experiment-specific defaults for empty lists, then checks that
    /// the fields fit the experiment kind. Throws ValidationError.
    void validate();
    [[nodiscard]] OptimizerConfig optimizer_config() const;

    bool operator==(const ExperimentConfig &) const = default;
};

/// "2,3,5" or a range "2..8" (inclusive), or a mix such as "2..4,7".
[[nodiscard]] std::vector<std::size_t> parse_size_list(std::string_view text);
/// Comma-separated reals.
[[nodiscard]] std::vector<double> parse_double_list(std::string_view text);
/// "ghz:3".
[[nodiscard]] TargetSpec parse_target_spec(std::string_view text);
/// "kind:N:L", e.g. "g2_gn:3:2".
[[nodiscard]] AnsatzConfig parse_ansatz_spec(std::string_view text);

/// Reads an INI-style config ("key = value" lines in sections). Unknown keys
/// are rejected.
ExperimentConfig read_config(std::istream &in);
ExperimentConfig load_config(const std::string &path);

/// Seed for repeat `repeat` derived from the base seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t base, std::uint64_t repeat);

struct RepeatRecord {
    std::size_t repeat = 0;
    std::uint64_t seed = 0;
    TrainingTrace trace;

    bool operator==(const RepeatRecord &) const = default;
};

struct SweepPoint {
    std::size_t n_qubits = 0;
    std::size_t layers = 0;
    double epsilon = 0.0;
    bool mitigated = false;
    std::optional<double> condition_number;
    std::vector<RepeatRecord> repeats;
    /// Final cost in the run's evaluation mode, and the exact distance at
    /// the final parameters.
    Summary final_cost;
    Summary final_exact_cost;

    bool operator==(const SweepPoint &) const = default;
};

struct BpPoint {
    std::size_t n_qubits = 0;
    double variance = 0.0;

    bool operator==(const BpPoint &) const = default;
};

struct DepthRow {
    TargetName target = TargetName::GHZ;
    std::size_t n_qubits = 0;
    AnsatzKind ansatz = AnsatzKind::G2;
    std::size_t layers = 0;
    std::size_t n_params = 0;
    std::size_t ansatz_depth = 0;
    std::size_t formula_depth = 0;
    std::optional<std::size_t> target_depth;
    double best_cost = 1.0;
    bool reached = false;

    bool operator==(const DepthRow &) const = default;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<SweepPoint> points;
    std::vector<BpPoint> bp_points;
    std::optional<LinearFit> bp_fit;
    std::vector<DepthRow> depth_rows;
    /// Spearman correlation of mean final cost against N (sweep_N) or L (sweep_L).
    std::optional<double> trend;
    std::string tool_version;
    double wall_time_s = 0.0;

    bool operator==(const ExperimentResult &) const = default;
};

/// Executes the experiment. Independent (point, repeat) tasks run on up to
/// config.jobs threads; results are assembled in config order, so output
/// does not depend on the job count.
ExperimentResult run(ExperimentConfig config);

/// Builds the depth table for every (target, ansatz) pair with matching N.
/// Training success is the best exact cost over `repeats` seeded exact-mode
/// runs with the configured optimizer.
std::vector<DepthRow> depth_report(const std::vector<TargetSpec> &targets, const std::vector<AnsatzConfig> &ansatze,
                                   const ExperimentConfig &training);

[[nodiscard]] std::string to_json(const ExperimentResult &result, int indent = 2);
[[nodiscard]] ExperimentResult result_from_json(std::string_view text);
/// Training points: one row per (point, repeat, iteration). bp_variance: one
/// row per N. depth_report: one row per table entry.
[[nodiscard]] std::string to_csv(const ExperimentResult &result);

/// Writes JSON or CSV according to config.format; to stdout if the path is empty.
void emit(const ExperimentResult &result, const std::string &path, OutputFormat format);

[[nodiscard]] std::string format_depth_table(const std::vector<DepthRow> &rows);

} // namespace vqsp
