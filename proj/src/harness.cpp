#include "vqsp/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vqsp/errors.hpp"
#include "vqsp/rng.hpp"

namespace vqsp {

namespace {

using json = nlohmann::json;

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)> &body) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) {
            threads.emplace_back(worker);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

TargetUnitary target_unitary(const TargetState &target) {
    if (target.name != TargetName::Custom) {
        if (auto circuit = target_circuit(target.name, target.state.n_qubits())) {
            return TargetUnitary::from_circuit(std::move(*circuit));
        }
    }
    return completed_unitary(target);
}

TargetState load_target(const ExperimentConfig &config, std::size_t n) {
    if (config.target == TargetName::Custom) {
        return load_custom_target(config.target_file, n);
    }
    return make_target(config.target, n);
}

std::string calibration_path(const std::string &dir, double epsilon) {
    std::ostringstream name;
    name << "calibration_eps" << epsilon << ".txt";
    return (std::filesystem::path(dir) / name.str()).string();
}

struct PointPlan {
    SweepPoint point;
    std::shared_ptr<const TargetUnitary> target;
    std::optional<CalibrationMatrix> calibration;
};

void summarize_point(SweepPoint &p) {
    std::vector<double> shot;
    std::vector<double> exact;
    for (const auto &r : p.repeats) {
        shot.push_back(r.trace.final_cost());
        exact.push_back(r.trace.final_exact_cost);
    }
    p.final_cost = summarize(shot);
    p.final_exact_cost = summarize(exact);
}

void run_training(const ExperimentConfig &config, std::vector<PointPlan> &plans) {
    const auto optimizer = config.optimizer_config();
    for (auto &plan : plans) {
        plan.point.repeats.resize(config.repeats);
    }
    parallel_for(plans.size() * config.repeats, config.jobs, [&](std::size_t task) {
        auto &plan = plans[task / config.repeats];
        const std::size_t repeat = task % config.repeats;
        const std::uint64_t seed = derive_seed(config.seed, repeat);
        auto &record = plan.point.repeats[repeat];
        record.repeat = repeat;
        record.seed = seed;

        EvaluationMode mode = ExactMode{};
        if (config.shots_mode) {
            mode = ShotsMode{config.shots, seed};
        }
        CostContext ctx(build_ansatz({config.ansatz, plan.point.n_qubits, plan.point.layers}), *plan.target, mode);
        if (plan.point.epsilon > 0.0) {
            ctx.with_noise(ReadoutNoiseModel{plan.point.epsilon, {}});
        }
        TrainOptions options;
        options.iterations = config.iterations;
        options.seed = seed;
        options.convergence_threshold = config.convergence_threshold;
        try {
            if (plan.point.mitigated) {
                ctx.with_mitigation(*plan.calibration);
            }
        } catch (const NumericError &e) {
            record.trace.error = e.what();
            return;
        }
        record.trace = train(ctx, optimizer, options);
    });
    for (auto &plan : plans) {
        summarize_point(plan.point);
    }
}

std::vector<SweepPoint> collect(std::vector<PointPlan> &plans) {
    std::vector<SweepPoint> points;
    points.reserve(plans.size());
    for (auto &plan : plans) {
        points.push_back(std::move(plan.point));
    }
    return points;
}

std::optional<double> trend(const std::vector<SweepPoint> &points, bool by_qubits) {
    if (points.size() < 2) {
        return std::nullopt;
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &p : points) {
        x.push_back(static_cast<double>(by_qubits ? p.n_qubits : p.layers));
        y.push_back(p.final_cost.mean);
    }
    return spearman(x, y);
}

std::vector<PointPlan> training_plans(const ExperimentConfig &config) {
    std::vector<PointPlan> plans;
    auto add = [&](std::size_t n, std::size_t l, std::shared_ptr<const TargetUnitary> target) {
        PointPlan plan;
        plan.point.n_qubits = n;
        plan.point.layers = l;
        plan.target = std::move(target);
        plans.push_back(std::move(plan));
    };
    auto unitary = [&](std::size_t n) {
        return std::make_shared<const TargetUnitary>(target_unitary(load_target(config, n)));
    };
    switch (config.kind) {
    case ExperimentKind::TrainOnce:
    case ExperimentKind::NoiseSweep:
        add(config.n_qubits, config.layers, unitary(config.n_qubits));
        break;
    case ExperimentKind::SweepN:
        for (auto n : config.qubits_list) {
            add(n, config.layers, unitary(n));
        }
        break;
    case ExperimentKind::SweepL: {
        const auto target = unitary(config.n_qubits);
        for (auto l : config.layers_list) {
            add(config.n_qubits, l, target);
        }
        break;
    }
    default:
        break;
    }
    return plans;
}

void add_noise_points(const ExperimentConfig &config, std::vector<PointPlan> &plans) {
    const PointPlan baseline = plans.front();
    for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
        const double eps = config.epsilons[i];
        PointPlan noisy = baseline;
        noisy.point.epsilon = eps;
        plans.push_back(noisy);
        if (!config.mitigate) {
            continue;
        }
        CalibrationMatrix cal;
        if (!config.calibration_in.empty()) {
            cal = load_calibration(calibration_path(config.calibration_in, eps));
            if (cal.n_qubits != config.n_qubits) {
                throw ValidationError("imported calibration is for " + std::to_string(cal.n_qubits) + " qubits");
            }
        } else {
            auto rng = make_rng({config.seed, 0xCA1Bu, i});
            cal = build_calibration_matrix(config.n_qubits, ReadoutNoiseModel{eps, {}}, config.calibration_shots,
                                           rng());
        }
        if (!config.calibration_out.empty()) {
            std::filesystem::create_directories(config.calibration_out);
            save_calibration(calibration_path(config.calibration_out, eps), cal);
        }
        PointPlan mitigated = baseline;
        mitigated.point.epsilon = eps;
        mitigated.point.mitigated = true;
        try {
            mitigated.point.condition_number = Mitigator(cal).condition_number();
        } catch (const MitigationError &e) {
            mitigated.point.condition_number = e.condition_number();
        }
        mitigated.calibration = std::move(cal);
        plans.push_back(std::move(mitigated));
    }
}

void run_bp(const ExperimentConfig &config, ExperimentResult &result) {
    result.bp_points.resize(config.qubits_list.size());
    parallel_for(config.qubits_list.size(), config.jobs, [&](std::size_t i) {
        const auto n = config.qubits_list[i];
        const auto target = target_unitary(load_target(config, n));
        const auto ansatz = build_ansatz({config.ansatz, n, config.layers});
        result.bp_points[i] = BpPoint{
            n, gradient_variance(ansatz, target, config.bp_param_index, config.bp_samples, derive_seed(config.seed, n))};
    });
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &p : result.bp_points) {
        if (p.variance > 0.0) {
            x.push_back(static_cast<double>(p.n_qubits));
            y.push_back(std::log(p.variance));
        }
    }
    if (x.size() >= 3) {
        result.bp_fit = fit_line(x, y);
    }
}

// JSON helpers

template <typename T> json opt(const std::optional<T> &v) { return v ? json(*v) : json(nullptr); }

template <typename T> std::optional<T> get_opt(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<T>();
}

std::string format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

json config_to_json(const ExperimentConfig &c) {
    json targets = json::array();
    for (const auto &t : c.depth_targets) {
        targets.push_back(std::string(to_string(t.name)) + ":" + std::to_string(t.n_qubits));
    }
    json ansatze = json::array();
    for (const auto &a : c.depth_ansatze) {
        ansatze.push_back(std::string(to_string(a.kind)) + ":" + std::to_string(a.n_qubits) + ":" +
                          std::to_string(a.layers));
    }
    return json{
        {"kind", to_string(c.kind)},
        {"target", to_string(c.target)},
        {"target_file", c.target_file},
        {"n_qubits", c.n_qubits},
        {"ansatz", to_string(c.ansatz)},
        {"layers", c.layers},
        {"optimizer", c.optimizer},
        {"learning_rate", c.learning_rate},
        {"regularization", c.regularization},
        {"mode", c.shots_mode ? "shots" : "exact"},
        {"shots", c.shots},
        {"iterations", c.iterations},
        {"repeats", c.repeats},
        {"convergence_threshold", opt(c.convergence_threshold)},
        {"qubits_list", c.qubits_list},
        {"layers_list", c.layers_list},
        {"epsilons", c.epsilons},
        {"mitigate", c.mitigate},
        {"calibration_shots", c.calibration_shots},
        {"calibration_in", c.calibration_in},
        {"calibration_out", c.calibration_out},
        {"bp_samples", c.bp_samples},
        {"bp_param_index", c.bp_param_index},
        {"depth_targets", targets},
        {"depth_ansatze", ansatze},
        {"depth_success_threshold", c.depth_success_threshold},
        {"seed", c.seed},
        {"jobs", c.jobs},
        {"output", c.output},
        {"format", format_name(c.format)},
    };
}

ExperimentConfig config_from_json(const json &j) {
    ExperimentConfig c;
    c.kind = experiment_kind_from_string(j.at("kind").get<std::string>());
    c.target = target_name_from_string(j.at("target").get<std::string>());
    c.target_file = j.at("target_file").get<std::string>();
    c.n_qubits = j.at("n_qubits").get<std::size_t>();
    c.ansatz = ansatz_kind_from_string(j.at("ansatz").get<std::string>());
    c.layers = j.at("layers").get<std::size_t>();
    c.optimizer = j.at("optimizer").get<std::string>();
    c.learning_rate = j.at("learning_rate").get<double>();
    c.regularization = j.at("regularization").get<double>();
    c.shots_mode = j.at("mode").get<std::string>() == "shots";
    c.shots = j.at("shots").get<std::uint64_t>();
    c.iterations = j.at("iterations").get<std::size_t>();
    c.repeats = j.at("repeats").get<std::size_t>();
    c.convergence_threshold = get_opt<double>(j, "convergence_threshold");
    c.qubits_list = j.at("qubits_list").get<std::vector<std::size_t>>();
    c.layers_list = j.at("layers_list").get<std::vector<std::size_t>>();
    c.epsilons = j.at("epsilons").get<std::vector<double>>();
    c.mitigate = j.at("mitigate").get<bool>();
    c.calibration_shots = j.at("calibration_shots").get<std::uint64_t>();
    c.calibration_in = j.at("calibration_in").get<std::string>();
    c.calibration_out = j.at("calibration_out").get<std::string>();
    c.bp_samples = j.at("bp_samples").get<std::size_t>();
    c.bp_param_index = j.at("bp_param_index").get<std::size_t>();
    for (const auto &t : j.at("depth_targets")) {
        c.depth_targets.push_back(parse_target_spec(t.get<std::string>()));
    }
    for (const auto &a : j.at("depth_ansatze")) {
        c.depth_ansatze.push_back(parse_ansatz_spec(a.get<std::string>()));
    }
    c.depth_success_threshold = j.at("depth_success_threshold").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.jobs = j.at("jobs").get<std::size_t>();
    c.output = j.at("output").get<std::string>();
    c.format = j.at("format").get<std::string>() == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    return c;
}

json summary_to_json(const Summary &s) { return json{{"mean", s.mean}, {"std", s.std}}; }
Summary summary_from_json(const json &j) { return Summary{j.at("mean").get<double>(), j.at("std").get<double>()}; }

json trace_to_json(const TrainingTrace &t) {
    return json{
        {"cost_history", t.cost_history},
        {"theta_initial", t.theta_initial},
        {"theta_final", t.theta_final},
        {"iterations_run", t.iterations_run},
        {"final_cost", t.final_cost()},
        {"final_exact_cost", t.final_exact_cost},
        {"wall_time_s", t.wall_time_s},
        {"error", opt(t.error)},
        {"warnings", t.warnings},
    };
}

TrainingTrace trace_from_json(const json &j) {
    TrainingTrace t;
    t.cost_history = j.at("cost_history").get<std::vector<double>>();
    t.theta_initial = j.at("theta_initial").get<std::vector<double>>();
    t.theta_final = j.at("theta_final").get<std::vector<double>>();
    t.iterations_run = j.at("iterations_run").get<std::size_t>();
    t.final_exact_cost = j.at("final_exact_cost").get<double>();
    t.wall_time_s = j.at("wall_time_s").get<double>();
    t.error = get_opt<std::string>(j, "error");
    t.warnings = j.at("warnings").get<std::vector<std::string>>();
    return t;
}

} // namespace

std::vector<DepthRow> depth_report(const std::vector<TargetSpec> &targets, const std::vector<AnsatzConfig> &ansatze,
                                   const ExperimentConfig &training) {
    std::vector<DepthRow> rows;
    std::vector<std::pair<TargetSpec, AnsatzConfig>> pairs;
    for (const auto &t : targets) {
        for (const auto &a : ansatze) {
            if (a.n_qubits == t.n_qubits) {
                pairs.emplace_back(t, a);
            }
        }
    }
    rows.resize(pairs.size());
    const auto optimizer = training.optimizer_config();
    parallel_for(pairs.size(), training.jobs, [&](std::size_t i) {
        const auto &[t, a] = pairs[i];
        const auto state = make_target(t.name, t.n_qubits);
        const auto ansatz = build_ansatz(a);
        DepthRow row;
        row.target = t.name;
        row.n_qubits = t.n_qubits;
        row.ansatz = a.kind;
        row.layers = a.layers;
        row.n_params = ansatz.n_params();
        row.ansatz_depth = dag_depth(ansatz);
        row.formula_depth = reference_depth(a);
        if (auto circuit = target_circuit(t.name, t.n_qubits)) {
            row.target_depth = dag_depth(circuit->circuit);
        }
        const CostContext ctx(ansatz, target_unitary(state));
        for (std::size_t r = 0; r < training.repeats; ++r) {
            TrainOptions options;
            options.iterations = training.iterations;
            options.seed = derive_seed(training.seed, r);
            options.convergence_threshold = training.convergence_threshold;
            row.best_cost = std::min(row.best_cost, train(ctx, optimizer, options).final_exact_cost);
        }
        row.reached = row.best_cost < training.depth_success_threshold;
        rows[i] = row;
    });
    return rows;
}

ExperimentResult run(ExperimentConfig config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result;
    result.tool_version = VQSP_VERSION;

    switch (config.kind) {
    case ExperimentKind::TrainOnce:
    case ExperimentKind::SweepN:
    case ExperimentKind::SweepL: {
        auto plans = training_plans(config);
        run_training(config, plans);
        result.points = collect(plans);
        if (config.kind != ExperimentKind::TrainOnce) {
            result.trend = trend(result.points, config.kind == ExperimentKind::SweepN);
        }
        break;
    }
    case ExperimentKind::NoiseSweep: {
        auto plans = training_plans(config);
        add_noise_points(config, plans);
        run_training(config, plans);
        result.points = collect(plans);
        break;
    }
    case ExperimentKind::BpVariance:
        run_bp(config, result);
        break;
    case ExperimentKind::DepthReport:
        result.depth_rows = depth_report(config.depth_targets, config.depth_ansatze, config);
        break;
    }
    result.config = std::move(config);
    result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string to_json(const ExperimentResult &result, int indent) {
    json points = json::array();
    for (const auto &p : result.points) {
        json repeats = json::array();
        for (const auto &r : p.repeats) {
            repeats.push_back(json{{"repeat", r.repeat}, {"seed", r.seed}, {"trace", trace_to_json(r.trace)}});
        }
        points.push_back(json{
            {"n_qubits", p.n_qubits},
            {"layers", p.layers},
            {"epsilon", p.epsilon},
            {"mitigated", p.mitigated},
            {"condition_number", opt(p.condition_number)},
            {"final_cost", summary_to_json(p.final_cost)},
            {"final_exact_cost", summary_to_json(p.final_exact_cost)},
            {"repeats", repeats},
        });
    }
    json bp = json::array();
    for (const auto &p : result.bp_points) {
        bp.push_back(json{{"n_qubits", p.n_qubits}, {"variance", p.variance}});
    }
    json fit = nullptr;
    if (result.bp_fit) {
        fit = json{{"slope", result.bp_fit->slope},
                   {"intercept", result.bp_fit->intercept},
                   {"slope_stderr", result.bp_fit->slope_stderr},
                   {"r_squared", result.bp_fit->r_squared}};
    }
    json depth = json::array();
    for (const auto &r : result.depth_rows) {
        depth.push_back(json{
            {"target", to_string(r.target)},
            {"n_qubits", r.n_qubits},
            {"ansatz", to_string(r.ansatz)},
            {"layers", r.layers},
            {"n_params", r.n_params},
            {"ansatz_depth", r.ansatz_depth},
            {"formula_depth", r.formula_depth},
            {"target_depth", opt(r.target_depth)},
            {"best_cost", r.best_cost},
            {"reached", r.reached},
        });
    }
    const json doc{
        {"tool", "vqsp"},
        {"tool_version", result.tool_version},
        {"experiment", to_string(result.config.kind)},
        {"config", config_to_json(result.config)},
        {"points", points},
        {"bp_points", bp},
        {"bp_fit", fit},
        {"depth_rows", depth},
        {"trend", opt(result.trend)},
        {"wall_time_s", result.wall_time_s},
    };
    return doc.dump(indent);
}

ExperimentResult result_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ValidationError(std::string("invalid result JSON: ") + e.what());
    }
    ExperimentResult result;
    result.tool_version = doc.at("tool_version").get<std::string>();
    result.config = config_from_json(doc.at("config"));
    for (const auto &p : doc.at("points")) {
        SweepPoint point;
        point.n_qubits = p.at("n_qubits").get<std::size_t>();
        point.layers = p.at("layers").get<std::size_t>();
        point.epsilon = p.at("epsilon").get<double>();
        point.mitigated = p.at("mitigated").get<bool>();
        point.condition_number = get_opt<double>(p, "condition_number");
        point.final_cost = summary_from_json(p.at("final_cost"));
        point.final_exact_cost = summary_from_json(p.at("final_exact_cost"));
        for (const auto &r : p.at("repeats")) {
            point.repeats.push_back(RepeatRecord{r.at("repeat").get<std::size_t>(), r.at("seed").get<std::uint64_t>(),
                                                 trace_from_json(r.at("trace"))});
        }
        result.points.push_back(std::move(point));
    }
    for (const auto &p : doc.at("bp_points")) {
        result.bp_points.push_back(BpPoint{p.at("n_qubits").get<std::size_t>(), p.at("variance").get<double>()});
    }
    if (const auto &fit = doc.at("bp_fit"); !fit.is_null()) {
        result.bp_fit = LinearFit{fit.at("slope").get<double>(), fit.at("intercept").get<double>(),
                                  fit.at("slope_stderr").get<double>(), fit.at("r_squared").get<double>()};
    }
    for (const auto &r : doc.at("depth_rows")) {
        DepthRow row;
        row.target = target_name_from_string(r.at("target").get<std::string>());
        row.n_qubits = r.at("n_qubits").get<std::size_t>();
        row.ansatz = ansatz_kind_from_string(r.at("ansatz").get<std::string>());
        row.layers = r.at("layers").get<std::size_t>();
        row.n_params = r.at("n_params").get<std::size_t>();
        row.ansatz_depth = r.at("ansatz_depth").get<std::size_t>();
        row.formula_depth = r.at("formula_depth").get<std::size_t>();
        row.target_depth = get_opt<std::size_t>(r, "target_depth");
        row.best_cost = r.at("best_cost").get<double>();
        row.reached = r.at("reached").get<bool>();
        result.depth_rows.push_back(row);
    }
    result.trend = get_opt<double>(doc, "trend");
    result.wall_time_s = doc.at("wall_time_s").get<double>();
    return result;
}

std::string to_csv(const ExperimentResult &result) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    switch (result.config.kind) {
    case ExperimentKind::BpVariance: {
        out << "n_qubits,variance,ln_variance,slope,intercept,slope_stderr,r_squared\n";
        const auto fit = result.bp_fit.value_or(LinearFit{});
        for (const auto &p : result.bp_points) {
            out << p.n_qubits << ',' << p.variance << ',' << (p.variance > 0.0 ? std::log(p.variance) : 0.0) << ','
                << fit.slope << ',' << fit.intercept << ',' << fit.slope_stderr << ',' << fit.r_squared << '\n';
        }
        break;
    }
    case ExperimentKind::DepthReport:
        out << "target,n_qubits,ansatz,layers,n_params,ansatz_depth,formula_depth,target_depth,best_cost,reached\n";
        for (const auto &r : result.depth_rows) {
            out << to_string(r.target) << ',' << r.n_qubits << ',' << to_string(r.ansatz) << ',' << r.layers << ','
                << r.n_params << ',' << r.ansatz_depth << ',' << r.formula_depth << ',';
            if (r.target_depth) {
                out << *r.target_depth;
            }
            out << ',' << r.best_cost << ',' << (r.reached ? 1 : 0) << '\n';
        }
        break;
    default:
        out << "point,n_qubits,layers,epsilon,mitigated,repeat,seed,iteration,cost\n";
        for (std::size_t i = 0; i < result.points.size(); ++i) {
            const auto &p = result.points[i];
            for (const auto &r : p.repeats) {
                for (std::size_t t = 0; t < r.trace.cost_history.size(); ++t) {
                    out << i << ',' << p.n_qubits << ',' << p.layers << ',' << p.epsilon << ','
                        << (p.mitigated ? 1 : 0) << ',' << r.repeat << ',' << r.seed << ',' << t + 1 << ','
                        << r.trace.cost_history[t] << '\n';
                }
            }
        }
        break;
    }
    return out.str();
}

void emit(const ExperimentResult &result, const std::string &path, OutputFormat format) {
    const std::string text = format == OutputFormat::Json ? to_json(result) + "\n" : to_csv(result);
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write output file '" + path + "'");
    }
    out << text;
    if (!out) {
        throw std::runtime_error("failed writing output file '" + path + "'");
    }
}

std::string format_depth_table(const std::vector<DepthRow> &rows) {
    std::ostringstream out;
    out << std::left << std::setw(8) << "target" << std::setw(4) << "N" << std::setw(10) << "ansatz" << std::setw(4)
        << "L" << std::setw(8) << "params" << std::setw(8) << "depth" << std::setw(9) << "formula" << std::setw(8)
        << "target" << std::setw(10) << "best" << "reached\n";
    for (const auto &r : rows) {
        std::ostringstream best;
        best << std::fixed << std::setprecision(4) << r.best_cost;
        out << std::setw(8) << to_string(r.target) << std::setw(4) << r.n_qubits << std::setw(10)
            << to_string(r.ansatz) << std::setw(4) << r.layers << std::setw(8) << r.n_params << std::setw(8)
            << r.ansatz_depth << std::setw(9) << r.formula_depth << std::setw(8)
            << (r.target_depth ? std::to_string(*r.target_depth) : "-") << std::setw(10) << best.str()
            << (r.reached ? "yes" : "no") << '\n';
    }
    return out.str();
}

} // namespace vqsp
