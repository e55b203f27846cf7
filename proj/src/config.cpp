#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "vqsp/errors.hpp"
#include "vqsp/harness.hpp"
#include "vqsp/rng.hpp"

namespace vqsp {

namespace {

struct KindNames {
    ExperimentKind kind;
    std::string_view name;
    std::string_view subcommand;
};

constexpr KindNames kKindNames[] = {
    {ExperimentKind::TrainOnce, "train_once", "train"},
    {ExperimentKind::SweepN, "sweep_N", "sweep-n"},
    {ExperimentKind::SweepL, "sweep_L", "sweep-l"},
    {ExperimentKind::BpVariance, "bp_variance", "bp"},
    {ExperimentKind::NoiseSweep, "noise_sweep", "noise"},
    {ExperimentKind::DepthReport, "depth_report", "depth"},
};

std::string lower(std::string_view s) {
    std::string out;
    for (char c : s) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::size_t parse_size(std::string_view s) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ValidationError("expected a nonnegative integer, got '" + std::string(s) + "'");
    }
    return v;
}

double parse_double(std::string_view s) {
    const std::string str(trim(s));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(str, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (str.empty() || used != str.size()) {
        throw ValidationError("expected a number, got '" + str + "'");
    }
    return v;
}

bool parse_bool(std::string_view s) {
    const auto v = lower(trim(s));
    if (v == "1" || v == "true" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "0" || v == "false" || v == "no" || v == "off") {
        return false;
    }
    throw ValidationError("expected a boolean, got '" + std::string(s) + "'");
}

bool is_training_kind(ExperimentKind kind) {
    return kind == ExperimentKind::TrainOnce || kind == ExperimentKind::SweepN || kind == ExperimentKind::SweepL ||
           kind == ExperimentKind::NoiseSweep;
}

std::size_t min_qubits(TargetName target, AnsatzKind ansatz) {
    std::size_t lo = ansatz == AnsatzKind::G2 ? 2 : 3;
    if (target == TargetName::AME3) {
        lo = 3;
    }
    return lo;
}

void check_register(const ExperimentConfig &c, std::size_t n) {
    if (n < min_qubits(c.target, c.ansatz)) {
        throw ValidationError(std::string(to_string(c.ansatz)) + " on target " + std::string(to_string(c.target)) +
                              " needs more than " + std::to_string(n) + " qubits");
    }
    if (n > kDenseUnitaryMaxQubits) {
        throw CapacityError("experiments support at most " + std::to_string(kDenseUnitaryMaxQubits) + " qubits");
    }
    if (c.target == TargetName::AME3 && n != 3) {
        throw ValidationError("the AME target is defined for 3 qubits only");
    }
}

} // namespace

std::string_view to_string(ExperimentKind kind) {
    for (const auto &k : kKindNames) {
        if (k.kind == kind) {
            return k.name;
        }
    }
    return "?";
}

std::string_view subcommand_name(ExperimentKind kind) {
    for (const auto &k : kKindNames) {
        if (k.kind == kind) {
            return k.subcommand;
        }
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
    const auto norm = lower(name);
    for (const auto &k : kKindNames) {
        if (norm == lower(k.name) || norm == k.subcommand) {
            return k.kind;
        }
    }
    throw ValidationError("unknown experiment kind '" + std::string(name) + "'");
}

const std::vector<FigureMapping> &figure_mappings() {
    static const std::vector<FigureMapping> mappings = {
        {"Fig. 2", ExperimentKind::TrainOnce, "cost convergence for GHZ, W and AME targets per ansatz"},
        {"Fig. 3a", ExperimentKind::SweepN, "Fubini-Study distance versus number of qubits"},
        {"Fig. 3b", ExperimentKind::SweepL, "Fubini-Study distance versus number of layers"},
        {"Fig. 3 inset", ExperimentKind::BpVariance, "log variance of the first cost derivative versus N"},
        {"Fig. 4", ExperimentKind::NoiseSweep, "distance under readout error, with and without mitigation"},
        {"Tables 1-2", ExperimentKind::DepthReport, "parameter counts and circuit depths of ansatz and target"},
    };
    return mappings;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
    std::vector<std::size_t> out;
    if (trim(text).empty()) {
        return out;
    }
    for (auto part : split(text, ',')) {
        const auto dots = part.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_size(part));
            continue;
        }
        const auto lo = parse_size(part.substr(0, dots));
        const auto hi = parse_size(part.substr(dots + 2));
        if (hi < lo) {
            throw ValidationError("empty range '" + std::string(part) + "'");
        }
        for (auto v = lo; v <= hi; ++v) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    if (trim(text).empty()) {
        return out;
    }
    for (auto part : split(text, ',')) {
        out.push_back(parse_double(part));
    }
    return out;
}

TargetSpec parse_target_spec(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) {
        throw ValidationError("target spec must be name:N, got '" + std::string(text) + "'");
    }
    return TargetSpec{target_name_from_string(parts[0]), parse_size(parts[1])};
}

AnsatzConfig parse_ansatz_spec(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw ValidationError("ansatz spec must be kind:N:L, got '" + std::string(text) + "'");
    }
    AnsatzConfig cfg{ansatz_kind_from_string(parts[0]), parse_size(parts[1]), parse_size(parts[2])};
    cfg.validate();
    return cfg;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t repeat) {
    auto rng = make_rng({base, repeat});
    return rng();
}

OptimizerConfig ExperimentConfig::optimizer_config() const {
    if (optimizer == "adam") {
        AdamConfig cfg;
        cfg.learning_rate = learning_rate;
        return cfg;
    }
    if (optimizer == "qng") {
        return QngConfig{learning_rate, regularization};
    }
    throw ValidationError("unknown optimizer '" + optimizer + "' (expected adam or qng)");
}

void ExperimentConfig::validate() {
    optimizer = lower(optimizer);
    std::visit([](const auto &cfg) { cfg.validate(); }, optimizer_config());
    if (repeats == 0) {
        throw ValidationError("repeats must be at least 1");
    }
    if (jobs == 0) {
        throw ValidationError("jobs must be at least 1");
    }
    if (target == TargetName::Custom && target_file.empty()) {
        throw ValidationError("the custom target needs a target file");
    }
    if (target != TargetName::Custom && !target_file.empty()) {
        throw ValidationError("a target file is only used with the custom target");
    }
    if (convergence_threshold && !(*convergence_threshold > 0.0)) {
        throw ValidationError("convergence threshold must be positive");
    }

    const bool training = is_training_kind(kind);
    if (training) {
        if (iterations == 0) {
            throw ValidationError("iterations must be at least 1");
        }
        if (shots_mode && shots == 0) {
            throw ValidationError("shots must be at least 1");
        }
    }

    if (kind != ExperimentKind::NoiseSweep) {
        if (!epsilons.empty()) {
            throw ValidationError("epsilon list only applies to noise_sweep");
        }
        if (mitigate || !calibration_in.empty() || !calibration_out.empty()) {
            throw ValidationError("mitigation and calibration options only apply to noise_sweep");
        }
    }
    if (kind != ExperimentKind::SweepN && kind != ExperimentKind::BpVariance && !qubits_list.empty()) {
        throw ValidationError("a qubit list only applies to sweep_N and bp_variance");
    }
    if (kind != ExperimentKind::SweepL && !layers_list.empty()) {
        throw ValidationError("a layer list only applies to sweep_L");
    }
    if (kind != ExperimentKind::DepthReport && (!depth_targets.empty() || !depth_ansatze.empty())) {
        throw ValidationError("depth tables only apply to depth_report");
    }

    switch (kind) {
    case ExperimentKind::TrainOnce:
        check_register(*this, n_qubits);
        AnsatzConfig{ansatz, n_qubits, layers}.validate();
        break;
    case ExperimentKind::SweepN:
        if (qubits_list.empty()) {
            for (std::size_t n = min_qubits(target, ansatz); n <= 8; ++n) {
                qubits_list.push_back(n);
            }
        }
        for (auto n : qubits_list) {
            check_register(*this, n);
        }
        AnsatzConfig{ansatz, qubits_list.front(), layers}.validate();
        break;
    case ExperimentKind::SweepL:
        if (layers_list.empty()) {
            layers_list = {1, 2, 3, 4, 5};
        }
        check_register(*this, n_qubits);
        for (auto l : layers_list) {
            AnsatzConfig{ansatz, n_qubits, l}.validate();
        }
        break;
    case ExperimentKind::BpVariance:
        if (qubits_list.empty()) {
            qubits_list = {2, 3, 4, 5, 6, 7};
        }
        for (auto n : qubits_list) {
            check_register(*this, n);
            AnsatzConfig{ansatz, n, layers}.validate();
        }
        if (bp_samples < 2) {
            throw ValidationError("bp_variance needs at least 2 samples");
        }
        if (bp_param_index >= expected_parameter_count({ansatz, qubits_list.front(), layers})) {
            throw ValidationError("bp parameter index exceeds the ansatz parameter count");
        }
        break;
    case ExperimentKind::NoiseSweep:
        if (!shots_mode) {
            throw ValidationError("noise_sweep needs shots mode");
        }
        if (epsilons.empty()) {
            epsilons = {0.01, 0.02, 0.03, 0.04};
        }
        for (double e : epsilons) {
            if (!(e > 0.0 && e < 0.5)) {
                throw ValidationError("noise rates must lie in (0, 0.5); the noiseless baseline is always included");
            }
        }
        if (!calibration_in.empty() && !calibration_out.empty()) {
            throw ValidationError("calibration can be imported or exported, not both");
        }
        if (!calibration_in.empty() && !mitigate) {
            throw ValidationError("importing a calibration requires mitigation");
        }
        if (calibration_shots == 0) {
            throw ValidationError("calibration needs at least one shot per basis state");
        }
        check_register(*this, n_qubits);
        AnsatzConfig{ansatz, n_qubits, layers}.validate();
        break;
    case ExperimentKind::DepthReport:
        if (depth_targets.empty() && depth_ansatze.empty()) {
            depth_targets = {{TargetName::GHZ, 3}, {TargetName::W, 3}, {TargetName::AME3, 3}};
            for (auto k : {AnsatzKind::G2, AnsatzKind::G2_GN, AnsatzKind::G2_GN_W}) {
                for (std::size_t l : {1, 2}) {
                    depth_ansatze.push_back({k, 3, l});
                }
            }
        }
        for (const auto &a : depth_ansatze) {
            a.validate();
        }
        for (const auto &t : depth_targets) {
            if (t.name == TargetName::Custom) {
                throw ValidationError("depth_report takes named targets only");
            }
            if (t.n_qubits < 2 || t.n_qubits > kDenseUnitaryMaxQubits) {
                throw ValidationError("depth_report target register out of range");
            }
        }
        if (iterations == 0) {
            throw ValidationError("iterations must be at least 1");
        }
        break;
    }
}

ExperimentConfig read_config(std::istream &in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig c;
    using Setter = void (*)(ExperimentConfig &, const std::string &);
    static const std::map<std::string, Setter> setters = {
        {"experiment.kind", [](ExperimentConfig &c, const std::string &v) { c.kind = experiment_kind_from_string(v); }},
        {"experiment.seed", [](ExperimentConfig &c, const std::string &v) { c.seed = parse_size(v); }},
        {"experiment.repeats", [](ExperimentConfig &c, const std::string &v) { c.repeats = parse_size(v); }},
        {"experiment.jobs", [](ExperimentConfig &c, const std::string &v) { c.jobs = parse_size(v); }},
        {"experiment.output", [](ExperimentConfig &c, const std::string &v) { c.output = v; }},
        {"experiment.format",
         [](ExperimentConfig &c, const std::string &v) {
             const auto f = lower(v);
             if (f != "json" && f != "csv") {
                 throw ValidationError("format must be json or csv");
             }
             c.format = f == "json" ? OutputFormat::Json : OutputFormat::Csv;
         }},
        {"target.name", [](ExperimentConfig &c, const std::string &v) { c.target = target_name_from_string(v); }},
        {"target.qubits", [](ExperimentConfig &c, const std::string &v) { c.n_qubits = parse_size(v); }},
        {"target.file", [](ExperimentConfig &c, const std::string &v) { c.target_file = v; }},
        {"ansatz.kind", [](ExperimentConfig &c, const std::string &v) { c.ansatz = ansatz_kind_from_string(v); }},
        {"ansatz.layers", [](ExperimentConfig &c, const std::string &v) { c.layers = parse_size(v); }},
        {"optimizer.name", [](ExperimentConfig &c, const std::string &v) { c.optimizer = lower(v); }},
        {"optimizer.learning_rate",
         [](ExperimentConfig &c, const std::string &v) { c.learning_rate = parse_double(v); }},
        {"optimizer.regularization",
         [](ExperimentConfig &c, const std::string &v) { c.regularization = parse_double(v); }},
        {"evaluation.mode",
         [](ExperimentConfig &c, const std::string &v) {
             const auto m = lower(v);
             if (m != "exact" && m != "shots") {
                 throw ValidationError("mode must be exact or shots");
             }
             c.shots_mode = m == "shots";
         }},
        {"evaluation.shots", [](ExperimentConfig &c, const std::string &v) { c.shots = parse_size(v); }},
        {"evaluation.iterations", [](ExperimentConfig &c, const std::string &v) { c.iterations = parse_size(v); }},
        {"evaluation.convergence_threshold",
         [](ExperimentConfig &c, const std::string &v) { c.convergence_threshold = parse_double(v); }},
        {"sweep.qubits", [](ExperimentConfig &c, const std::string &v) { c.qubits_list = parse_size_list(v); }},
        {"sweep.layers", [](ExperimentConfig &c, const std::string &v) { c.layers_list = parse_size_list(v); }},
        {"noise.epsilons", [](ExperimentConfig &c, const std::string &v) { c.epsilons = parse_double_list(v); }},
        {"noise.mitigate", [](ExperimentConfig &c, const std::string &v) { c.mitigate = parse_bool(v); }},
        {"noise.calibration_shots",
         [](ExperimentConfig &c, const std::string &v) { c.calibration_shots = parse_size(v); }},
        {"noise.calibration_in", [](ExperimentConfig &c, const std::string &v) { c.calibration_in = v; }},
        {"noise.calibration_out", [](ExperimentConfig &c, const std::string &v) { c.calibration_out = v; }},
        {"bp.samples", [](ExperimentConfig &c, const std::string &v) { c.bp_samples = parse_size(v); }},
        {"bp.param_index", [](ExperimentConfig &c, const std::string &v) { c.bp_param_index = parse_size(v); }},
        {"depth.targets",
         [](ExperimentConfig &c, const std::string &v) {
             c.depth_targets.clear();
             for (auto part : split(v, ',')) {
                 c.depth_targets.push_back(parse_target_spec(part));
             }
         }},
        {"depth.ansatze",
         [](ExperimentConfig &c, const std::string &v) {
             c.depth_ansatze.clear();
             for (auto part : split(v, ',')) {
                 c.depth_ansatze.push_back(parse_ansatz_spec(part));
             }
         }},
        {"depth.threshold",
         [](ExperimentConfig &c, const std::string &v) { c.depth_success_threshold = parse_double(v); }},
    };

    for (const auto &[section, body] : tree) {
        if (body.empty() && !body.data().empty()) {
            throw ValidationError("config key '" + section + "' must be inside a section");
        }
        for (const auto &[key, value] : body) {
            const auto full = section + "." + key;
            const auto it = setters.find(full);
            if (it == setters.end()) {
                throw ValidationError("unknown config key '" + full + "'");
            }
            it->second(c, value.data());
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file '" + path + "'");
    }
    return read_config(in);
}

} // namespace vqsp
