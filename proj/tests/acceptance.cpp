// Reproduces the headline numbers at full scale and prints one line per
// criterion. Exit status is nonzero if any criterion fails, unless that
// criterion number is listed with --allow-fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vqsp/ansatz.hpp"
#include "vqsp/cost.hpp"
#include "vqsp/harness.hpp"
#include "vqsp/noise.hpp"

using namespace vqsp;

namespace {

constexpr std::uint64_t kSeed = 2024;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 3) {
    std::ostringstream out;
    out.precision(digits);
    out << std::fixed << v;
    return out.str();
}

std::string fmt_list(const std::vector<double> &v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + fmt(v[i]);
    }
    return s + "]";
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> final_costs(const SweepPoint &p) {
    std::vector<double> out;
    for (const auto &r : p.repeats) {
        out.push_back(r.trace.final_cost());
    }
    return out;
}

ExperimentConfig training(ExperimentKind kind, TargetName target, std::size_t n, AnsatzKind ansatz, std::size_t l) {
    ExperimentConfig c;
    c.kind = kind;
    c.target = target;
    c.n_qubits = n;
    c.ansatz = ansatz;
    c.layers = l;
    c.iterations = 100;
    c.repeats = 10;
    c.seed = kSeed;
    return c;
}

std::vector<double> train_once(TargetName target, std::size_t n, AnsatzKind ansatz, std::size_t l) {
    return final_costs(run(training(ExperimentKind::TrainOnce, target, n, ansatz, l)).points.at(0));
}

Outcome ghz3_convergence() {
    const auto l1 = train_once(TargetName::GHZ, 3, AnsatzKind::G2, 1);
    const auto l2 = train_once(TargetName::GHZ, 3, AnsatzKind::G2, 2);
    const auto in_band = std::count_if(l1.begin(), l1.end(), [](double c) { return c >= 0.6 && c <= 0.8; });
    const auto converged = std::count_if(l2.begin(), l2.end(), [](double c) { return c < 0.05; });
    return {in_band >= 8 && converged >= 8, "L=1 in [0.6,0.8]: " + std::to_string(in_band) +
                                                "/10, L=2 below 0.05: " + std::to_string(converged) + "/10"};
}

Outcome w_and_ame() {
    const double w = median(train_once(TargetName::W, 3, AnsatzKind::G2_GN, 1));
    const double ame_gn = median(train_once(TargetName::AME3, 3, AnsatzKind::G2_GN, 1));
    const double ame_w1 = median(train_once(TargetName::AME3, 3, AnsatzKind::G2_GN_W, 1));
    const double ame_w2 = median(train_once(TargetName::AME3, 3, AnsatzKind::G2_GN_W, 2));
    const bool pass = w < 0.05 && ame_gn > 0.15 && std::abs(ame_w1 - 0.2) <= 0.1 && ame_w2 < 0.1;
    return {pass, "median costs: W G2_GN L=1 " + fmt(w) + ", AME G2_GN L=1 " + fmt(ame_gn) + ", AME G2_GN_W L=1 " +
                      fmt(ame_w1) + " (want 0.2 +- 0.1), AME G2_GN_W L=2 " + fmt(ame_w2)};
}

Outcome parameter_counts() {
    std::size_t checked = 0;
    std::size_t bad = 0;
    for (auto kind : {AnsatzKind::G2, AnsatzKind::G2_GN, AnsatzKind::G2_GN_W}) {
        const std::size_t per = kind == AnsatzKind::G2 ? 2 : kind == AnsatzKind::G2_GN ? 3 : 6;
        for (std::size_t n = kind == AnsatzKind::G2 ? 2 : 3; n <= 8; ++n) {
            for (std::size_t l = 1; l <= 4; ++l) {
                ++checked;
                if (build_ansatz({kind, n, l}).n_params() != per * n * l) {
                    ++bad;
                }
            }
        }
    }
    return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " configurations match"};
}

Outcome depth_accounting() {
    std::size_t bad = 0;
    std::size_t checked = 0;
    for (std::size_t n : {2, 4, 6, 8}) {
        for (std::size_t l = 1; l <= 4; ++l) {
            ++checked;
            bad += dag_depth(build_ansatz({AnsatzKind::G2, n, l})) != 4 * l;
        }
    }
    const std::map<std::pair<AnsatzKind, std::size_t>, std::array<std::size_t, 4>> golden = {
        {{AnsatzKind::G2, 3}, {5, 10, 15, 20}},       {{AnsatzKind::G2, 5}, {5, 9, 14, 18}},
        {{AnsatzKind::G2, 7}, {5, 9, 13, 18}},        {{AnsatzKind::G2_GN, 3}, {7, 14, 21, 28}},
        {{AnsatzKind::G2_GN, 4}, {6, 12, 18, 24}},    {{AnsatzKind::G2_GN, 5}, {7, 14, 21, 28}},
        {{AnsatzKind::G2_GN, 6}, {6, 12, 18, 24}},    {{AnsatzKind::G2_GN, 7}, {7, 14, 21, 28}},
        {{AnsatzKind::G2_GN, 8}, {6, 12, 18, 24}},    {{AnsatzKind::G2_GN_W, 3}, {12, 24, 36, 48}},
        {{AnsatzKind::G2_GN_W, 4}, {10, 20, 30, 40}}, {{AnsatzKind::G2_GN_W, 5}, {12, 23, 34, 45}},
        {{AnsatzKind::G2_GN_W, 6}, {10, 20, 30, 40}}, {{AnsatzKind::G2_GN_W, 7}, {12, 23, 34, 45}},
        {{AnsatzKind::G2_GN_W, 8}, {10, 20, 30, 40}},
    };
    std::size_t differ_from_table = 0;
    for (const auto &[key, depths] : golden) {
        for (std::size_t l = 1; l <= 4; ++l) {
            ++checked;
            const AnsatzConfig cfg{key.first, key.second, l};
            const auto depth = dag_depth(build_ansatz(cfg));
            bad += depth != depths[l - 1];
            bad += depth != dag_depth(build_ansatz(cfg));
            differ_from_table += depth != reference_depth(cfg);
        }
    }
    return {bad == 0, std::to_string(checked) + " depths checked, " + std::to_string(bad) + " mismatches; " +
                          std::to_string(differ_from_table) + " golden values differ from the reference formula"};
}

Outcome distance_vs_n() {
    auto c = training(ExperimentKind::SweepN, TargetName::GHZ, 2, AnsatzKind::G2, 2);
    c.qubits_list = {2, 3, 4, 5, 6, 7, 8};
    const auto r = run(c);
    std::vector<double> means;
    bool small_ok = true;
    std::vector<double> tail_n;
    std::vector<double> tail_mean;
    for (const auto &p : r.points) {
        means.push_back(p.final_cost.mean);
        if (p.n_qubits <= 5) {
            small_ok = small_ok && p.final_cost.mean < 0.1;
        } else {
            tail_n.push_back(static_cast<double>(p.n_qubits));
            tail_mean.push_back(p.final_cost.mean);
        }
        if (p.n_qubits == 5) {
            tail_n.push_back(5.0);
            tail_mean.push_back(p.final_cost.mean);
        }
    }
    const double rho = spearman(tail_n, tail_mean);
    return {small_ok && rho > 0, "mean distance N=2..8 " + fmt_list(means) + ", Spearman N=5..8 " + fmt(rho)};
}

Outcome distance_vs_l() {
    auto ghz = training(ExperimentKind::SweepL, TargetName::GHZ, 8, AnsatzKind::G2, 1);
    ghz.layers_list = {1, 2, 3, 4, 5};
    auto w = ghz;
    w.target = TargetName::W;
    std::vector<double> g;
    for (const auto &p : run(ghz).points) {
        g.push_back(p.final_cost.mean);
    }
    std::vector<double> wm;
    for (const auto &p : run(w).points) {
        wm.push_back(p.final_cost.mean);
    }
    const bool ghz_ok = g[3] - *std::min_element(g.begin(), g.end()) <= 0.05;
    bool w_ok = true;
    for (std::size_t i = 1; i < wm.size(); ++i) {
        w_ok = w_ok && wm[i] < wm[i - 1];
    }
    return {ghz_ok && w_ok, "GHZ N=8 L=1..5 " + fmt_list(g) + ", W N=8 L=1..5 " + fmt_list(wm)};
}

Outcome barren_plateau() {
    ExperimentConfig c;
    c.kind = ExperimentKind::BpVariance;
    c.target = TargetName::GHZ;
    c.ansatz = AnsatzKind::G2;
    c.layers = 2;
    c.qubits_list = {2, 3, 4, 5, 6, 7};
    c.bp_samples = 200;
    c.seed = kSeed;
    const auto r = run(c);
    if (!r.bp_fit) {
        return {false, "no fit produced"};
    }
    const auto &fit = *r.bp_fit;
    const bool pass = fit.slope >= -1.68 && fit.slope <= -0.68 && fit.r_squared > 0.9;
    return {pass, "slope " + fmt(fit.slope) + " +- " + fmt(fit.slope_stderr) + ", R^2 " + fmt(fit.r_squared)};
}

ExperimentResult noise_result() {
    auto c = training(ExperimentKind::NoiseSweep, TargetName::GHZ, 5, AnsatzKind::G2, 2);
    c.optimizer = "qng";
    c.shots_mode = true;
    c.shots = 10000;
    c.epsilons = {0.01, 0.02, 0.03, 0.04};
    c.mitigate = true;
    return run(c);
}

Outcome noise_degradation(const ExperimentResult &r) {
    std::vector<double> means;
    for (const auto &p : r.points) {
        if (p.epsilon > 0.0 && !p.mitigated) {
            means.push_back(p.final_cost.mean);
        }
    }
    bool pass = means.size() == 4;
    for (std::size_t i = 0; i < means.size(); ++i) {
        pass = pass && means[i] >= 0.15 && means[i] <= 0.5 && (i == 0 || means[i] > means[i - 1]);
    }
    return {pass, "unmitigated mean cost eps=0.01..0.04 " + fmt_list(means)};
}

Outcome mitigation_recovery(const ExperimentResult &r) {
    double baseline = -1.0;
    std::vector<double> means;
    for (const auto &p : r.points) {
        if (p.epsilon == 0.0) {
            baseline = p.final_cost.mean;
        } else if (p.mitigated) {
            means.push_back(p.final_cost.mean);
        }
    }
    bool pass = baseline >= 0.0 && means.size() == 4;
    for (double m : means) {
        pass = pass && std::abs(m - baseline) <= 0.1;
    }
    return {pass, "baseline " + fmt(baseline) + ", mitigated eps=0.01..0.04 " + fmt_list(means)};
}

Outcome oracle_equivalences() {
    auto rng = make_rng({kSeed, 10});
    double grad_err = 0.0;
    double p0_err = 0.0;
    double metric_err = 0.0;
    for (auto kind : {AnsatzKind::G2, AnsatzKind::G2_GN, AnsatzKind::G2_GN_W}) {
        for (auto target : {TargetName::GHZ, TargetName::W}) {
            const auto state = make_target(target, 3);
            const CostContext ctx(build_ansatz({kind, 3, 1}), completed_unitary(state));
            const auto theta = random_parameters(ctx.ansatz().n_params(), rng);
            const auto g = gradient(ctx, theta);
            for (std::size_t k = 0; k < g.size(); ++k) {
                auto plus = theta;
                auto minus = theta;
                plus[k] += 1e-5;
                minus[k] -= 1e-5;
                grad_err = std::max(grad_err, std::abs(g[k] - (cost(ctx, plus) - cost(ctx, minus)) / 2e-5));
            }
            p0_err = std::max(p0_err, std::abs(overlap_probability(ctx, theta) -
                                               fidelity(state.state, prepare(ctx.ansatz(), theta))));

            // 1 - |<psi(theta)|psi(theta + d)>|^2 = d^T G d to second order.
            const auto metric = fubini_study_metric(ctx, theta);
            std::normal_distribution<double> gauss;
            Eigen::VectorXd d(static_cast<Eigen::Index>(theta.size()));
            for (auto &v : d) {
                v = gauss(rng);
            }
            d *= 1e-3 / d.norm();
            auto shifted = theta;
            for (std::size_t k = 0; k < shifted.size(); ++k) {
                shifted[k] += d(static_cast<Eigen::Index>(k));
            }
            const double infid =
                1.0 - fidelity(prepare(ctx.ansatz(), theta), prepare(ctx.ansatz(), shifted));
            const double quad = d.dot(metric * d);
            metric_err = std::max(metric_err, std::abs(infid - quad) / quad);
        }
    }

    double mitigation_err = 0.0;
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto cal = analytic_calibration_matrix(n, {0.03, {}});
        std::vector<double> probs(std::size_t{1} << n);
        for (auto &p : probs) {
            p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        }
        double total = 0.0;
        for (double p : probs) {
            total += p;
        }
        for (auto &p : probs) {
            p /= total;
        }
        const ProbabilityVector truth{n, probs};
        const auto back = mitigate(cal, apply_readout_noise(truth, {0.03, {}}));
        for (std::size_t i = 0; i < probs.size(); ++i) {
            mitigation_err = std::max(mitigation_err, std::abs(back.probs[i] - probs[i]));
        }
    }

    const bool pass = grad_err < 1e-5 && p0_err < 1e-8 && mitigation_err < 1e-9 && metric_err < 0.05;
    std::ostringstream detail;
    detail.precision(2);
    detail << std::scientific << "gradient " << grad_err << ", p0 " << p0_err << ", mitigation " << mitigation_err
           << ", metric relative " << metric_err;
    return {pass, detail.str()};
}

} // namespace

int main(int argc, char **argv) {
    std::set<int> allowed;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--allow-fail" && i + 1 < argc) {
            allowed.insert(std::atoi(argv[++i]));
        }
    }

    int unexpected = 0;
    auto report = [&](int id, const char *name, const std::function<Outcome()> &check) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception &e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool known = !o.pass && allowed.count(id);
        std::printf("criterion %2d %-28s %s%s  %s (%.1fs)\n", id, name, o.pass ? "PASS" : "FAIL",
                    known ? " (known deviation)" : "", o.detail.c_str(), secs);
        std::fflush(stdout);
        unexpected += !o.pass && !known;
    };

    report(1, "ghz3-convergence", ghz3_convergence);
    report(2, "w-ame-case-studies", w_and_ame);
    report(3, "parameter-counts", parameter_counts);
    report(4, "depth-accounting", depth_accounting);
    report(5, "distance-vs-n", distance_vs_n);
    report(6, "distance-vs-l", distance_vs_l);
    report(7, "barren-plateau", barren_plateau);
    ExperimentResult noise;
    report(8, "noise-degradation", [&] {
        noise = noise_result();
        return noise_degradation(noise);
    });
    report(9, "mitigation-recovery", [&] { return mitigation_recovery(noise); });
    report(10, "oracle-equivalences", oracle_equivalences);
    return unexpected == 0 ? 0 : 1;
}
