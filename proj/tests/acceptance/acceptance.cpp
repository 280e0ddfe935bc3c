// Acceptance run: one PASS/FAIL line per criterion, diagnostics indented below.
//
// Exit status is nonzero when a criterion fails that is not in kKnownFailures.
// Those three cannot be met as stated (see the project notes); they still run
// in full and still print FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "eqw/analysis.hpp"
#include "eqw/classical_elephant.hpp"
#include "eqw/spectral_channel.hpp"
#include "eqw/walk_engines.hpp"

using namespace eqw;
using std::numbers::pi;

namespace {

const std::set<int> kKnownFailures = {2, 7, 10};
const CoinBlochState kSymmetric{pi / 2, 0.0};
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    int id;
    bool pass;
};
std::vector<Outcome> outcomes;
auto clock_start = std::chrono::steady_clock::now();

void note(const char* fmt, auto... args) {
    std::printf("    ");
    if constexpr (sizeof...(args) == 0) std::fputs(fmt, stdout);
    else std::printf(fmt, args...);
    std::printf("\n");
    std::fflush(stdout);
}

void verdict(int id, bool pass, const std::string& summary) {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    std::printf("criterion %2d: %s  %s  [%.0f s]\n", id, pass ? "PASS" : "FAIL", summary.c_str(), s);
    std::fflush(stdout);
    outcomes.push_back({id, pass});
    clock_start = std::chrono::steady_clock::now();
}

std::vector<double> as_double(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

WalkState standard_walk(WalkState s, double theta, int steps) {
    Rng unused = make_stream(0, 0);
    for (int i = 0; i < steps; ++i) s = step_standard(std::move(s), {theta, 0.0}, unused);
    return s;
}

EnsembleResult elephant_ensemble(double theta, std::vector<std::int64_t> snaps, std::int64_t steps,
                                 std::size_t n, std::uint64_t seed, bool keep) {
    EnsembleOptions opts;
    opts.keep_distributions = keep;
    return run_ensemble(make_localized(0, kSymmetric), {theta, 0.0}, StepSizeRule::Interval, steps,
                        std::move(snaps), n, seed, opts);
}

std::vector<std::int64_t> elephant_snapshots() {
    std::vector<std::int64_t> s;
    for (std::int64_t t = 64; t <= 512; t += 32) s.push_back(t);
    return s;
}

// Criteria 1, 2 and 5 share the theta = pi/4 ensemble.
void criteria_1_2_5() {
    const auto snaps = elephant_snapshots();
    const std::size_t n = 20000;
    const std::array<double, 3> thetas{pi / 6, pi / 4, pi / 3};
    const std::array<const char*, 3> names{"pi/6", "pi/4", "pi/3"};
    std::array<PowerLawFit, 3> fits;
    PositionDistribution at256;
    double crit1_seconds = 0;
    for (int i = 0; i < 3; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = elephant_ensemble(thetas[i], snaps, 512, n, kSeed + i, i == 1);
        fits[i] = fit_power_law(as_double(r.times), r.moments.variance, 64, 512);
        note("theta %s: exponent %.4f +- %.4f, coefficient %.5f +- %.5f, R^2 %.5f", names[i], fits[i].exponent,
             fits[i].exponent_se, fits[i].coefficient, fits[i].coefficient_se, fits[i].r2);
        if (i == 1) {
            const auto it = std::find(r.times.begin(), r.times.end(), 256);
            at256 = r.mean_distributions[static_cast<std::size_t>(it - r.times.begin())];
            crit1_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    }

    const auto& f = fits[1];
    const bool c1 = std::abs(f.exponent - 3.0) <= 0.15 && f.r2 >= 0.995;
    char buf[200];
    std::snprintf(buf, sizeof buf, "cubic law: alpha = %.3f, R^2 = %.4f (N = 20000, t in [64, 512], %.0f s)",
                  f.exponent, f.r2, crit1_seconds);
    verdict(1, c1, buf);

    bool exponents = true;
    for (const auto& g : fits) exponents = exponents && std::abs(g.exponent - 3.0) <= 0.15;
    bool distinct = true;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const double se = std::hypot(fits[i].coefficient_se, fits[j].coefficient_se);
            const double gap = std::abs(fits[i].coefficient - fits[j].coefficient);
            note("coefficients %s vs %s: |difference| %.5f = %.2f combined SE", names[i], names[j], gap, gap / se);
            distinct = distinct && gap > 3 * se;
        }
    }
    // Noise-free reference for the same comparison.
    for (int i = 0; i < 3; ++i) {
        const auto em = exact_channel_moments(thetas[i], 512, make_localized(0, kSymmetric), ShiftAverage::Interval);
        std::vector<double> v;
        for (auto t : snaps) v.push_back(em.variance[static_cast<std::size_t>(t)]);
        const auto ef = fit_power_law(as_double(snaps), v, 64, 512);
        note("exact recursion, theta %s: exponent %.5f, coefficient %.6f, var(512)/512^3 = %.6f", names[i],
             ef.exponent, ef.coefficient, em.variance[512] / (512.0 * 512.0 * 512.0));
    }
    std::snprintf(buf, sizeof buf, "coin changes only the constant: exponents %s, coefficients %s",
                  exponents ? "within 3.0 +- 0.15" : "OUT OF RANGE",
                  distinct ? "pairwise distinct" : "not distinct at 3 combined SE");
    verdict(2, exponents && distinct, buf);

    const auto g = gaussianity_check(at256);
    const auto std256 = position_distribution(standard_walk(make_localized(0, kSymmetric), pi / 4, 256));
    const auto gs = gaussianity_check(std256);
    note("elephant t=256: excess kurtosis %.4f, sup-norm %.5f", g.excess_kurtosis, g.sup_norm);
    note("standard t=256: excess kurtosis %.4f, sup-norm %.5f (single parity: %s)", gs.excess_kurtosis, gs.sup_norm,
         gs.single_parity ? "yes" : "no");
    const bool c5 = std::abs(g.excess_kurtosis) < 0.2 && g.sup_norm < 0.02 && gs.excess_kurtosis < -0.5 &&
                    gs.sup_norm >= 0.02;
    std::snprintf(buf, sizeof buf, "gaussianity: elephant kurtosis %.3f sup %.4f; standard kurtosis %.3f sup %.4f",
                  g.excess_kurtosis, g.sup_norm, gs.excess_kurtosis, gs.sup_norm);
    verdict(5, c5, buf);
}

void criterion_3() {
    std::vector<std::int64_t> times;
    std::vector<double> var;
    WalkState s = make_localized(0, kSymmetric);
    Rng unused = make_stream(0, 0);
    for (int t = 1; t <= 500; ++t) {
        s = step_standard(std::move(s), {pi / 4, 0.0}, unused);
        if (t >= 50) {
            times.push_back(t);
            var.push_back(moments(position_distribution(s)).variance);
        }
    }
    const auto f = fit_power_law(as_double(times), var, 50, 500);
    char buf[160];
    std::snprintf(buf, sizeof buf, "ballistic standard walk: alpha = %.4f, R^2 = %.6f", f.exponent, f.r2);
    verdict(3, std::abs(f.exponent - 2.0) <= 0.05, buf);
}

void criterion_4() {
    std::vector<std::int64_t> grid;
    for (std::int64_t t = 256; t <= 4096; t += 64) grid.push_back(t);
    const auto tg = as_double(grid);
    const auto weak = erw_ensemble_moments({0.3, 0.5, 4096, 100000}, kSeed + 10, grid);
    const auto strong = erw_ensemble_moments({0.9, 1.0, 4096, 100000}, kSeed + 11, grid);
    const auto fw = fit_power_law(tg, weak.variance, 256, 4096);
    const auto fv = fit_power_law(tg, strong.variance, 256, 4096);
    const auto fm = fit_power_law(tg, strong.mean, 256, 4096);
    note("p=0.3: variance exponent %.4f; p=0.9: variance exponent %.4f, mean exponent %.4f (window [T/16, T])",
         fw.exponent, fv.exponent, fm.exponent);
    const bool ok = std::abs(fw.exponent - 1.0) <= 0.1 && std::abs(fv.exponent - 1.6) <= 0.15 &&
                    std::abs(fm.exponent - 0.8) <= 0.1;
    char buf[160];
    std::snprintf(buf, sizeof buf, "classical regimes: %.3f (1.0), %.3f (1.6), mean %.3f (0.8)", fw.exponent,
                  fv.exponent, fm.exponent);
    verdict(4, ok, buf);
}

void criterion_6() {
    TraceDistanceConfig cfg;
    cfg.state_a = {0.0, 0.0};
    cfg.state_b = {pi, 0.0};
    cfg.packet = {0, 0.001};
    cfg.coin = {pi / 4, 0.0};
    cfg.steps = 100;
    cfg.trajectories = 2000;
    cfg.seed = kSeed + 20;
    const auto clean = trace_distance_experiment(cfg);
    cfg.coin.noise_epsilon = 0.1;
    const auto noisy = trace_distance_experiment(cfg);
    note("noiseless: D_0 = %.12f, positive v_t events %zu, BLP sum %.4f, D_50 = %.4f", clean.distance[0],
         clean.positive_events, clean.blp_sum, clean.distance[50]);
    note("noise 0.1: positive v_t events %zu, BLP sum %.4f, D_50 = %.4f", noisy.positive_events, noisy.blp_sum,
         noisy.distance[50]);
    const bool ok = std::abs(clean.distance[0] - 1.0) <= 1e-10 && clean.positive_events >= 2 && noisy.blp_sum > 0.0 &&
                    noisy.distance[50] < clean.distance[50];
    char buf[200];
    std::snprintf(buf, sizeof buf, "trace-distance witness: %zu revivals noiseless, BLP %.3f with noise, D_50 %.3f < %.3f",
                  clean.positive_events, noisy.blp_sum, noisy.distance[50], clean.distance[50]);
    verdict(6, ok, buf);
}

void criterion_7() {
    double k0_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double th = 0.05 + i * (pi / 2 - 0.1) / 19.0;
        for (auto kernel : {AveragingKernel::Discrete, AveragingKernel::Continuous}) {
            const auto l = eigenvalues(averaged_step_matrix(0.0, th, 1 + 7 * i, kernel));
            std::vector<Complex> want{1.0, 1.0, std::polar(1.0, 2 * th), std::polar(1.0, -2 * th)};
            for (const auto& x : l) {
                auto it = std::min_element(want.begin(), want.end(), [&](const Complex& a, const Complex& b) {
                    return std::abs(a - x) < std::abs(b - x);
                });
                k0_err = std::max(k0_err, std::abs(*it - x));
                want.erase(it);
            }
        }
    }

    // Global spectrum checks on a full k grid.
    double conj_err = 0.0, max_mod = 0.0;
    for (std::int64_t t : {1, 2, 4, 8, 16, 32, 64, 128}) {
        for (int j = 0; j <= 400; ++j) {
            const double k = -pi + 2 * pi * j / 400.0;
            for (double th : {pi / 6, pi / 4, pi / 3}) {
                const auto l = eigenvalues(averaged_step_matrix(k, th, t, AveragingKernel::Discrete));
                for (const auto& x : l) max_mod = std::max(max_mod, std::abs(x));
                if (l[2].imag() != 0.0) conj_err = std::max(conj_err, std::abs(l[3] - std::conj(l[2])));
            }
        }
    }

    const std::vector<std::int64_t> ts{1, 2, 4, 8, 16, 32, 64};
    std::vector<double> ks;
    for (int j = 0; j <= 20; ++j) ks.push_back(0.1 / 64 * std::pow(10.0, -j / 10.0));
    double min_decay = 1.0, min_phase = 1.0;
    for (double th : {pi / 6, pi / 4, pi / 3}) {
        const auto e = small_k_expansion(th, ts, ks);
        conj_err = std::max(conj_err, e.max_conjugate_mismatch);
        max_mod = std::max(max_mod, e.max_modulus);
        for (int i = 0; i < 3; ++i) {
            min_decay = std::min(min_decay, e.modes[i].r2_decay);
            min_phase = std::min(min_phase, e.modes[i].r2_phase);
            note("theta %.4f lambda_%d: decay %.5f (R^2 %.6f), phase slope %.3e (R^2 %.4f)", th, i + 2,
                 e.modes[i].decay, e.modes[i].r2_decay, e.modes[i].curvature, e.modes[i].r2_phase);
        }
    }
    note("k=0 max error %.2e; max |lambda_4 - conj lambda_3| %.2e; max |lambda| - 1 = %.2e", k0_err, conj_err,
         max_mod - 1.0);
    const bool ok = k0_err <= 1e-10 && conj_err <= 1e-10 && max_mod <= 1 + 1e-10 && min_decay >= 0.99 &&
                    min_phase >= 0.99;
    char buf[200];
    std::snprintf(buf, sizeof buf, "spectra: k=0, conjugate pair, |lambda| <= 1 %s; min R^2 decay %.5f, phase %.4f",
                  k0_err <= 1e-10 && conj_err <= 1e-10 && max_mod <= 1 + 1e-10 ? "ok" : "VIOLATED", min_decay,
                  min_phase);
    verdict(7, ok, buf);
}

void criterion_8() {
    double worst = 0.0;
    for (std::int64_t t = 1; t <= 50; ++t) {
        for (int j = 0; j < 100; ++j) {
            const double k = -pi + 2 * pi * (j + 0.5) / 100.0;
            for (double th : {pi / 6, pi / 4}) {
                Eigen::Matrix4d mean = Eigen::Matrix4d::Zero();
                for (std::int64_t d = 1 - t; d <= 1 + t; ++d)
                    mean += build_step_matrix(k, th, static_cast<double>(d)).entries;
                mean /= static_cast<double>(2 * t + 1);
                const auto avg = averaged_step_matrix(k, th, t, AveragingKernel::Discrete).entries;
                worst = std::max(worst, (avg - mean).cwiseAbs().maxCoeff());
            }
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "kernel identity: max entry gap %.2e over t <= 50, 100 k points", worst);
    verdict(8, worst <= 1e-12, buf);
}

void criterion_9() {
    const auto init = make_localized(0, kSymmetric);
    ChannelOptions opts;
    opts.lattice_size = 512;
    opts.steps = 64;
    opts.theta = pi / 4;
    try {
        evolve_two_point_channel(opts, init);
        note("M=512, T=64 accepted");
    } catch (const std::domain_error& e) {
        note("M=512, T=64 rejected: %s", e.what());
    }
    opts.lattice_size = required_lattice_size(pi / 4, 128, init, ShiftAverage::Interval);
    opts.steps = 128;
    note("running the channel with M=%zu, T=128", opts.lattice_size);
    const auto ch = evolve_two_point_channel(opts, init);

    double trace_err = 0.0, min_eig = 0.0;
    for (std::size_t i = 0; i < ch.trace.size(); ++i) {
        trace_err = std::max(trace_err, std::abs(ch.trace[i] - 1.0));
        min_eig = std::min(min_eig, ch.min_block_eigenvalue[i]);
    }
    std::vector<std::int64_t> window;
    std::vector<double> wv;
    for (std::int64_t t = 16; t <= 128; ++t) {
        window.push_back(t);
        wv.push_back(ch.variance[static_cast<std::size_t>(t)]);
    }
    const auto f = fit_power_law(as_double(window), wv, 16, 128);

    const std::vector<std::int64_t> snaps{1, 2, 4, 8, 16, 32, 64};
    const auto mc = elephant_ensemble(pi / 4, snaps, 64, 20000, kSeed + 30, false);
    double worst_z = 0.0;
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        const double exact = ch.variance[static_cast<std::size_t>(snaps[i])];
        const double z = (mc.moments.variance[i] - exact) / mc.moments.se_variance[i];
        worst_z = std::max(worst_z, std::abs(z));
        note("t=%3lld: channel %.4f, ensemble %.4f +- %.4f (z = %+.2f)", static_cast<long long>(snaps[i]), exact,
             mc.moments.variance[i], mc.moments.se_variance[i], z);
    }
    note("trace error %.2e, min block eigenvalue %.2e, exponent %.4f (R^2 %.6f)", trace_err, min_eig, f.exponent, f.r2);
    const bool ok = worst_z <= 3.0 && trace_err <= 1e-9 && std::abs(f.exponent - 3.0) <= 0.1;
    char buf[200];
    std::snprintf(buf, sizeof buf, "exact channel (M=%zu): max |z| %.2f, trace err %.1e, exponent %.3f",
                  opts.lattice_size, worst_z, trace_err, f.exponent);
    verdict(9, ok, buf);
}

void criterion_10() {
    const auto init = make_localized(0, kSymmetric);
    const auto rec = run_trajectory(init, {pi / 4, 0.0}, StepSizeRule::Unit, 100, {100}, kSeed);
    const auto ref = standard_walk(init, pi / 4, 100);
    double amp = 0.0;
    for (Site l = -101; l <= 101; ++l) {
        amp = std::max(amp, std::abs(rec.final_state.up(l) - ref.up(l)));
        amp = std::max(amp, std::abs(rec.final_state.down(l) - ref.down(l)));
    }
    note("unit rule vs standard walk, T=100: max amplitude gap %.2e", amp);

    const std::array<double, 3> thetas{pi / 8, pi / 4, 3 * pi / 8};
    const std::array<CoinBlochState, 4> coins{CoinBlochState{0.0, 0.0}, CoinBlochState{pi / 2, pi / 2},
                                              CoinBlochState{pi / 3, 0.0}, CoinBlochState{2.0, 4.0}};
    const std::size_t n = 40000;
    int printed_ok = 0, corrected_ok = 0, combos = 0;
    std::uint64_t seed = kSeed + 40;
    for (double th : thetas) {
        for (const auto& c : coins) {
            const auto table = conditional_step_distribution({th, 0.0}, c, 2, n, ++seed);
            const double m = std::cos(c.gamma) * std::cos(2 * th) + std::sin(c.gamma) * std::sin(2 * th) * std::sin(c.phi);
            double worst_printed = 0.0, worst_corrected = 0.0;
            for (int d1 : {-1, 1}) {
                for (int d2 : {-1, 1}) {
                    const std::array<int, 2> h{d1, d2};
                    const double observed = table.joint(h);
                    const double printed = std::pow(std::cos((1 - d2) * pi / 4 - th), 2) * (1 + d1 * m) / 2;
                    const double corrected = std::pow(std::cos((d1 - d2) * pi / 4 - th), 2) * (1 + d1 * m) / 2;
                    const auto z = [&](double p) {
                        const double sd = std::sqrt(std::max(p * (1 - p), 1e-300) / static_cast<double>(n));
                        return std::abs(observed - p) / sd;
                    };
                    worst_printed = std::max(worst_printed, z(printed));
                    worst_corrected = std::max(worst_corrected, z(corrected));
                }
            }
            ++combos;
            printed_ok += worst_printed <= 3.0;
            corrected_ok += worst_corrected <= 3.0;
            note("theta %.4f, gamma %.3f, phi %.3f: max z %.2f against the stated joint, %.2f with (d1-d2) in the cosine",
                 th, c.gamma, c.phi, worst_printed, worst_corrected);
        }
    }

    int erw_ok = 0, erw_total = 0;
    const std::vector<std::vector<int>> histories{{1},         {-1},        {1, -1},         {1, 1},
                                                  {-1, -1},    {1, 1, -1},  {1, -1, -1},     {-1, -1, -1},
                                                  {1, 1, 1, 1}, {1, -1, 1, -1, 1}, {-1, 1, 1, 1, 1, -1}, {1, 1, 1, -1, -1, -1, 1}};
    const std::array<double, 3> ps{0.2, 0.75, 0.9};
    for (std::size_t i = 0; i < histories.size(); ++i) {
        const double p = ps[i % ps.size()];
        const auto r = erw_conditional_check(p, histories[i], 50000, kSeed + 100 + i);
        ++erw_total;
        erw_ok += std::abs(r.z) < 4.0;
    }
    note("classical conditional law: %d of %d histories with |z| < 4", erw_ok, erw_total);

    const bool ok = amp <= 1e-12 && printed_ok == combos && erw_ok == erw_total;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "reduction gap %.1e; stated joint fits %d/%d combos (corrected: %d/%d); classical %d/%d histories",
                  amp, printed_ok, combos, corrected_ok, combos, erw_ok, erw_total);
    verdict(10, ok, buf);
}

}  // namespace

int main() {
    std::printf("acceptance run (master seed %llu)\n", static_cast<unsigned long long>(kSeed));
    criterion_3();
    criterion_4();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_10();
    criterion_9();
    criteria_1_2_5();

    std::sort(outcomes.begin(), outcomes.end(), [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
    int unexpected = 0;
    std::printf("\nsummary:");
    for (const auto& o : outcomes) {
        std::printf(" %d:%s", o.id, o.pass ? "PASS" : "FAIL");
        if (!o.pass && !kKnownFailures.count(o.id)) ++unexpected;
    }
    std::printf("\n");
    if (unexpected > 0) std::printf("%d criterion(s) failed outside the documented set {2, 7, 10}\n", unexpected);
    return unexpected > 0 ? 1 : 0;
}
