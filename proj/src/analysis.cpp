#include "eqw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace eqw {

DistributionMoments moments(const PositionDistribution& dist) {
    const double total = dist.total();
    if (!(total > 0.0)) throw std::domain_error("moments: distribution has no mass");
    double mean = 0.0;
    for (std::size_t j = 0; j < dist.probs.size(); ++j)
        mean += dist.probs[j] * static_cast<double>(dist.window_lo + static_cast<Site>(j));
    mean /= total;
    double m2 = 0.0, m4 = 0.0;
    for (std::size_t j = 0; j < dist.probs.size(); ++j) {
        const double d = static_cast<double>(dist.window_lo + static_cast<Site>(j)) - mean;
        const double d2 = d * d;
        m2 += dist.probs[j] * d2;
        m4 += dist.probs[j] * d2 * d2;
    }
    m2 /= total;
    m4 /= total;
    DistributionMoments out;
    out.mean = mean;
    out.variance = m2;
    out.excess_kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : std::numeric_limits<double>::quiet_NaN();
    return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_line: x and y differ in length");
    const std::size_t n = x.size();
    if (n < 2) throw FitWindowError("fit_line: need at least 2 points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw FitWindowError("fit_line: x values are all equal");

    LinearFit f;
    f.points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        sse += r * r;
    }
    // Constant or exactly linear data: scale the residual against the data itself.
    double scale = 0;
    for (std::size_t i = 0; i < n; ++i) scale += y[i] * y[i];
    const double tiny = 1e-24 * std::max(scale, 1e-300);
    if (syy <= tiny) {
        f.r2 = sse <= tiny ? 1.0 : 0.0;
    } else {
        f.r2 = std::clamp(1.0 - sse / syy, 0.0, 1.0);
    }
    if (n > 2) {
        const double s2 = sse / static_cast<double>(n - 2);
        f.slope_se = std::sqrt(s2 / sxx);
        double sx2 = 0;
        for (std::size_t i = 0; i < n; ++i) sx2 += x[i] * x[i];
        f.intercept_se = std::sqrt(s2 * sx2 / (static_cast<double>(n) * sxx));
    }
    return f;
}

PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values,
                          double t_min, double t_max) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_power_law: times and values differ in length");
    if (!(t_min < t_max)) throw FitWindowError("fit_power_law: window needs t_min < t_max");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_min || times[i] > t_max) continue;
        if (!(times[i] > 0.0)) throw std::domain_error("fit_power_law: times in the window must be > 0");
        if (!(values[i] > 0.0)) throw std::domain_error("fit_power_law: values in the window must be > 0");
        lx.push_back(std::log(times[i]));
        ly.push_back(std::log(values[i]));
    }
    if (lx.size() < 5)
        throw FitWindowError("fit_power_law: window [" + std::to_string(t_min) + ", " +
                             std::to_string(t_max) + "] holds " + std::to_string(lx.size()) +
                             " points; need at least 5");
    const LinearFit line = fit_line(lx, ly);
    PowerLawFit f;
    f.exponent = line.slope;
    f.coefficient = std::exp(line.intercept);
    f.r2 = line.r2;
    f.t_min = t_min;
    f.t_max = t_max;
    f.exponent_se = line.slope_se;
    f.coefficient_se = f.coefficient * line.intercept_se;
    f.points = line.points;
    return f;
}

double trace_distance(const CoinDensity& a, const CoinDensity& b) {
    const auto ra = a.bloch(), rb = b.bloch();
    const double d0 = ra[0] - rb[0], d1 = ra[1] - rb[1], d2 = ra[2] - rb[2];
    return 0.5 * std::sqrt(d0 * d0 + d1 * d1 + d2 * d2);
}

TraceDistanceSeries make_trace_distance_series(std::vector<std::int64_t> times,
                                               std::vector<double> distance) {
    if (times.size() != distance.size())
        throw std::invalid_argument("trace distance: times and values differ in length");
    TraceDistanceSeries s;
    s.times = std::move(times);
    s.distance = std::move(distance);
    for (std::size_t i = 0; i + 1 < s.distance.size(); ++i) {
        const double v = s.distance[i + 1] - s.distance[i];
        s.velocity.push_back(v);
        if (v > 0.0) {
            s.blp_sum += v;
            ++s.positive_events;
        }
    }
    return s;
}

TraceDistanceSeries trace_distance_experiment(const TraceDistanceConfig& config) {
    if (config.steps < 1) throw std::invalid_argument("trace distance: steps must be >= 1");
    std::vector<std::int64_t> snaps(static_cast<std::size_t>(config.steps) + 1);
    for (std::size_t t = 0; t < snaps.size(); ++t) snaps[t] = static_cast<std::int64_t>(t);

    EnsembleOptions opts;
    opts.keep_distributions = false;
    opts.threads = config.threads;
    // Trajectory i of both runs draws from the same stream, and the draws do
    // not depend on the state, so the pair shares its randomness.
    const auto start = [&](const CoinBlochState& coin) {
        return config.packet.delta > 0.0 ? make_gaussian_packet(config.packet, coin)
                                         : make_localized(config.packet.center, coin);
    };
    const auto a = run_ensemble(start(config.state_a), config.coin, config.rule, config.steps, snaps,
                                config.trajectories, config.seed, opts);
    const auto b = run_ensemble(start(config.state_b), config.coin, config.rule, config.steps, snaps,
                                config.trajectories, config.seed, opts);
    std::vector<double> d(snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i)
        d[i] = trace_distance(a.mean_coin_densities[i], b.mean_coin_densities[i]);
    return make_trace_distance_series(a.times, std::move(d));
}

GaussianityResult gaussianity_check(const PositionDistribution& dist) {
    const DistributionMoments m = moments(dist);
    if (!(m.variance > 0.0)) throw std::domain_error("gaussianity: variance must be > 0");
    const double total = dist.total();

    double parity_mass[2] = {0.0, 0.0};
    for (std::size_t j = 0; j < dist.probs.size(); ++j) {
        const Site l = dist.window_lo + static_cast<Site>(j);
        parity_mass[l & 1] += dist.probs[j];
    }
    GaussianityResult out;
    out.excess_kurtosis = m.excess_kurtosis;
    int occupied = -1;
    for (int p = 0; p < 2; ++p)
        if (parity_mass[1 - p] < 1e-12 * total) occupied = p;
    out.single_parity = occupied >= 0;

    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * m.variance);
    for (std::size_t j = 0; j < dist.probs.size(); ++j) {
        const Site l = dist.window_lo + static_cast<Site>(j);
        const double x = static_cast<double>(l) - m.mean;
        double g = norm * std::exp(-x * x / (2.0 * m.variance));
        if (out.single_parity) g = (static_cast<int>(l & 1) == occupied) ? 2.0 * g : 0.0;
        out.sup_norm = std::max(out.sup_norm, std::abs(dist.probs[j] / total - g));
    }
    return out;
}

}  // namespace eqw
