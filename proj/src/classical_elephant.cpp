#include "eqw/classical_elephant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eqw/parallel.hpp"
#include "eqw/rng.hpp"

namespace eqw {

void ErwParams::validate() const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erw: p must lie in [0, 1]");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("erw: q must lie in [0, 1]");
    if (steps < 1) throw std::invalid_argument("erw: steps must be >= 1");
    if (trajectories < 1) throw std::invalid_argument("erw: trajectories must be >= 1");
}

namespace {

// Fills x[0..T]; `increments` is scratch of size T.
void erw_path(const ErwParams& params, Rng& rng, std::vector<std::int8_t>& increments,
              std::vector<std::int64_t>& x) {
    const auto T = static_cast<std::size_t>(params.steps);
    increments.resize(T);
    x.resize(T + 1);
    x[0] = 0;
    std::bernoulli_distribution first(params.q), keep(params.p);
    increments[0] = first(rng) ? 1 : -1;
    x[1] = increments[0];
    for (std::size_t t = 1; t < T; ++t) {
        const auto j = std::uniform_int_distribution<std::size_t>(0, t - 1)(rng);
        const std::int8_t step = keep(rng) ? increments[j] : static_cast<std::int8_t>(-increments[j]);
        increments[t] = step;
        x[t + 1] = x[t] + step;
    }
}

}  // namespace

std::vector<std::int64_t> run_erw_trajectory(const ErwParams& params, std::uint64_t seed,
                                             std::uint64_t stream) {
    params.validate();
    Rng rng = make_stream(seed, stream);
    std::vector<std::int8_t> inc;
    std::vector<std::int64_t> x;
    erw_path(params, rng, inc, x);
    return x;
}

ErwMoments erw_ensemble_moments(const ErwParams& params, std::uint64_t master_seed,
                                std::vector<std::int64_t> times, unsigned threads) {
    params.validate();
    if (times.empty()) {
        times.resize(static_cast<std::size_t>(params.steps) + 1);
        for (std::size_t t = 0; t < times.size(); ++t) times[t] = static_cast<std::int64_t>(t);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.front() < 0 || times.back() > params.steps)
        throw std::invalid_argument("erw: times must lie in [0, steps]");

    const std::size_t S = times.size();
    // Power sums of X_t; exact in long double up to 2^64.
    struct Sums {
        std::vector<long double> s1, s2, s3, s4;
    };
    Sums total{std::vector<long double>(S), std::vector<long double>(S), std::vector<long double>(S),
               std::vector<long double>(S)};

    const auto work = [&](std::size_t begin, std::size_t end) {
        Sums part{std::vector<long double>(S), std::vector<long double>(S),
                  std::vector<long double>(S), std::vector<long double>(S)};
        std::vector<std::int8_t> inc;
        std::vector<std::int64_t> x;
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = make_stream(master_seed, i);
            erw_path(params, rng, inc, x);
            for (std::size_t s = 0; s < S; ++s) {
                const auto v = static_cast<long double>(x[static_cast<std::size_t>(times[s])]);
                part.s1[s] += v;
                part.s2[s] += v * v;
                part.s3[s] += v * v * v;
                part.s4[s] += v * v * v * v;
            }
        }
        return part;
    };
    const auto merge = [&](Sums&& part) {
        for (std::size_t s = 0; s < S; ++s) {
            total.s1[s] += part.s1[s];
            total.s2[s] += part.s2[s];
            total.s3[s] += part.s3[s];
            total.s4[s] += part.s4[s];
        }
    };
    ordered_chunk_reduce(params.trajectories, 256, threads, work, merge);

    ErwMoments out;
    out.times = times;
    const long double n = static_cast<long double>(params.trajectories);
    for (std::size_t s = 0; s < S; ++s) {
        const long double m1 = total.s1[s] / n, m2 = total.s2[s] / n, m3 = total.s3[s] / n,
                          m4 = total.s4[s] / n;
        const long double var = m2 - m1 * m1;
        const long double mu4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
        out.mean.push_back(static_cast<double>(m1));
        out.variance.push_back(static_cast<double>(var));
        out.se_mean.push_back(static_cast<double>(std::sqrt(std::max(var, 0.0L) / n)));
        out.se_variance.push_back(static_cast<double>(std::sqrt(std::max(mu4 - var * var, 0.0L) / n)));
    }
    return out;
}

double erw_conditional_probability(double p, std::span<const int> history, int ell) {
    if (history.empty()) throw std::invalid_argument("erw: history must be nonempty");
    if (ell != 1 && ell != -1) throw std::invalid_argument("erw: ell must be +1 or -1");
    const double t = static_cast<double>(history.size());
    double sum = 0.0;
    for (int d : history) {
        if (d != 1 && d != -1) throw std::invalid_argument("erw: history entries must be +1 or -1");
        sum += 1.0 - (1.0 - 2.0 * p) * ell * d;
    }
    return sum / (2.0 * t);
}

ErwConditionalCheck erw_conditional_check(double p, std::span<const int> history, std::size_t samples,
                                          std::uint64_t seed, int ell) {
    if (samples < 1) throw std::invalid_argument("erw: samples must be >= 1");
    ErwConditionalCheck out;
    out.analytic = erw_conditional_probability(p, history, ell);
    out.samples = samples;

    Rng rng = make_stream(seed, 0);
    std::uniform_int_distribution<std::size_t> pick(0, history.size() - 1);
    std::bernoulli_distribution keep(p);
    std::size_t hits = 0;
    for (std::size_t n = 0; n < samples; ++n) {
        const int past = history[pick(rng)];
        const int next = keep(rng) ? past : -past;
        if (next == ell) ++hits;
    }
    out.empirical = static_cast<double>(hits) / static_cast<double>(samples);
    const double se = std::sqrt(out.analytic * (1 - out.analytic) / static_cast<double>(samples));
    if (se > 0) {
        out.z = (out.empirical - out.analytic) / se;
    } else {
        out.z = out.empirical == out.analytic ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return out;
}

}  // namespace eqw
