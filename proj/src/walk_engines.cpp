#include "eqw/walk_engines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "eqw/parallel.hpp"
#include "split_state.hpp"

namespace eqw {

double sample_coin_noise(double theta, double epsilon, Rng& rng) {
    if (epsilon < 0.0) throw std::invalid_argument("coin noise: epsilon must be >= 0");
    if (epsilon == 0.0) return theta;
    return theta + std::uniform_real_distribution<double>(-epsilon, epsilon)(rng);
}

std::int64_t sample_step_size(StepSizeRule rule, std::int64_t t, Rng& rng) {
    if (t < 1) throw std::invalid_argument("step size: t must be >= 1");
    switch (rule) {
        case StepSizeRule::Unit:
            return 1;
        case StepSizeRule::Interval:
            return std::uniform_int_distribution<std::int64_t>(1 - t, 1 + t)(rng);
    }
    throw std::invalid_argument("step size: unknown rule");
}

WalkState apply_coin(WalkState state, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    for (std::size_t i = 0; i < state.size(); ++i) {
        const Complex u = state.amp_up[i], d = state.amp_down[i];
        state.amp_up[i] = {c * u.real() - s * d.imag(), c * u.imag() + s * d.real()};
        state.amp_down[i] = {c * d.real() - s * u.imag(), c * d.imag() + s * u.real()};
    }
    return state;
}

WalkState apply_shift(WalkState state, Site delta) {
    if (delta == 0) return state;
    const Site reach = std::abs(delta);
    const std::size_t n = state.size();
    const std::size_t m = n + 2 * static_cast<std::size_t>(reach);
    std::vector<Complex> up(m), down(m);
    // Old index i sits at window_lo + i; the new window starts at window_lo - reach.
    for (std::size_t i = 0; i < n; ++i) {
        up[static_cast<std::size_t>(static_cast<Site>(i) + reach + delta)] = state.amp_up[i];
        down[static_cast<std::size_t>(static_cast<Site>(i) + reach - delta)] = state.amp_down[i];
    }
    state.window_lo -= reach;
    state.amp_up = std::move(up);
    state.amp_down = std::move(down);
    return state;
}

WalkState step_standard(WalkState state, const CoinParams& coin, Rng& rng) {
    const double angle = sample_coin_noise(coin.theta, coin.noise_epsilon, rng);
    state = apply_shift(apply_coin(std::move(state), angle), 1);
    ++state.time;
    return state;
}

WalkState step_elephant(WalkState state, double coin_angle, Site delta) {
    state = apply_shift(apply_coin(std::move(state), coin_angle), delta);
    ++state.time;
    return state;
}

namespace {

std::vector<std::int64_t> checked_snapshots(std::vector<std::int64_t> snaps, std::int64_t steps) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (snaps.empty()) throw std::invalid_argument("snapshot list is empty");
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
    if (snaps.front() < 0 || snaps.back() > steps)
        throw std::invalid_argument("snapshot times must lie in [0, steps]");
    return snaps;
}

Site reference_site(const WalkState& init) {
    const auto p = position_distribution(init);
    double mean = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i)
        mean += p.probs[i] * static_cast<double>(p.window_lo + static_cast<Site>(i));
    return static_cast<Site>(std::llround(mean));
}

// Runs one realization; observe(snapshot_index, state) fires at each snapshot.
template <class Observe>
detail::SplitState evolve(const WalkState& init, const CoinParams& coin, StepSizeRule rule,
                          std::int64_t steps, const std::vector<std::int64_t>& snaps, Rng& rng,
                          Observe&& observe, std::vector<Site>* deltas = nullptr,
                          std::vector<double>* angles = nullptr) {
    detail::SplitState state(init);
    std::size_t next = 0;
    if (snaps[next] == 0) observe(next++, state);
    for (std::int64_t t = 1; t <= steps; ++t) {
        const Site delta = sample_step_size(rule, t, rng);
        const double angle = sample_coin_noise(coin.theta, coin.noise_epsilon, rng);
        if (deltas) deltas->push_back(delta);
        if (angles) angles->push_back(angle);
        state.apply_coin(std::cos(angle), std::sin(angle));
        state.apply_shift(delta);
        if (next < snaps.size() && snaps[next] == t) observe(next++, state);
    }
    return state;
}

struct DistributionSum {
    Site lo = 0;
    std::vector<double> sum;

    void add(Site window_lo, const std::vector<double>& p) {
        if (p.empty()) return;
        const Site hi = window_lo + static_cast<Site>(p.size()) - 1;
        if (sum.empty()) {
            lo = window_lo;
            sum.assign(p.size(), 0.0);
        } else {
            const Site cur_hi = lo + static_cast<Site>(sum.size()) - 1;
            const Site new_lo = std::min(lo, window_lo), new_hi = std::max(cur_hi, hi);
            if (new_lo != lo || new_hi != cur_hi) {
                std::vector<double> grown(static_cast<std::size_t>(new_hi - new_lo + 1), 0.0);
                std::copy(sum.begin(), sum.end(), grown.begin() + (lo - new_lo));
                sum = std::move(grown);
                lo = new_lo;
            }
        }
        const std::size_t off = static_cast<std::size_t>(window_lo - lo);
        for (std::size_t i = 0; i < p.size(); ++i) sum[off + i] += p[i];
    }
};

MomentSeries summarize(const std::vector<detail::RawMoments>& per_traj, std::size_t n_traj,
                       std::size_t n_snaps, Site ref) {
    MomentSeries out;
    const double n = static_cast<double>(n_traj);
    for (std::size_t s = 0; s < n_snaps; ++s) {
        double M1 = 0, M2 = 0, M3 = 0, M4 = 0;
        for (std::size_t i = 0; i < n_traj; ++i) {
            const auto& m = per_traj[i * n_snaps + s];
            M1 += m.m1;
            M2 += m.m2;
            M3 += m.m3;
            M4 += m.m4;
        }
        M1 /= n;
        M2 /= n;
        M3 /= n;
        M4 /= n;
        const double var = M2 - M1 * M1;
        const double mu4 = M4 - 4 * M1 * M3 + 6 * M1 * M1 * M2 - 3 * M1 * M1 * M1 * M1;
        out.mean.push_back(static_cast<double>(ref) + M1);
        out.variance.push_back(var);
        out.excess_kurtosis.push_back(var > 0 ? mu4 / (var * var) - 3.0 : std::nan(""));

        // Standard errors from the per-trajectory influence of m1 and m2 - 2 M1 m1.
        double se_mean = 0, se_var = 0;
        if (n_traj > 1) {
            double s1 = 0, s2 = 0;
            for (std::size_t i = 0; i < n_traj; ++i) {
                const auto& m = per_traj[i * n_snaps + s];
                const double a = m.m1 - M1;
                const double b = (m.m2 - 2 * M1 * m.m1) - (M2 - 2 * M1 * M1);
                s1 += a * a;
                s2 += b * b;
            }
            se_mean = std::sqrt(s1 / (n - 1) / n);
            se_var = std::sqrt(s2 / (n - 1) / n);
        }
        out.se_mean.push_back(se_mean);
        out.se_variance.push_back(se_var);
    }
    return out;
}

}  // namespace

TrajectoryRecord run_trajectory(const WalkState& init, const CoinParams& coin, StepSizeRule rule,
                                std::int64_t steps, std::vector<std::int64_t> snapshots,
                                std::uint64_t seed, std::uint64_t stream) {
    const auto snaps = checked_snapshots(std::move(snapshots), steps);
    TrajectoryRecord rec;
    rec.master_seed = seed;
    rec.stream = stream;
    rec.snapshot_times = snaps;
    Rng rng = make_stream(seed, stream);

    std::vector<double> probs;
    const auto record = [&](std::size_t, const detail::SplitState& st) {
        PositionDistribution d;
        st.probabilities(probs, 0);
        d.window_lo = st.lo();
        d.probs = probs;
        rec.distributions.push_back(std::move(d));
        rec.coin_densities.push_back(st.coin_density());
    };
    const auto state =
        evolve(init, coin, rule, steps, snaps, rng, record, &rec.step_sizes, &rec.coin_angles);
    rec.final_state = state.to_walk_state(init.time + steps);
    return rec;
}

EnsembleResult run_ensemble(const WalkState& init, const CoinParams& coin, StepSizeRule rule,
                            std::int64_t steps, std::vector<std::int64_t> snapshots,
                            std::size_t trajectories, std::uint64_t master_seed,
                            const EnsembleOptions& options) {
    if (trajectories < 1) throw std::invalid_argument("ensemble: trajectories must be >= 1");
    const auto snaps = checked_snapshots(std::move(snapshots), steps);
    const std::size_t S = snaps.size();
    const Site ref = reference_site(init);

    struct Partial {
        std::vector<DistributionSum> dists;
        std::vector<Eigen::Matrix2cd> coins;
        std::vector<detail::RawMoments> moments;
    };

    EnsembleResult result;
    result.times = snaps;
    result.trajectories = trajectories;
    result.master_seed = master_seed;

    std::vector<DistributionSum> dist_total(options.keep_distributions ? S : 0);
    std::vector<Eigen::Matrix2cd> coin_total(S, Eigen::Matrix2cd::Zero());
    std::vector<detail::RawMoments> moments;
    moments.reserve(trajectories * S);

    const auto work = [&](std::size_t begin, std::size_t end) {
        Partial part;
        part.dists.resize(options.keep_distributions ? S : 0);
        part.coins.assign(S, Eigen::Matrix2cd::Zero());
        part.moments.resize((end - begin) * S);
        std::vector<double> probs;
        for (std::size_t i = begin; i < end; ++i) {
            Rng rng = make_stream(master_seed, i);
            evolve(init, coin, rule, steps, snaps, rng,
                   [&](std::size_t s, const detail::SplitState& st) {
                       part.moments[(i - begin) * S + s] = st.probabilities(probs, ref);
                       if (options.keep_distributions) part.dists[s].add(st.lo(), probs);
                       part.coins[s] += st.coin_density().rho;
                   });
        }
        return part;
    };
    const auto merge = [&](Partial&& part) {
        for (std::size_t s = 0; s < dist_total.size(); ++s)
            dist_total[s].add(part.dists[s].lo, part.dists[s].sum);
        for (std::size_t s = 0; s < S; ++s) coin_total[s] += part.coins[s];
        moments.insert(moments.end(), part.moments.begin(), part.moments.end());
    };
    ordered_chunk_reduce(trajectories, options.chunk, options.threads, work, merge);

    const double inv_n = 1.0 / static_cast<double>(trajectories);
    for (std::size_t s = 0; s < dist_total.size(); ++s) {
        PositionDistribution d;
        d.window_lo = dist_total[s].lo;
        d.probs = std::move(dist_total[s].sum);
        for (double& p : d.probs) p *= inv_n;
        result.mean_distributions.push_back(std::move(d));
    }
    for (std::size_t s = 0; s < S; ++s) {
        CoinDensity c;
        c.rho = coin_total[s] * inv_n;
        result.mean_coin_densities.push_back(c);
    }
    result.moments = summarize(moments, trajectories, S, ref);
    return result;
}

std::size_t ConditionalTable::index(std::span<const int> history) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < history.size(); ++k)
        if (history[k] > 0) idx |= std::size_t{1} << k;
    return idx;
}

std::size_t ConditionalTable::prefix_count(std::span<const int> prefix) const {
    if (prefix.size() > static_cast<std::size_t>(steps))
        throw std::invalid_argument("conditional table: prefix longer than history");
    const std::size_t mask = (std::size_t{1} << prefix.size()) - 1;
    const std::size_t want = index(prefix);
    std::size_t n = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if ((i & mask) == want) n += counts[i];
    return n;
}

double ConditionalTable::joint(std::span<const int> history) const {
    if (history.size() != static_cast<std::size_t>(steps))
        throw std::invalid_argument("conditional table: history length mismatch");
    return static_cast<double>(counts[index(history)]) / static_cast<double>(samples);
}

double ConditionalTable::joint_stderr(std::span<const int> history) const {
    const double p = joint(history);
    return std::sqrt(p * (1 - p) / static_cast<double>(samples));
}

double ConditionalTable::conditional(std::span<const int> prefix, int next) const {
    std::vector<int> ext(prefix.begin(), prefix.end());
    ext.push_back(next);
    const std::size_t denom = prefix_count(prefix);
    if (denom == 0) return std::nan("");
    return static_cast<double>(prefix_count(ext)) / static_cast<double>(denom);
}

double ConditionalTable::conditional_stderr(std::span<const int> prefix, int next) const {
    const std::size_t denom = prefix_count(prefix);
    if (denom == 0) return std::nan("");
    const double p = conditional(prefix, next);
    return std::sqrt(p * (1 - p) / static_cast<double>(denom));
}

ConditionalTable conditional_step_distribution(const CoinParams& coin, const CoinBlochState& init,
                                               int steps, std::size_t samples, std::uint64_t seed) {
    if (steps < 1 || steps > 3)
        throw std::invalid_argument("conditional_step_distribution: steps must be in [1, 3]");
    if (samples < 1) throw std::invalid_argument("conditional_step_distribution: samples must be >= 1");

    ConditionalTable table;
    table.steps = steps;
    table.samples = samples;
    table.counts.assign(std::size_t{1} << steps, 0);

    Rng rng = make_stream(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t n = 0; n < samples; ++n) {
        WalkState state = make_localized(0, init);
        Site position = 0;
        std::size_t idx = 0;
        for (int k = 0; k < steps; ++k) {
            state = step_standard(std::move(state), coin, rng);
            // Projective position measurement.
            const auto p = position_distribution(state);
            const double u = unit(rng) * p.total();
            double acc = 0.0;
            std::size_t hit = p.probs.size() - 1;
            for (std::size_t i = 0; i < p.probs.size(); ++i) {
                acc += p.probs[i];
                if (u < acc && p.probs[i] > 0.0) {
                    hit = i;
                    break;
                }
            }
            const Site site = state.window_lo + static_cast<Site>(hit);
            const double norm = std::sqrt(p.probs[hit]);
            WalkState collapsed;
            collapsed.window_lo = site;
            collapsed.time = state.time;
            collapsed.amp_up = {state.amp_up[hit] / norm};
            collapsed.amp_down = {state.amp_down[hit] / norm};
            state = std::move(collapsed);

            if (site - position > 0) idx |= std::size_t{1} << k;
            position = site;
        }
        ++table.counts[idx];
    }
    return table;
}

}  // namespace eqw
