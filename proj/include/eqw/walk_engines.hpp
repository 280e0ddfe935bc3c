// walk_engines.hpp
// Coin, coin-conditioned shift, the standard one-step unitary and the
// elephant walk whose shift magnitude is redrawn every step from a window that
// grows with time. Trajectories are unitary given their sampled step sizes;
// the elephant channel is the average over trajectories.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eqw/lattice_state.hpp"
#include "eqw/rng.hpp"

namespace eqw {

struct CoinParams {
    double theta = 0.7853981633974483;
    double noise_epsilon = 0.0;  ///< per-step uniform jitter of theta on [-eps, eps]
};

enum class StepSizeRule {
    Unit,      ///< Delta_t = 1: the standard walk
    Interval,  ///< Delta_t uniform on the integers {1-t, ..., 1+t}
};

/// theta + xi with xi ~ U[-epsilon, epsilon]; consumes no randomness for epsilon == 0.
double sample_coin_noise(double theta, double epsilon, Rng& rng);

/// Consumes no randomness for StepSizeRule::Unit.
std::int64_t sample_step_size(StepSizeRule rule, std::int64_t t, Rng& rng);

/// (up, down) <- (cos th up + i sin th down, i sin th up + cos th down) at every site.
WalkState apply_coin(WalkState state, double theta);

/// Moves the up component by +delta sites and the down component by -delta.
WalkState apply_shift(WalkState state, Site delta);

WalkState step_standard(WalkState state, const CoinParams& coin, Rng& rng);

/// Coin with the (already sampled) angle, then the shift by delta.
WalkState step_elephant(WalkState state, double coin_angle, Site delta);

struct TrajectoryRecord {
    std::uint64_t master_seed = 0;
    std::uint64_t stream = 0;
    std::vector<Site> step_sizes;     ///< Delta_1 .. Delta_T
    std::vector<double> coin_angles;  ///< effective theta_1 .. theta_T
    std::vector<std::int64_t> snapshot_times;
    std::vector<PositionDistribution> distributions;
    std::vector<CoinDensity> coin_densities;
    WalkState final_state;
};

/// Evolves one realization. Per step t the stream yields Delta_t first, then
/// the coin noise. Deterministic in (inputs, seed, stream).
TrajectoryRecord run_trajectory(const WalkState& init, const CoinParams& coin, StepSizeRule rule,
                                std::int64_t steps, std::vector<std::int64_t> snapshots,
                                std::uint64_t seed, std::uint64_t stream = 0);

struct MomentSeries {
    std::vector<double> mean;
    std::vector<double> variance;
    std::vector<double> excess_kurtosis;
    std::vector<double> se_mean;
    std::vector<double> se_variance;
};

struct EnsembleOptions {
    bool keep_distributions = true;
    unsigned threads = 0;  ///< 0: hardware concurrency
    std::size_t chunk = 8;  ///< trajectories per reduction unit; fixes the summation order
};

struct EnsembleResult {
    std::vector<std::int64_t> times;
    std::vector<PositionDistribution> mean_distributions;  ///< empty unless kept
    std::vector<CoinDensity> mean_coin_densities;
    MomentSeries moments;  ///< moments of the mean distribution, with standard errors
    std::size_t trajectories = 0;
    std::uint64_t master_seed = 0;
};

/// Averages N trajectories; trajectory i draws from make_stream(master_seed, i).
/// Output is independent of the thread count.
EnsembleResult run_ensemble(const WalkState& init, const CoinParams& coin, StepSizeRule rule,
                            std::int64_t steps, std::vector<std::int64_t> snapshots,
                            std::size_t trajectories, std::uint64_t master_seed,
                            const EnsembleOptions& options = {});

/// Empirical law of observed displacements when the position is measured
/// projectively after every unit step.
struct ConditionalTable {
    int steps = 0;
    std::size_t samples = 0;
    std::vector<std::size_t> counts;  ///< bit k of the index set <=> displacement k+1 was +1

    static std::size_t index(std::span<const int> history);
    std::size_t prefix_count(std::span<const int> prefix) const;
    double joint(std::span<const int> history) const;
    double joint_stderr(std::span<const int> history) const;
    /// Frequency of `next` among samples that started with `prefix`.
    double conditional(std::span<const int> prefix, int next) const;
    double conditional_stderr(std::span<const int> prefix, int next) const;
};

ConditionalTable conditional_step_distribution(const CoinParams& coin, const CoinBlochState& init,
                                               int steps, std::size_t samples, std::uint64_t seed);

}  // namespace eqw
