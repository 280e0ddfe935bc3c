// analysis.hpp
// Moments, power-law fits, Gaussianity, and the trace-distance witness.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "eqw/lattice_state.hpp"
#include "eqw/walk_engines.hpp"

namespace eqw {

/// Raised when a fit window holds too few usable points.
class FitWindowError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DistributionMoments {
    double mean = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0;  ///< NaN when the variance is zero
};

DistributionMoments moments(const PositionDistribution& dist);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;  ///< 1 for an exact fit, including a constant response
    double slope_se = 0.0;
    double intercept_se = 0.0;
    std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope x; needs >= 2 points with
/// distinct x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct PowerLawFit {
    double exponent = 0.0;
    double coefficient = 0.0;
    double r2 = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    double exponent_se = 0.0;
    double coefficient_se = 0.0;  ///< delta method: coefficient * se(intercept)
    std::size_t points = 0;
};

/// Least squares on (log t, log value) over points with t in [t_min, t_max].
/// Throws FitWindowError for fewer than 5 points and std::domain_error for
/// non-positive values or times inside the window.
PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values,
                          double t_min, double t_max);

/// Half the trace norm of a - b, via the Bloch-vector difference.
double trace_distance(const CoinDensity& a, const CoinDensity& b);

struct TraceDistanceSeries {
    std::vector<std::int64_t> times;
    std::vector<double> distance;
    std::vector<double> velocity;  ///< v_t = D_{t+1} - D_t, one fewer entry than distance
    double blp_sum = 0.0;          ///< sum of max(v_t, 0)
    std::size_t positive_events = 0;
};

TraceDistanceSeries make_trace_distance_series(std::vector<std::int64_t> times,
                                               std::vector<double> distance);

struct TraceDistanceConfig {
    CoinBlochState state_a{0.0, 0.0};
    CoinBlochState state_b{3.141592653589793, 0.0};
    GaussianPacketSpec packet{};  ///< delta == 0: both start localized at the center
    CoinParams coin{};
    StepSizeRule rule = StepSizeRule::Interval;
    std::int64_t steps = 100;
    std::size_t trajectories = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

/// Two ensembles that share every trajectory's step sizes and coin noise and
/// differ only in the initial coin state; D_t compares their mean coin
/// densities at every t = 0..T.
TraceDistanceSeries trace_distance_experiment(const TraceDistanceConfig& config);

struct GaussianityResult {
    double excess_kurtosis = 0.0;
    double sup_norm = 0.0;
    bool single_parity = false;  ///< compared on one parity class with doubled weight
};

/// Sup-norm distance to the lattice Gaussian with the same mean and variance.
/// Throws std::domain_error for zero variance.
GaussianityResult gaussianity_check(const PositionDistribution& dist);

}  // namespace eqw
