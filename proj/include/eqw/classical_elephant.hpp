// classical_elephant.hpp
// Monte Carlo for the classical elephant random walk: the first step goes
// right with probability q; afterwards a uniformly chosen past step is
// repeated with probability p or reversed with probability 1 - p.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace eqw {

struct ErwParams {
    double p = 0.5;
    double q = 0.5;
    std::int64_t steps = 1;
    std::size_t trajectories = 1;

    void validate() const;
};

/// X_0 = 0, ..., X_T.
std::vector<std::int64_t> run_erw_trajectory(const ErwParams& params, std::uint64_t seed,
                                             std::uint64_t stream = 0);

struct ErwMoments {
    std::vector<std::int64_t> times;
    std::vector<double> mean, variance, se_mean, se_variance;
};

/// Mean and variance of X_t over N trajectories for t = 0..T (or at `times`).
ErwMoments erw_ensemble_moments(const ErwParams& params, std::uint64_t master_seed,
                                std::vector<std::int64_t> times = {}, unsigned threads = 0);

/// P(Delta_{t+1} = ell | Delta_1..Delta_t) = sum_j [1 - (1-2p) ell Delta_j] / (2t).
double erw_conditional_probability(double p, std::span<const int> history, int ell);

struct ErwConditionalCheck {
    double analytic = 0;
    double empirical = 0;
    double z = 0;
    std::size_t samples = 0;
};

/// Compares the closed form with N fresh continuations of `history`.
ErwConditionalCheck erw_conditional_check(double p, std::span<const int> history, std::size_t samples,
                                          std::uint64_t seed, int ell = +1);

}  // namespace eqw
