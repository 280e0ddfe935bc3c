// spectral_channel.hpp
// Momentum-space view of the Delta-averaged walk.
//
//  * StepMatrix: the real 4x4 affine map acting on the Bloch 4-vector
//    (1, r1, r2, r3) of the coin state at momentum k, for a single step size
//    or averaged over the step-size window of time t.
//  * TwoPointState: the coin blocks rho(k_a, k_b) of the full density operator
//    on a periodic lattice; evolving it gives the exact averaged P_t(l).
//  * exact_channel_moments: exact position moments of the averaged walk on
//    the infinite lattice from q-derivatives of rho(K + q/2, K - q/2) at q = 0.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "eqw/analysis.hpp"
#include "eqw/lattice_state.hpp"

namespace eqw {

enum class AveragingKernel {
    Continuous,  ///< (1/2t) integral over [1-t, 1+t]
    Discrete,    ///< mean over the integers {1-t, ..., 1+t}
};

struct StepMatrix {
    Eigen::Matrix4d entries = Eigen::Matrix4d::Identity();
    double k = 0.0;
    double theta = 0.0;
    std::optional<double> delta;             ///< set for a single step size
    std::optional<std::int64_t> averaged_t;  ///< set for an averaged matrix
    std::optional<AveragingKernel> kernel;
};

/// S such that <cos 2k Delta> = cos(2k) S and <sin 2k Delta> = sin(2k) S.
double averaging_factor(double k, std::int64_t t, AveragingKernel kernel);

StepMatrix build_step_matrix(double k, double theta, double delta);
StepMatrix averaged_step_matrix(double k, double theta, std::int64_t t, AveragingKernel kernel);

/// lambda_1 is the trivial eigenvalue 1. When the 3x3 block has a complex
/// pair, lambda_2 is its real eigenvalue and (lambda_3, lambda_4) the pair with
/// Im lambda_3 > 0; otherwise lambda_2..4 are sorted by descending modulus.
std::array<Complex, 4> eigenvalues(const StepMatrix& matrix);

struct ModeFit {
    double decay = 0.0;      ///< B: slope of -log|lambda| against k^2 t^2
    double curvature = 0.0;  ///< C: slope of arg(lambda) against k^2 t^2
    double decay_intercept = 0.0;
    double phase_intercept = 0.0;
    double r2_decay = 0.0;
    double r2_phase = 0.0;
};

struct EigenExpansion {
    std::array<ModeFit, 3> modes;  ///< lambda_2, lambda_3, lambda_4
    double max_modulus = 0.0;      ///< over every fitted point, all four eigenvalues
    double max_conjugate_mismatch = 0.0;  ///< max |lambda_4 - conj(lambda_3)|
    std::size_t points = 0;
    bool valid = false;  ///< every R^2 >= 0.99
};

/// Fits the small-k behaviour of the averaged step matrix; requires
/// |k| <= 0.1 / max(t) on the whole grid.
EigenExpansion small_k_expansion(double theta, std::span<const std::int64_t> t_list,
                                 std::span<const double> k_grid,
                                 AveragingKernel kernel = AveragingKernel::Discrete);

// ---------------------------------------------------------------------------

enum class ShiftAverage {
    Unit,      ///< every shift is Delta = 1; the channel is the standard unitary walk
    Interval,  ///< shift factors averaged over Delta in {1-t, ..., 1+t}
};

/// rho(k_a, k_b) = psi(k_a) psi(k_b)^dagger with psi(k) = sum_l exp(-i k l) psi(l),
/// k_j = 2 pi j / M on a periodic lattice of M sites.
class TwoPointState {
  public:
    TwoPointState(const WalkState& pure, std::size_t lattice_size);

    std::size_t lattice_size() const { return m_; }
    /// Entry (e / 2, e % 2) of the coin block at momenta (a, b).
    Complex& at(std::size_t a, std::size_t b, int e) { return blocks_[(a * m_ + b) * 4 + e]; }
    const Complex& at(std::size_t a, std::size_t b, int e) const { return blocks_[(a * m_ + b) * 4 + e]; }

    /// Coin conjugation followed by the (averaged) shift factors of step t.
    void step(double theta, std::int64_t t, ShiftAverage averaging, unsigned threads = 0);

    /// (1/M) sum_k Tr rho(k, k).
    double trace() const;
    /// max |rho(k_a, k_b) - rho(k_b, k_a)^dagger|.
    double hermiticity_error() const;
    /// Coin blocks rho(l, l) on the ring, l = 0..M-1 (rows: up, down).
    std::vector<Eigen::Matrix2cd> position_blocks() const;

  private:
    std::size_t m_;
    std::vector<Complex> blocks_;
};

struct ChannelOptions {
    std::size_t lattice_size = 512;  ///< M, a power of two
    std::int64_t steps = 64;
    double theta = 0.7853981633974483;
    ShiftAverage averaging = ShiftAverage::Interval;
    std::vector<std::int64_t> distribution_times;  ///< times whose P_t(l) is returned
    unsigned threads = 0;
};

struct ChannelResult {
    std::size_t lattice_size = 0;
    std::vector<std::int64_t> times;  ///< 0..T
    std::vector<double> mean, variance, excess_kurtosis;
    std::vector<double> trace;
    std::vector<double> min_block_eigenvalue;  ///< positivity of rho(l, l), min over l
    std::vector<std::int64_t> distribution_times;
    std::vector<PositionDistribution> distributions;  ///< ring sites mapped to [c - M/2, c + M/2)
};

/// Exact evolution of the averaged walk on an M-site ring. Throws
/// std::domain_error when 8 sigma_t >= M for some t <= T (aliasing guard), with
/// sigma_t taken from exact_channel_moments.
ChannelResult evolve_two_point_channel(const ChannelOptions& options, const WalkState& init);

struct ExactMoments {
    std::vector<std::int64_t> times;  ///< 0..T
    std::vector<double> mean, variance, excess_kurtosis;
    std::size_t k_points = 0;
};

ExactMoments exact_channel_moments(double theta, std::int64_t steps, const WalkState& init,
                                   ShiftAverage averaging);

/// Smallest power of two passing the aliasing guard up to `steps`.
std::size_t required_lattice_size(double theta, std::int64_t steps, const WalkState& init,
                                  ShiftAverage averaging);

/// Log-log fit of the channel variance over the given times. lattice_size = 0
/// picks required_lattice_size.
PowerLawFit predict_variance_law(double theta, std::span<const std::int64_t> times,
                                 const WalkState& init, std::size_t lattice_size = 0,
                                 unsigned threads = 0);

}  // namespace eqw
