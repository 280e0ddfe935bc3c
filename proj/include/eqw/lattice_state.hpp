// lattice_state.hpp
// Pure walker states on a one-dimensional lattice with a two-level coin,
// plus the position marginal and the reduced coin density derived from them.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace eqw {

using Complex = std::complex<double>;
using Site = std::int64_t;

/// Internal coin state cos(g/2)|up> + exp(-i phi) sin(g/2)|down>.
struct CoinBlochState {
    double gamma = 0.0;  ///< polar angle in [0, pi]
    double phi = 0.0;    ///< azimuth in [0, 2 pi)

    std::array<Complex, 2> spinor() const;
};

/// |Psi>_t over the window [window_lo, window_lo + size()). Sites outside the
/// window carry zero amplitude.
struct WalkState {
    Site window_lo = 0;
    std::vector<Complex> amp_up;
    std::vector<Complex> amp_down;
    std::int64_t time = 0;

    std::size_t size() const { return amp_up.size(); }
    Site window_hi() const { return window_lo + static_cast<Site>(size()) - 1; }
    double norm_squared() const;
    Complex up(Site l) const;
    Complex down(Site l) const;
};

/// 2x2 reduced coin density matrix, rows/cols ordered (up, down).
struct CoinDensity {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

    /// Bloch components (r1, r2, r3) = Tr(rho sigma_i).
    std::array<double, 3> bloch() const;
    static CoinDensity from_bloch(const std::array<double, 3>& r);
    static CoinDensity pure(const CoinBlochState& s);
};

struct PositionDistribution {
    Site window_lo = 0;
    std::vector<double> probs;

    double total() const;
    double at(Site l) const;
    Site window_hi() const { return window_lo + static_cast<Site>(probs.size()) - 1; }
};

struct GaussianPacketSpec {
    Site center = 0;
    double delta = 1e-3;  ///< envelope coefficient in exp(-delta (l - center)^2 / 2)
};

WalkState make_localized(Site l0, const CoinBlochState& coin);

/// Amplitude envelope exp(-delta (l-l0)^2 / 2) times the coin spinor. The
/// window spans +-truncation standard deviations of |amplitude|^2.
WalkState make_gaussian_packet(const GaussianPacketSpec& spec, const CoinBlochState& coin,
                               double truncation = 6.0);

PositionDistribution position_distribution(const WalkState& state);
CoinDensity reduced_coin_density(const WalkState& state);

/// CSV with header `l,p`, one row per site of the window.
void write_csv(std::ostream& out, const PositionDistribution& dist);

}  // namespace eqw
