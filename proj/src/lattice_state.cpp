#include "eqw/lattice_state.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace eqw {

std::array<Complex, 2> CoinBlochState::spinor() const {
    return {Complex(std::cos(gamma / 2), 0.0), std::polar(std::sin(gamma / 2), -phi)};
}

double WalkState::norm_squared() const {
    double s = 0.0;
    for (std::size_t i = 0; i < size(); ++i) s += std::norm(amp_up[i]) + std::norm(amp_down[i]);
    return s;
}

Complex WalkState::up(Site l) const {
    if (l < window_lo || l > window_hi()) return {};
    return amp_up[static_cast<std::size_t>(l - window_lo)];
}

Complex WalkState::down(Site l) const {
    if (l < window_lo || l > window_hi()) return {};
    return amp_down[static_cast<std::size_t>(l - window_lo)];
}

std::array<double, 3> CoinDensity::bloch() const {
    const Complex off = rho(0, 1);
    return {2.0 * off.real(), -2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

CoinDensity CoinDensity::from_bloch(const std::array<double, 3>& r) {
    CoinDensity d;
    d.rho(0, 0) = 0.5 * (1.0 + r[2]);
    d.rho(1, 1) = 0.5 * (1.0 - r[2]);
    d.rho(0, 1) = Complex(0.5 * r[0], -0.5 * r[1]);
    d.rho(1, 0) = Complex(0.5 * r[0], 0.5 * r[1]);
    return d;
}

CoinDensity CoinDensity::pure(const CoinBlochState& s) {
    const auto v = s.spinor();
    CoinDensity d;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) d.rho(a, b) = v[a] * std::conj(v[b]);
    return d;
}

double PositionDistribution::total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

double PositionDistribution::at(Site l) const {
    if (l < window_lo || l > window_hi()) return 0.0;
    return probs[static_cast<std::size_t>(l - window_lo)];
}

WalkState make_localized(Site l0, const CoinBlochState& coin) {
    const auto s = coin.spinor();
    WalkState state;
    state.window_lo = l0;
    state.amp_up = {s[0]};
    state.amp_down = {s[1]};
    return state;
}

WalkState make_gaussian_packet(const GaussianPacketSpec& spec, const CoinBlochState& coin,
                               double truncation) {
    if (!(spec.delta > 0.0) || !std::isfinite(spec.delta))
        throw std::invalid_argument("gaussian packet: delta must be positive");
    if (!(truncation > 0.0))
        throw std::invalid_argument("gaussian packet: truncation must be positive");

    // |amplitude|^2 ~ exp(-delta l^2) has standard deviation sqrt(1 / (2 delta)).
    const double sd = std::sqrt(0.5 / spec.delta);
    const auto half = static_cast<Site>(std::ceil(truncation * sd));
    const auto n = static_cast<std::size_t>(2 * half + 1);

    std::vector<double> env(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(static_cast<Site>(i) - half);
        env[i] = std::exp(-0.5 * spec.delta * x * x);
        norm += env[i] * env[i];
    }
    norm = std::sqrt(norm);

    const auto s = coin.spinor();
    WalkState state;
    state.window_lo = spec.center - half;
    state.amp_up.resize(n);
    state.amp_down.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        state.amp_up[i] = s[0] * (env[i] / norm);
        state.amp_down[i] = s[1] * (env[i] / norm);
    }
    return state;
}

PositionDistribution position_distribution(const WalkState& state) {
    PositionDistribution d;
    d.window_lo = state.window_lo;
    d.probs.resize(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        d.probs[i] = std::norm(state.amp_up[i]) + std::norm(state.amp_down[i]);
    return d;
}

CoinDensity reduced_coin_density(const WalkState& state) {
    double uu = 0.0, dd = 0.0;
    Complex ud{};
    for (std::size_t i = 0; i < state.size(); ++i) {
        uu += std::norm(state.amp_up[i]);
        dd += std::norm(state.amp_down[i]);
        ud += state.amp_up[i] * std::conj(state.amp_down[i]);
    }
    CoinDensity c;
    c.rho(0, 0) = uu;
    c.rho(1, 1) = dd;
    c.rho(0, 1) = ud;
    c.rho(1, 0) = std::conj(ud);
    return c;
}

void write_csv(std::ostream& out, const PositionDistribution& dist) {
    const auto old = out.precision(17);
    out << "l,p\n";
    for (std::size_t i = 0; i < dist.probs.size(); ++i)
        out << dist.window_lo + static_cast<Site>(i) << ',' << dist.probs[i] << '\n';
    out.precision(old);
}

}  // namespace eqw
