#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "eqw/parallel.hpp"
#include "eqw/spectral_channel.hpp"

namespace eqw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Length-n DFT; sign -1 gives sum_l x_l e^{-2 pi i j l / n}.
std::vector<Complex> dft(std::vector<Complex> in, int sign) {
    std::vector<Complex> out(in.size());
    auto* src = reinterpret_cast<fftw_complex*>(in.data());
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(in.size()), src, dst,
                                      sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

std::size_t wrap(Site l, std::size_t m) {
    const auto mm = static_cast<Site>(m);
    return static_cast<std::size_t>(((l % mm) + mm) % mm);
}

// <exp(-i Delta x)> for the step-t rule.
Complex shift_factor(double x, std::int64_t t, ShiftAverage averaging) {
    const Complex phase = std::polar(1.0, -x);
    if (averaging == ShiftAverage::Unit) return phase;
    return phase * averaging_factor(0.5 * x, t, AveragingKernel::Discrete);
}

// rho -> C rho C^dagger with C = [[c, i s], [i s, c]]; entries (00, 01, 10, 11).
inline void conjugate_by_coin(Complex* r, double c, double s) {
    const Complex is = kI * s;
    const Complex y00 = c * r[0] + is * r[2], y01 = c * r[1] + is * r[3];
    const Complex y10 = is * r[0] + c * r[2], y11 = is * r[1] + c * r[3];
    r[0] = c * y00 - is * y01;
    r[1] = -is * y00 + c * y01;
    r[2] = c * y10 - is * y11;
    r[3] = -is * y10 + c * y11;
}

Site reference_site(const WalkState& init) {
    double w = 0, m = 0;
    for (std::size_t j = 0; j < init.size(); ++j) {
        const double p = std::norm(init.amp_up[j]) + std::norm(init.amp_down[j]);
        w += p;
        m += p * static_cast<double>(init.window_lo + static_cast<Site>(j));
    }
    return w > 0 ? static_cast<Site>(std::llround(m / w)) : init.window_lo;
}

std::int64_t max_step(std::int64_t t, ShiftAverage averaging) {
    return averaging == ShiftAverage::Unit ? 1 : t + 1;
}

void fill_moments(double m1, double m2, double m3, double m4, double total, Site ref,
                  std::vector<double>& mean, std::vector<double>& var, std::vector<double>& kurt) {
    m1 /= total;
    m2 /= total;
    m3 /= total;
    m4 /= total;
    const double v = m2 - m1 * m1;
    const double mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
    mean.push_back(static_cast<double>(ref) + m1);
    var.push_back(v);
    kurt.push_back(v > 0.0 ? mu4 / (v * v) - 3.0 : std::numeric_limits<double>::quiet_NaN());
}

}  // namespace

// --- exact moments on the infinite lattice -----------------------------------

ExactMoments exact_channel_moments(double theta, std::int64_t steps, const WalkState& init,
                                   ShiftAverage averaging) {
    if (steps < 0) throw std::invalid_argument("exact moments: steps must be >= 0");
    if (init.size() == 0) throw std::invalid_argument("exact moments: empty initial state");
    constexpr int kOrders = 5;
    const Site ref = reference_site(init);

    // R_n(K) is a trig polynomial in K; the rectangle rule on mk > degree points is exact.
    std::int64_t degree = static_cast<std::int64_t>(init.size()) - 1;
    for (std::int64_t t = 1; t <= steps; ++t) degree += 2 * max_step(t, averaging);
    const std::size_t mk = std::bit_ceil(static_cast<std::size_t>(degree + 1));

    // psi^(j)(K) = sum_l (-i l)^j e^{-i K l} psi(l), positions taken about ref.
    std::vector<std::array<std::array<Complex, 2>, kOrders>> deriv(mk);
    for (std::size_t q = 0; q < mk; ++q) {
        const double K = 2.0 * kPi * static_cast<double>(q) / static_cast<double>(mk);
        for (std::size_t j = 0; j < init.size(); ++j) {
            const double l = static_cast<double>(init.window_lo + static_cast<Site>(j) - ref);
            Complex w = std::polar(1.0, -K * l);
            for (int n = 0; n < kOrders; ++n) {
                deriv[q][n][0] += w * init.amp_up[j];
                deriv[q][n][1] += w * init.amp_down[j];
                w *= Complex(0.0, -l);
            }
        }
    }
    static constexpr double kBinom[kOrders][kOrders] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};

    // r[q][n][e]: entry e of R_n at K_q.
    std::vector<std::array<std::array<Complex, 4>, kOrders>> r(mk);
    for (std::size_t q = 0; q < mk; ++q) {
        for (int n = 0; n < kOrders; ++n) {
            for (int j = 0; j <= n; ++j) {
                const double w = kBinom[n][j] * std::pow(0.5, j) * std::pow(-0.5, n - j);
                const auto& u = deriv[q][j];
                const auto& v = deriv[q][n - j];
                for (int e = 0; e < 4; ++e) r[q][n][e] += w * u[e / 2] * std::conj(v[e % 2]);
            }
        }
    }
    deriv.clear();
    deriv.shrink_to_fit();

    ExactMoments out;
    out.k_points = mk;
    const auto readout = [&](std::int64_t t) {
        double m[kOrders] = {};
        Complex in_pow = 1.0;
        for (int n = 0; n < kOrders; ++n) {
            Complex sum = 0.0;
            for (std::size_t q = 0; q < mk; ++q) sum += r[q][n][0] + r[q][n][3];
            m[n] = (in_pow * sum).real() / static_cast<double>(mk);
            in_pow *= kI;
        }
        out.times.push_back(t);
        fill_moments(m[1], m[2], m[3], m[4], m[0], ref, out.mean, out.variance, out.excess_kurtosis);
    };
    readout(0);

    const double c = std::cos(theta), s = std::sin(theta);
    for (std::int64_t t = 1; t <= steps; ++t) {
        // Moments <Delta^j> of the step-size law.
        double dm[kOrders] = {};
        const std::int64_t lo = averaging == ShiftAverage::Unit ? 1 : 1 - t;
        const std::int64_t hi = averaging == ShiftAverage::Unit ? 1 : 1 + t;
        for (std::int64_t d = lo; d <= hi; ++d) {
            double p = 1.0;
            for (int j = 0; j < kOrders; ++j) {
                dm[j] += p;
                p *= static_cast<double>(d);
            }
        }
        Complex f[kOrders], g[kOrders];
        Complex mi = 1.0, pi = 1.0;
        for (int j = 0; j < kOrders; ++j) {
            dm[j] /= static_cast<double>(hi - lo + 1);
            f[j] = mi * dm[j];
            g[j] = pi * dm[j];
            mi *= -kI;
            pi *= kI;
        }
        for (std::size_t q = 0; q < mk; ++q) {
            auto& rq = r[q];
            for (int n = 0; n < kOrders; ++n) conjugate_by_coin(rq[n].data(), c, s);
            for (int n = kOrders - 1; n >= 0; --n) {
                Complex uu = 0.0, dd = 0.0;
                for (int j = 0; j <= n; ++j) {
                    uu += kBinom[n][j] * f[j] * rq[n - j][0];
                    dd += kBinom[n][j] * g[j] * rq[n - j][3];
                }
                rq[n][0] = uu;
                rq[n][3] = dd;
            }
            const double K = 2.0 * kPi * static_cast<double>(q) / static_cast<double>(mk);
            const Complex gk = shift_factor(2.0 * K, t, averaging);
            for (int n = 0; n < kOrders; ++n) {
                rq[n][1] *= gk;
                rq[n][2] *= std::conj(gk);
            }
        }
        readout(t);
    }
    return out;
}

std::size_t required_lattice_size(double theta, std::int64_t steps, const WalkState& init,
                                  ShiftAverage averaging) {
    const ExactMoments em = exact_channel_moments(theta, steps, init, averaging);
    double sigma = 0.0;
    for (double v : em.variance) sigma = std::max(sigma, std::sqrt(std::max(v, 0.0)));
    std::size_t m = std::bit_ceil(std::max<std::size_t>(init.size(), 2));
    while (!(8.0 * sigma < static_cast<double>(m))) m *= 2;
    return m;
}

// --- two-point state on the ring --------------------------------------------

TwoPointState::TwoPointState(const WalkState& pure, std::size_t lattice_size) : m_(lattice_size) {
    if (m_ < 2 || !std::has_single_bit(m_))
        throw std::invalid_argument("two-point state: lattice_size must be a power of two >= 2");
    if (pure.size() > m_)
        throw std::invalid_argument("two-point state: initial window wider than the lattice");
    std::vector<Complex> up(m_), down(m_);
    for (std::size_t j = 0; j < pure.size(); ++j) {
        const std::size_t i = wrap(pure.window_lo + static_cast<Site>(j), m_);
        up[i] += pure.amp_up[j];
        down[i] += pure.amp_down[j];
    }
    up = dft(std::move(up), -1);
    down = dft(std::move(down), -1);
    blocks_.resize(m_ * m_ * 4);
    for (std::size_t a = 0; a < m_; ++a) {
        for (std::size_t b = 0; b < m_; ++b) {
            Complex* r = &at(a, b, 0);
            r[0] = up[a] * std::conj(up[b]);
            r[1] = up[a] * std::conj(down[b]);
            r[2] = down[a] * std::conj(up[b]);
            r[3] = down[a] * std::conj(down[b]);
        }
    }
}

void TwoPointState::step(double theta, std::int64_t t, ShiftAverage averaging, unsigned threads) {
    std::vector<Complex> factor(m_);
    for (std::size_t j = 0; j < m_; ++j)
        factor[j] = shift_factor(2.0 * kPi * static_cast<double>(j) / static_cast<double>(m_), t, averaging);
    const double c = std::cos(theta), s = std::sin(theta);
    const std::size_t mask = m_ - 1;
    parallel_for(m_, threads, [&](std::size_t a) {
        Complex* row = &at(a, 0, 0);
        for (std::size_t b = 0; b < m_; ++b) {
            Complex* r = row + 4 * b;
            conjugate_by_coin(r, c, s);
            const Complex fd = factor[(a - b) & mask];
            const Complex fs = factor[(a + b) & mask];
            r[0] *= fd;
            r[1] *= fs;
            r[2] *= std::conj(fs);
            r[3] *= std::conj(fd);
        }
    });
}

double TwoPointState::trace() const {
    double sum = 0.0;
    for (std::size_t a = 0; a < m_; ++a) sum += (at(a, a, 0) + at(a, a, 3)).real();
    return sum / static_cast<double>(m_);
}

double TwoPointState::hermiticity_error() const {
    double err = 0.0;
    for (std::size_t a = 0; a < m_; ++a)
        for (std::size_t b = a; b < m_; ++b)
            for (int e = 0; e < 4; ++e) {
                const int swapped = (e % 2) * 2 + e / 2;
                err = std::max(err, std::abs(at(a, b, e) - std::conj(at(b, a, swapped))));
            }
    return err;
}

std::vector<Eigen::Matrix2cd> TwoPointState::position_blocks() const {
    // rho(l, l) = M^-2 sum_j e^{2 pi i j l / M} sum_a rho(k_a, k_{a-j}).
    const std::size_t mask = m_ - 1;
    std::array<std::vector<Complex>, 3> diag;
    for (auto& d : diag) d.assign(m_, Complex{});
    for (std::size_t a = 0; a < m_; ++a) {
        for (std::size_t j = 0; j < m_; ++j) {
            const Complex* r = &at(a, (a - j) & mask, 0);
            diag[0][j] += r[0];
            diag[1][j] += r[1];
            diag[2][j] += r[3];
        }
    }
    for (auto& d : diag) d = dft(std::move(d), +1);
    const double scale = 1.0 / (static_cast<double>(m_) * static_cast<double>(m_));
    std::vector<Eigen::Matrix2cd> out(m_);
    for (std::size_t l = 0; l < m_; ++l) {
        const Complex uu = diag[0][l] * scale, ud = diag[1][l] * scale, dd = diag[2][l] * scale;
        out[l] << Complex(uu.real(), 0.0), ud, std::conj(ud), Complex(dd.real(), 0.0);
    }
    return out;
}

// --- channel driver ----------------------------------------------------------

ChannelResult evolve_two_point_channel(const ChannelOptions& options, const WalkState& init) {
    const std::size_t m = options.lattice_size;
    if (m < 2 || !std::has_single_bit(m))
        throw std::invalid_argument("channel: lattice_size must be a power of two >= 2");
    if (options.steps < 1) throw std::invalid_argument("channel: steps must be >= 1");
    for (auto t : options.distribution_times)
        if (t < 0 || t > options.steps)
            throw std::invalid_argument("channel: distribution time outside [0, steps]");

    const ExactMoments em = exact_channel_moments(options.theta, options.steps, init, options.averaging);
    double sigma = 0.0;
    for (double v : em.variance) sigma = std::max(sigma, std::sqrt(std::max(v, 0.0)));
    if (!(8.0 * sigma < static_cast<double>(m)) || init.size() > m) {
        const std::size_t need = required_lattice_size(options.theta, options.steps, init, options.averaging);
        throw std::domain_error("aliasing guard: lattice_size " + std::to_string(m) +
                                " is below 8 * max sigma = " + std::to_string(8.0 * sigma) + " for steps " +
                                std::to_string(options.steps) + "; smallest admissible lattice_size is " +
                                std::to_string(need));
    }

    const Site ref = reference_site(init);
    const Site lo = ref - static_cast<Site>(m / 2);
    TwoPointState state(init, m);

    ChannelResult out;
    out.lattice_size = m;
    std::vector<std::int64_t> wanted = options.distribution_times;
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    const auto record = [&](std::int64_t t) {
        const auto blocks = state.position_blocks();
        PositionDistribution dist;
        dist.window_lo = lo;
        dist.probs.resize(m);
        double min_eig = std::numeric_limits<double>::infinity();
        double m0 = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const Site l = lo + static_cast<Site>(i);
            const auto& b = blocks[wrap(l, m)];
            const double p = b(0, 0).real(), q = b(1, 1).real();
            const double half = 0.5 * (p - q);
            min_eig = std::min(min_eig, 0.5 * (p + q) - std::sqrt(half * half + std::norm(b(0, 1))));
            const double prob = p + q;
            dist.probs[i] = prob;
            const double x = static_cast<double>(l - ref), x2 = x * x;
            m0 += prob;
            m1 += prob * x;
            m2 += prob * x2;
            m3 += prob * x2 * x;
            m4 += prob * x2 * x2;
        }
        out.times.push_back(t);
        out.trace.push_back(state.trace());
        out.min_block_eigenvalue.push_back(min_eig);
        fill_moments(m1, m2, m3, m4, m0, ref, out.mean, out.variance, out.excess_kurtosis);
        if (std::binary_search(wanted.begin(), wanted.end(), t)) {
            out.distribution_times.push_back(t);
            out.distributions.push_back(std::move(dist));
        }
    };

    record(0);
    for (std::int64_t t = 1; t <= options.steps; ++t) {
        state.step(options.theta, t, options.averaging, options.threads);
        record(t);
    }
    return out;
}

PowerLawFit predict_variance_law(double theta, std::span<const std::int64_t> times,
                                 const WalkState& init, std::size_t lattice_size, unsigned threads) {
    if (times.empty()) throw std::invalid_argument("variance law: times must be nonempty");
    const std::int64_t steps = *std::max_element(times.begin(), times.end());
    ChannelOptions opt;
    opt.theta = theta;
    opt.steps = steps;
    opt.averaging = ShiftAverage::Interval;
    opt.threads = threads;
    opt.lattice_size =
        lattice_size == 0 ? required_lattice_size(theta, steps, init, ShiftAverage::Interval) : lattice_size;
    const ChannelResult res = evolve_two_point_channel(opt, init);
    std::vector<double> t, v;
    for (auto ti : times) {
        if (ti < 0) throw std::invalid_argument("variance law: times must be >= 0");
        t.push_back(static_cast<double>(ti));
        v.push_back(res.variance[static_cast<std::size_t>(ti)]);
    }
    const auto [tmin, tmax] = std::minmax_element(t.begin(), t.end());
    return fit_power_law(t, v, *tmin, *tmax);
}

}  // namespace eqw
