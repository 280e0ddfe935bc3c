#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>

#include "eqw/spectral_channel.hpp"

namespace eqw {

namespace {

// Lower 3x3 block in terms of c = <cos 2k Delta>, s = <sin 2k Delta>.
Eigen::Matrix4d affine_map(double c, double s, double theta) {
    const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 0) = 1.0;
    m(1, 1) = c;
    m(1, 2) = c2 * s;
    m(1, 3) = s * s2;
    m(2, 1) = -s;
    m(2, 2) = c * c2;
    m(2, 3) = c * s2;
    m(3, 1) = 0.0;
    m(3, 2) = -s2;
    m(3, 3) = c2;
    return m;
}

}  // namespace

double averaging_factor(double k, std::int64_t t, AveragingKernel kernel) {
    if (t < 1) throw std::invalid_argument("averaging_factor: t must be >= 1");
    const double n = static_cast<double>(2 * t + 1);
    if (kernel == AveragingKernel::Continuous) {
        const double x = 2.0 * k * static_cast<double>(t);
        if (std::abs(x) < 1e-4) {
            const double x2 = x * x;
            return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
        }
        return std::sin(x) / x;
    }
    const double sk = std::sin(k);
    if (std::abs(sk) < 1e-4) {
        // Near the kernel's removable singularities: the defining mean.
        double sum = 0.0;
        for (std::int64_t j = -t; j <= t; ++j) sum += std::cos(2.0 * k * static_cast<double>(j));
        return sum / n;
    }
    return std::sin(n * k) / (n * sk);
}

StepMatrix build_step_matrix(double k, double theta, double delta) {
    StepMatrix m;
    m.entries = affine_map(std::cos(2.0 * k * delta), std::sin(2.0 * k * delta), theta);
    m.k = k;
    m.theta = theta;
    m.delta = delta;
    return m;
}

StepMatrix averaged_step_matrix(double k, double theta, std::int64_t t, AveragingKernel kernel) {
    const double s = averaging_factor(k, t, kernel);
    StepMatrix m;
    m.entries = affine_map(std::cos(2.0 * k) * s, std::sin(2.0 * k) * s, theta);
    m.k = k;
    m.theta = theta;
    m.averaged_t = t;
    m.kernel = kernel;
    return m;
}

namespace {

// Monic cubic x^3 + a x^2 + b x + c.
struct Cubic {
    double a, b, c;

    Complex operator()(Complex x) const { return ((x + a) * x + b) * x + c; }
    Complex derivative(Complex x) const { return (3.0 * x + 2.0 * a) * x + b; }

    Complex polish(Complex x) const {
        for (int it = 0; it < 8; ++it) {
            const Complex d = derivative(x);
            if (std::abs(d) == 0.0) break;
            const Complex next = x - (*this)(x) / d;
            if (std::abs((*this)(next)) >= std::abs((*this)(x))) break;
            x = next;
        }
        return x;
    }
};

bool phase_less(const Complex& u, const Complex& v) {
    const double mu = std::abs(u), mv = std::abs(v);
    if (mu != mv) return mu > mv;
    return std::arg(u) < std::arg(v);
}

}  // namespace

std::array<Complex, 4> eigenvalues(const StepMatrix& matrix) {
    const Eigen::Matrix3d b = matrix.entries.bottomRightCorner<3, 3>();
    const double tr = b.trace();
    const double minors = b(0, 0) * b(1, 1) - b(0, 1) * b(1, 0) + b(0, 0) * b(2, 2) -
                          b(0, 2) * b(2, 0) + b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1);
    const Cubic p{-tr, minors, -b.determinant()};

    const double q = (p.a * p.a - 3.0 * p.b) / 9.0;
    const double r = (2.0 * p.a * p.a * p.a - 9.0 * p.a * p.b + 27.0 * p.c) / 54.0;
    const double q3 = q * q * q;

    std::array<Complex, 4> out;
    out[0] = 1.0;
    if (r * r < q3) {
        const double sq = std::sqrt(q);
        const double phi = std::acos(std::clamp(r / std::sqrt(q3), -1.0, 1.0));
        std::array<Complex, 3> roots;
        for (int j = 0; j < 3; ++j) {
            const double x = -2.0 * sq * std::cos((phi + 2.0 * std::numbers::pi * j) / 3.0) - p.a / 3.0;
            roots[j] = Complex(p.polish(Complex(x, 0.0)).real(), 0.0);
        }
        std::sort(roots.begin(), roots.end(), phase_less);
        std::copy(roots.begin(), roots.end(), out.begin() + 1);
        return out;
    }

    const double big = -std::copysign(std::cbrt(std::abs(r) + std::sqrt(r * r - q3)), r);
    const double small = big != 0.0 ? q / big : 0.0;
    double real_root = p.polish(Complex(big + small - p.a / 3.0, 0.0)).real();
    // Deflate: x^3 + a x^2 + b x + c = (x - r)(x^2 + e x + f).
    const double e = p.a + real_root;
    const double f = p.b + real_root * e;
    const double disc = e * e - 4.0 * f;
    Complex u, v;
    if (disc < 0.0) {
        u = p.polish(Complex(-0.5 * e, 0.5 * std::sqrt(-disc)));
        if (u.imag() < 0.0) u = std::conj(u);
        v = std::conj(u);
    } else {
        // Rounding left a near-double real root.
        const double h = std::sqrt(disc);
        u = Complex(p.polish(Complex(0.5 * (-e + h), 0.0)).real(), 0.0);
        v = Complex(p.polish(Complex(0.5 * (-e - h), 0.0)).real(), 0.0);
        std::array<Complex, 3> roots{Complex(real_root, 0.0), u, v};
        std::sort(roots.begin(), roots.end(), phase_less);
        std::copy(roots.begin(), roots.end(), out.begin() + 1);
        return out;
    }
    out[1] = real_root;
    out[2] = u;
    out[3] = v;
    return out;
}

EigenExpansion small_k_expansion(double theta, std::span<const std::int64_t> t_list,
                                 std::span<const double> k_grid, AveragingKernel kernel) {
    if (t_list.empty() || k_grid.empty())
        throw std::invalid_argument("small_k_expansion: t_list and k_grid must be nonempty");
    const std::int64_t t_max = *std::max_element(t_list.begin(), t_list.end());
    if (*std::min_element(t_list.begin(), t_list.end()) < 1)
        throw std::invalid_argument("small_k_expansion: times must be >= 1");
    for (double k : k_grid)
        if (std::abs(k) > 0.1 / static_cast<double>(t_max) * (1.0 + 1e-12))
            throw std::invalid_argument("small_k_expansion: k_grid exceeds |k| <= 0.1 / t_max");

    EigenExpansion out;
    std::array<std::vector<double>, 3> decay, phase;
    std::vector<double> x;
    for (std::int64_t t : t_list) {
        for (double k : k_grid) {
            if (k == 0.0) continue;
            const auto lam = eigenvalues(averaged_step_matrix(k, theta, t, kernel));
            const double kt = k * static_cast<double>(t);
            x.push_back(kt * kt);
            for (int i = 0; i < 3; ++i) {
                decay[i].push_back(-std::log(std::abs(lam[i + 1])));
                phase[i].push_back(std::arg(lam[i + 1]));
            }
            for (const auto& l : lam) out.max_modulus = std::max(out.max_modulus, std::abs(l));
            out.max_conjugate_mismatch =
                std::max(out.max_conjugate_mismatch, std::abs(lam[3] - std::conj(lam[2])));
        }
    }
    out.points = x.size();
    if (x.size() < 2) throw FitWindowError("small_k_expansion: need at least 2 nonzero (k, t) points");

    out.valid = true;
    for (int i = 0; i < 3; ++i) {
        const LinearFit d = fit_line(x, decay[i]);
        const LinearFit ph = fit_line(x, phase[i]);
        ModeFit& m = out.modes[i];
        m.decay = d.slope;
        m.decay_intercept = d.intercept;
        m.r2_decay = d.r2;
        m.curvature = ph.slope;
        m.phase_intercept = ph.intercept;
        m.r2_phase = ph.r2;
        if (m.r2_decay < 0.99 || m.r2_phase < 0.99) out.valid = false;
    }
    return out;
}

}  // namespace eqw
