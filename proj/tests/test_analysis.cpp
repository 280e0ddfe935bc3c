#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "eqw/analysis.hpp"

using namespace eqw;
using std::numbers::pi;

namespace {

PositionDistribution lattice_gaussian(double mu, double sigma, double span) {
    PositionDistribution d;
    d.window_lo = static_cast<Site>(std::floor(mu - span * sigma));
    const Site hi = static_cast<Site>(std::ceil(mu + span * sigma));
    for (Site l = d.window_lo; l <= hi; ++l) {
        const double x = static_cast<double>(l) - mu;
        d.probs.push_back(std::exp(-x * x / (2 * sigma * sigma)) / std::sqrt(2 * pi * sigma * sigma));
    }
    return d;
}

CoinDensity random_density(std::mt19937_64& g) {
    std::normal_distribution<double> nd;
    Eigen::Matrix2cd a;
    a << Complex(nd(g), nd(g)), Complex(nd(g), nd(g)), Complex(nd(g), nd(g)), Complex(nd(g), nd(g));
    Eigen::Matrix2cd rho = a * a.adjoint();
    rho /= rho.trace().real();
    return {rho};
}

double trace_norm_distance(const CoinDensity& a, const CoinDensity& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(a.rho - b.rho);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& g) {
    std::normal_distribution<double> nd;
    Eigen::Matrix2cd a;
    a << Complex(nd(g), nd(g)), Complex(nd(g), nd(g)), Complex(nd(g), nd(g)), Complex(nd(g), nd(g));
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(a);
    return qr.householderQ();
}

}  // namespace

TEST_CASE("moments: examples") {
    const auto two = moments({-1, {0.5, 0.0, 0.5}});
    CHECK(two.mean == 0.0);
    CHECK(two.variance == 1.0);
    CHECK(two.excess_kurtosis == doctest::Approx(-2.0));

    const auto g = moments(lattice_gaussian(3.0, 20.0, 8.0));
    CHECK(std::abs(g.excess_kurtosis) < 1e-3);
    CHECK(g.mean == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(g.variance == doctest::Approx(400.0).epsilon(1e-6));

    const auto point = moments({12, {1.0}});
    CHECK(point.mean == 12.0);
    CHECK(point.variance == 0.0);
    CHECK(std::isnan(point.excess_kurtosis));
    CHECK_THROWS_AS(moments({0, {0.0, 0.0}}), std::domain_error);
}

TEST_CASE("power law fits: exact, noisy, window errors") {
    std::vector<double> t, v;
    for (int i = 1; i <= 40; ++i) {
        t.push_back(i * 5.0);
        v.push_back(4.0 * std::pow(i * 5.0, 3));
    }
    const auto f = fit_power_law(t, v, 5, 200);
    CHECK(std::abs(f.exponent - 3.0) < 1e-12);
    CHECK(std::abs(f.coefficient - 4.0) < 1e-10);
    CHECK(std::abs(f.r2 - 1.0) < 1e-12);
    CHECK(f.points == 40);
    CHECK(f.t_min == 5);
    CHECK(f.t_max == 200);

    std::mt19937_64 g(3);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> noisy;
    for (double x : t) noisy.push_back(x * x * (1 + noise(g)));
    const auto n = fit_power_law(t, noisy, 5, 200);
    CHECK(std::abs(n.exponent - 2.0) < 0.02);
    CHECK(n.exponent_se > 0.0);
    CHECK(n.r2 >= 0.0);
    CHECK(n.r2 <= 1.0);

    CHECK_THROWS_AS(fit_power_law(t, v, 5, 20), FitWindowError);
    CHECK_THROWS_AS(fit_power_law(t, v, 20, 20), FitWindowError);
    std::vector<double> bad = v;
    bad[3] = -1.0;
    CHECK_THROWS_AS(fit_power_law(t, bad, 5, 200), std::domain_error);
}

TEST_CASE("power law fits are scale equivariant") {
    std::mt19937_64 g(4);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    std::vector<double> t, v;
    for (int i = 1; i <= 30; ++i) {
        t.push_back(i);
        v.push_back(std::pow(i, 1.7) * u(g));
    }
    const auto base = fit_power_law(t, v, 1, 30);
    for (double s : {1e-3, 0.5, 7.0, 1e5}) {
        std::vector<double> w;
        for (double x : v) w.push_back(s * x);
        const auto scaled = fit_power_law(t, w, 1, 30);
        CHECK(std::abs(scaled.exponent - base.exponent) < 1e-12);
        CHECK(scaled.coefficient == doctest::Approx(s * base.coefficient).epsilon(1e-12));
    }
}

TEST_CASE("line fit: constant response") {
    std::vector<double> x{1, 2, 3, 4}, y{0.5, 0.5, 0.5, 0.5};
    const auto f = fit_line(x, y);
    CHECK(f.slope == 0.0);
    CHECK(f.r2 == 1.0);
    std::vector<double> same{2, 2};
    CHECK_THROWS_AS(fit_line(same, same), FitWindowError);
}

TEST_CASE("trace distance: examples and eigenvalue oracle") {
    const auto n = CoinDensity::pure({0.0, 0.0}), s = CoinDensity::pure({pi, 0.0});
    CHECK(trace_distance(n, n) == 0.0);
    CHECK(trace_distance(n, s) == doctest::Approx(1.0).epsilon(1e-15));

    std::mt19937_64 g(5);
    for (int i = 0; i < 500; ++i) {
        const auto a = random_density(g), b = random_density(g), c = random_density(g);
        const double ab = trace_distance(a, b);
        CHECK(std::abs(ab - trace_norm_distance(a, b)) < 1e-12);
        CHECK(ab == trace_distance(b, a));
        CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-12);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0 + 1e-10);
        const auto u = random_unitary(g);
        const CoinDensity ua{u * a.rho * u.adjoint()}, ub{u * b.rho * u.adjoint()};
        CHECK(std::abs(trace_distance(ua, ub) - ab) < 1e-12);
    }
}

TEST_CASE("trace distance series and velocities") {
    const auto s = make_trace_distance_series({0, 1, 2, 3, 4}, {1.0, 0.8, 0.9, 0.7, 0.75});
    REQUIRE(s.velocity.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(s.velocity[i] - (s.distance[i + 1] - s.distance[i])) < 1e-14);
    CHECK(s.positive_events == 2);
    CHECK(s.blp_sum == doctest::Approx(0.15).epsilon(1e-12));
    CHECK_THROWS_AS(make_trace_distance_series({0, 1}, {1.0}), std::invalid_argument);
}

TEST_CASE("trace distance experiment: identical states and opposite poles") {
    TraceDistanceConfig same;
    same.state_b = same.state_a;
    same.steps = 20;
    same.trajectories = 50;
    for (double d : trace_distance_experiment(same).distance) CHECK(d == 0.0);

    TraceDistanceConfig poles;
    poles.packet = {0, 0.001};
    poles.coin = {pi / 4, 0.0};
    poles.steps = 100;
    poles.trajectories = 200;
    const auto r = trace_distance_experiment(poles);
    CHECK(r.distance.size() == 101);
    CHECK(r.distance.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.positive_events >= 2);
    for (double d : r.distance) {
        CHECK(d >= 0.0);
        CHECK(d <= 1.0 + 1e-10);
    }
}

TEST_CASE("gaussianity: matched Gaussian, parity awareness") {
    const auto g = gaussianity_check(lattice_gaussian(0.0, 15.0, 10.0));
    CHECK(g.sup_norm < 1e-6);
    CHECK(!g.single_parity);
    CHECK(std::abs(g.excess_kurtosis) < 1e-3);

    // Even sites only, doubled Gaussian weight.
    PositionDistribution even = lattice_gaussian(0.0, 15.0, 10.0);
    double total = 0.0;
    for (std::size_t j = 0; j < even.probs.size(); ++j) {
        if ((even.window_lo + static_cast<Site>(j)) & 1) even.probs[j] = 0.0;
        total += even.probs[j];
    }
    for (double& p : even.probs) p /= total;
    const auto e = gaussianity_check(even);
    CHECK(e.single_parity);
    CHECK(e.sup_norm < 1e-6);

    CHECK_THROWS_AS(gaussianity_check({0, {1.0}}), std::domain_error);

    const auto bimodal = gaussianity_check({-1, {0.5, 0.0, 0.5}});
    CHECK(bimodal.excess_kurtosis == doctest::Approx(-2.0));
}
