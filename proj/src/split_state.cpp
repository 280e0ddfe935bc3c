#include "split_state.hpp"

#include <algorithm>
#include <cstdlib>

namespace eqw::detail {

SplitState::SplitState(const WalkState& state) : lo_(state.window_lo), hi_(state.window_hi()) {
    const std::size_t n = state.size();
    for (Buffer* b : {&up_, &down_}) {
        b->re.assign(n, 0.0);
        b->im.assign(n, 0.0);
        b->origin = lo_;
    }
    for (std::size_t i = 0; i < n; ++i) {
        up_.re[i] = state.amp_up[i].real();
        up_.im[i] = state.amp_up[i].imag();
        down_.re[i] = state.amp_down[i].real();
        down_.im[i] = state.amp_down[i].imag();
    }
}

void SplitState::cover(Buffer& b, Site lo, Site hi) {
    const auto size = static_cast<Site>(b.re.size());
    if (lo >= b.origin && hi < b.origin + size) return;

    const Site need = hi - lo + 1;
    const Site cap = std::max<Site>(2 * size, 2 * need);
    const Site origin = lo - (cap - need) / 2;
    std::vector<double> re(static_cast<std::size_t>(cap), 0.0), im(re.size(), 0.0);
    // Nonzero data lies inside [lo, hi]; copy its overlap with the old buffer.
    const Site from = std::max(lo, b.origin), to = std::min(hi, b.origin + size - 1);
    for (Site l = from; l <= to; ++l) {
        re[static_cast<std::size_t>(l - origin)] = b.re[static_cast<std::size_t>(l - b.origin)];
        im[static_cast<std::size_t>(l - origin)] = b.im[static_cast<std::size_t>(l - b.origin)];
    }
    b.re = std::move(re);
    b.im = std::move(im);
    b.origin = origin;
}

void SplitState::apply_coin(double c, double s) {
    cover(up_, lo_, hi_);
    cover(down_, lo_, hi_);
    const std::size_t n = width();
    double* __restrict ur = up_.re.data() + (lo_ - up_.origin);
    double* __restrict ui = up_.im.data() + (lo_ - up_.origin);
    double* __restrict dr = down_.re.data() + (lo_ - down_.origin);
    double* __restrict di = down_.im.data() + (lo_ - down_.origin);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = ur[j], b = ui[j], x = dr[j], y = di[j];
        ur[j] = c * a - s * y;
        ui[j] = c * b + s * x;
        dr[j] = c * x - s * b;
        di[j] = c * y + s * a;
    }
}

void SplitState::apply_shift(Site delta) {
    up_.origin += delta;
    down_.origin -= delta;
    const Site reach = std::abs(delta);
    lo_ -= reach;
    hi_ += reach;
}

WalkState SplitState::to_walk_state(std::int64_t time) const {
    WalkState s;
    s.window_lo = lo_;
    s.time = time;
    s.amp_up.resize(width());
    s.amp_down.resize(width());
    const auto read = [](const Buffer& b, Site l) -> Complex {
        const Site i = l - b.origin;
        if (i < 0 || i >= static_cast<Site>(b.re.size())) return {};
        return {b.re[static_cast<std::size_t>(i)], b.im[static_cast<std::size_t>(i)]};
    };
    for (Site l = lo_; l <= hi_; ++l) {
        s.amp_up[static_cast<std::size_t>(l - lo_)] = read(up_, l);
        s.amp_down[static_cast<std::size_t>(l - lo_)] = read(down_, l);
    }
    return s;
}

namespace {

// Copies positions [lo, lo + n) into dst. Right after a shift the window may
// overhang the buffer; uncovered positions read as zero.
void gather(const std::vector<double>& src, Site origin, Site lo, std::size_t n,
            std::vector<double>& dst) {
    dst.assign(n, 0.0);
    const auto size = static_cast<Site>(src.size());
    const Site from = std::max(lo, origin), to = std::min(lo + static_cast<Site>(n) - 1, origin + size - 1);
    for (Site l = from; l <= to; ++l)
        dst[static_cast<std::size_t>(l - lo)] = src[static_cast<std::size_t>(l - origin)];
}

}  // namespace

RawMoments SplitState::probabilities(std::vector<double>& out, Site ref) const {
    const std::size_t n = width();
    out.assign(n, 0.0);
    std::vector<double> tmp;
    for (const auto* v : {&up_.re, &up_.im}) {
        gather(*v, up_.origin, lo_, n, tmp);
        for (std::size_t j = 0; j < n; ++j) out[j] += tmp[j] * tmp[j];
    }
    for (const auto* v : {&down_.re, &down_.im}) {
        gather(*v, down_.origin, lo_, n, tmp);
        for (std::size_t j = 0; j < n; ++j) out[j] += tmp[j] * tmp[j];
    }
    RawMoments m;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(lo_ - ref + static_cast<Site>(j));
        const double p = out[j], x2 = x * x;
        m.m1 += p * x;
        m.m2 += p * x2;
        m.m3 += p * x2 * x;
        m.m4 += p * x2 * x2;
    }
    return m;
}

CoinDensity SplitState::coin_density() const {
    const std::size_t n = width();
    std::vector<double> ur, ui, dr, di;
    gather(up_.re, up_.origin, lo_, n, ur);
    gather(up_.im, up_.origin, lo_, n, ui);
    gather(down_.re, down_.origin, lo_, n, dr);
    gather(down_.im, down_.origin, lo_, n, di);
    double uu = 0, dd = 0, re = 0, im = 0;
    for (std::size_t j = 0; j < n; ++j) {
        uu += ur[j] * ur[j] + ui[j] * ui[j];
        dd += dr[j] * dr[j] + di[j] * di[j];
        // up * conj(down)
        re += ur[j] * dr[j] + ui[j] * di[j];
        im += ui[j] * dr[j] - ur[j] * di[j];
    }
    CoinDensity c;
    c.rho(0, 0) = uu;
    c.rho(1, 1) = dd;
    c.rho(0, 1) = Complex(re, im);
    c.rho(1, 0) = Complex(re, -im);
    return c;
}

}  // namespace eqw::detail
