// split_state.hpp
// Trajectory propagator used by the engines. Real and imaginary parts live in
// separate buffers and each coin component keeps its own origin, so a shift
// only moves an origin and the coin is one contiguous fused pass.
//
// Invariant: every buffer entry mapping outside the window [lo, hi] is zero.
// Windows only grow, so entries that enter the window were never written.

#pragma once

#include <vector>

#include "eqw/lattice_state.hpp"

namespace eqw::detail {

struct RawMoments {
    double m1 = 0, m2 = 0, m3 = 0, m4 = 0;  ///< sum (l - ref)^k P(l)
};

class SplitState {
  public:
    explicit SplitState(const WalkState& state);

    void apply_coin(double cos_theta, double sin_theta);
    void apply_shift(Site delta);

    Site lo() const { return lo_; }
    Site hi() const { return hi_; }
    std::size_t width() const { return static_cast<std::size_t>(hi_ - lo_ + 1); }

    WalkState to_walk_state(std::int64_t time) const;
    /// Writes P(l) for l in [lo, hi] into out (resized) and returns its raw moments about ref.
    RawMoments probabilities(std::vector<double>& out, Site ref) const;
    CoinDensity coin_density() const;

  private:
    struct Buffer {
        std::vector<double> re, im;
        Site origin = 0;  ///< position of index 0
    };
    static void cover(Buffer& b, Site lo, Site hi);

    Buffer up_, down_;
    Site lo_ = 0, hi_ = 0;
};

}  // namespace eqw::detail
