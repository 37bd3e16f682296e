#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace trihelix {

struct RescaledRangePoint {
  std::size_t t = 0;  // prefix length
  double rs = 0;      // (R/S)_t
};

// Bands: below 0.5 anti-persistent (oscillating), near 0.5 random, above 0.5
// persistent (trend-like). "Near" is |h - 0.5| <= 0.05.
enum class HurstClass { anti_persistent, random_walk, persistent };

const char* hurst_class_name(HurstClass c) noexcept;

struct HurstResult {
  double h = 0;          // log-log regression slope
  double intercept = 0;  // regression intercept on the natural-log scale
  std::vector<RescaledRangePoint> points;
  HurstClass classification = HurstClass::random_walk;
};

// Rescaled-range series over all prefixes t = 2 .. N. Each prefix is handled
// as a series of its own: the cumulative deviations and the scale S_t both
// use the prefix mean, with a population (1/t) variance. Prefixes with
// S_t = 0 are omitted. Throws "series-too-short" for N < 3 and
// "degenerate-series" when fewer than two usable prefixes remain.
std::vector<RescaledRangePoint> rescaled_range(std::span<const double> series);

// OLS slope of log(R/S) against log(t); rescaled-range errors propagate.
HurstResult hurst_exponent(std::span<const double> series);

}  // namespace trihelix
