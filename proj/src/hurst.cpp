#include "trihelix/hurst.hpp"

#include <algorithm>
#include <cmath>

#include "trihelix/error.hpp"

namespace trihelix {

const char* hurst_class_name(HurstClass c) noexcept {
  switch (c) {
    case HurstClass::anti_persistent: return "anti-persistent";
    case HurstClass::random_walk: return "random";
    case HurstClass::persistent: return "persistent";
  }
  return "?";
}

std::vector<RescaledRangePoint> rescaled_range(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 3) throw Error("series-too-short", "need at least three samples");
  for (double v : series) {
    if (!std::isfinite(v)) throw Error("invalid-series", "series contains a non-finite value");
  }

  std::vector<RescaledRangePoint> points;
  points.reserve(n - 1);

  // Every prefix is treated as a series of its own: deviations, cumulative
  // sums and the scale all use the prefix mean. Welford keeps the variance
  // update stable; the range needs the per-prefix pass since the mean moves.
  long double welford_mean = 0, welford_m2 = 0;
  for (std::size_t t = 1; t <= n; ++t) {
    const long double value = series[t - 1];
    const long double delta = value - welford_mean;
    welford_mean += delta / t;
    welford_m2 += delta * (value - welford_mean);

    if (t < 2) continue;
    const long double s = std::sqrt(welford_m2 / t);
    if (s == 0.0L) continue;  // flat prefix, no scale

    long double z = 0, z_min = 0, z_max = 0;
    for (std::size_t i = 0; i < t; ++i) {
      z += series[i] - welford_mean;
      if (i == 0) {
        z_min = z_max = z;
      } else {
        z_min = std::min(z_min, z);
        z_max = std::max(z_max, z);
      }
    }
    points.push_back({t, static_cast<double>((z_max - z_min) / s)});
  }

  if (points.size() < 2) {
    throw Error("degenerate-series", "fewer than two usable rescaled-range points");
  }
  return points;
}

HurstResult hurst_exponent(std::span<const double> series) {
  HurstResult result;
  result.points = rescaled_range(series);

  // log-log OLS; points with a zero range carry no information on the slope.
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (const RescaledRangePoint& p : result.points) {
    if (p.rs <= 0.0) continue;
    const long double lx = std::log(static_cast<long double>(p.t));
    const long double ly = std::log(static_cast<long double>(p.rs));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++used;
  }
  if (used < 2) throw Error("degenerate-series", "fewer than two positive rescaled ranges");

  const long double denom = used * sxx - sx * sx;
  result.h = static_cast<double>((used * sxy - sx * sy) / denom);
  result.intercept = static_cast<double>((sy - result.h * sx) / used);

  constexpr double kRandomBand = 0.05;
  if (result.h < 0.5 - kRandomBand) {
    result.classification = HurstClass::anti_persistent;
  } else if (result.h > 0.5 + kRandomBand) {
    result.classification = HurstClass::persistent;
  } else {
    result.classification = HurstClass::random_walk;
  }
  return result;
}

}  // namespace trihelix
