#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trihelix/panel.hpp"
#include "trihelix/tensor.hpp"

namespace trihelix {

// Real-valued yearly signal.
struct TimeSeries {
  int start_year = 0;
  std::vector<double> values;
};

// One oscillatory component: b*cos(2*pi*l*w/L) + d*sin(2*pi*l*w/L).
struct Harmonic {
  double b = 0;
  double d = 0;

  double modulus() const noexcept { return std::hypot(b, d); }  // C_l
};

// Finite discrete Fourier decomposition of a length-L series. The constant
// carries weight 1/L, oscillatory terms 2/L and the Nyquist term (even L)
// 1/L, so that evaluating
//   x_w = constant + sum_l harmonics[l-1].b*cos(2*pi*l*w/L) + ...
// reproduces the input exactly. harmonics has floor(L/2) entries.
struct SpectrumResult {
  std::size_t length = 0;  // L
  double constant = 0;     // A, same units as the input
  std::vector<Harmonic> harmonics;
};

// Per-group spectra of the decomposed synergy series plus the spectrum of the
// total series. Coefficient-wise, the aggregate equals the sum of the groups.
struct GroupSpectra {
  std::vector<std::string> group_labels;
  std::vector<SpectrumResult> groups;
  SpectrumResult aggregate;
};

// Least-squares polynomial fit with its coefficient of determination.
struct PolyFit {
  int degree = 0;
  std::vector<double> coefficients;  // ascending powers, degree + 1 entries
  double r_squared = 0;
};

// Throws "series-too-short" for fewer than two samples.
SpectrumResult dft(const TimeSeries& series);

// Evaluates the spectrum at w = 0 .. length-1. Throws "shape-mismatch" when
// the spectrum is not shaped for the requested length.
TimeSeries inverse_dft(const SpectrumResult& spectrum, std::size_t length, int start_year = 0);

// Per-group synergy series (one decomposition per year) transformed
// individually; the aggregate spectrum comes from the total-synergy series.
// Throws "panel-inconsistent" when years disagree on axis labels.
GroupSpectra group_spectra(const PanelSeries& panel, Axis axis);

// Per-group mean contribution over the years; identical to each group's
// spectrum constant.
std::vector<std::pair<std::string, double>> line_specter(const PanelSeries& panel, Axis axis);

// Throws "insufficient-points" when points <= degree and "singular-fit" when
// the normal equations cannot be solved.
PolyFit polyfit(std::span<const double> x, std::span<const double> y, int degree);

double polyval(const PolyFit& fit, double x) noexcept;

}  // namespace trihelix
