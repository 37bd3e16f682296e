#include "trihelix/spectral.hpp"

#include <cmath>
#include <numbers>

#include "trihelix/decomposition.hpp"
#include "trihelix/error.hpp"

namespace trihelix {

namespace {

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("invalid-series", "series contains a non-finite value");
  }
}

}  // namespace

SpectrumResult dft(const TimeSeries& series) {
  const std::size_t length = series.values.size();
  if (length < 2) throw Error("series-too-short", "need at least two samples");
  check_finite(series.values);

  SpectrumResult out;
  out.length = length;

  long double mean = 0;
  for (double v : series.values) mean += v;
  out.constant = static_cast<double>(mean / length);

  const double step = 2.0 * std::numbers::pi / static_cast<double>(length);
  const std::size_t half = length / 2;
  out.harmonics.resize(half);
  for (std::size_t l = 1; l <= half; ++l) {
    long double b = 0, d = 0;
    if (length % 2 == 0 && l == half) {
      // Nyquist component: cos(pi*w) = +/-1 exactly, sine vanishes.
      for (std::size_t w = 0; w < length; ++w) {
        b += (w % 2 == 0) ? series.values[w] : -series.values[w];
      }
      out.harmonics[l - 1].b = static_cast<double>(b / length);
      out.harmonics[l - 1].d = 0.0;
    } else {
      for (std::size_t w = 0; w < length; ++w) {
        const double angle = step * static_cast<double>(l) * static_cast<double>(w);
        b += series.values[w] * std::cos(angle);
        d += series.values[w] * std::sin(angle);
      }
      out.harmonics[l - 1].b = static_cast<double>(2.0L * b / length);
      out.harmonics[l - 1].d = static_cast<double>(2.0L * d / length);
    }
  }
  return out;
}

TimeSeries inverse_dft(const SpectrumResult& spectrum, std::size_t length, int start_year) {
  if (length < 2 || spectrum.length != length || spectrum.harmonics.size() != length / 2) {
    throw Error("shape-mismatch", "spectrum is not shaped for the requested length");
  }

  TimeSeries out;
  out.start_year = start_year;
  out.values.resize(length);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(length);
  const std::size_t half = length / 2;
  for (std::size_t w = 0; w < length; ++w) {
    long double x = spectrum.constant;
    for (std::size_t l = 1; l <= half; ++l) {
      const Harmonic& h = spectrum.harmonics[l - 1];
      if (length % 2 == 0 && l == half) {
        x += (w % 2 == 0) ? h.b : -h.b;
      } else {
        const double angle = step * static_cast<double>(l) * static_cast<double>(w);
        x += h.b * std::cos(angle) + h.d * std::sin(angle);
      }
    }
    out.values[w] = static_cast<double>(x);
  }
  return out;
}

GroupSpectra group_spectra(const PanelSeries& panel, Axis axis) {
  if (panel.size() < 2) throw Error("series-too-short", "need at least two years");
  if (!panel.consistent()) throw Error("panel-inconsistent", "years disagree on axis labels");

  GroupSpectra out;
  out.group_labels = panel.tensors.front().labels(axis);
  const std::size_t groups = out.group_labels.size();
  const int start_year = panel.years.front();

  std::vector<TimeSeries> group_series(groups);
  TimeSeries total_series{start_year, {}};
  for (std::size_t g = 0; g < groups; ++g) group_series[g].start_year = start_year;

  for (const ContingencyTensor& tensor : panel.tensors) {
    const DecompositionResult dec = decompose(tensor, axis);
    for (std::size_t g = 0; g < groups; ++g) {
      group_series[g].values.push_back(dec.contributions[g]);
    }
    total_series.values.push_back(dec.total);
  }

  out.groups.reserve(groups);
  for (const TimeSeries& s : group_series) out.groups.push_back(dft(s));
  out.aggregate = dft(total_series);
  return out;
}

std::vector<std::pair<std::string, double>> line_specter(const PanelSeries& panel, Axis axis) {
  if (panel.size() == 0) throw Error("empty-data", "panel has no years");
  if (!panel.consistent()) throw Error("panel-inconsistent", "years disagree on axis labels");

  const std::vector<std::string>& labels = panel.tensors.front().labels(axis);
  std::vector<long double> sums(labels.size(), 0);
  for (const ContingencyTensor& tensor : panel.tensors) {
    const DecompositionResult dec = decompose(tensor, axis);
    for (std::size_t g = 0; g < labels.size(); ++g) sums[g] += dec.contributions[g];
  }

  std::vector<std::pair<std::string, double>> out;
  out.reserve(labels.size());
  for (std::size_t g = 0; g < labels.size(); ++g) {
    out.emplace_back(labels[g], static_cast<double>(sums[g] / panel.size()));
  }
  return out;
}

PolyFit polyfit(std::span<const double> x, std::span<const double> y, int degree) {
  if (degree < 1) throw Error("invalid-degree", "fit degree must be at least 1");
  if (x.size() != y.size()) throw Error("insufficient-points", "x and y lengths differ");
  const std::size_t n = x.size();
  const std::size_t terms = static_cast<std::size_t>(degree) + 1;
  if (n < terms) throw Error("insufficient-points", "need more points than the degree");
  check_finite(x);
  check_finite(y);

  // Normal equations G c = r with G[p][q] = sum x^(p+q), r[p] = sum y x^p.
  std::vector<long double> moments(2 * terms - 1, 0);
  std::vector<long double> rhs(terms, 0);
  for (std::size_t i = 0; i < n; ++i) {
    long double power = 1;
    for (std::size_t p = 0; p < moments.size(); ++p) {
      moments[p] += power;
      if (p < terms) rhs[p] += y[i] * power;
      power *= x[i];
    }
  }
  std::vector<std::vector<long double>> g(terms, std::vector<long double>(terms));
  for (std::size_t p = 0; p < terms; ++p)
    for (std::size_t q = 0; q < terms; ++q) g[p][q] = moments[p + q];

  // Gaussian elimination with partial pivoting.
  for (std::size_t col = 0; col < terms; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < terms; ++row) {
      if (std::fabs(static_cast<double>(g[row][col])) >
          std::fabs(static_cast<double>(g[pivot][col]))) {
        pivot = row;
      }
    }
    if (g[pivot][col] == 0.0L) throw Error("singular-fit", "normal equations are singular");
    std::swap(g[col], g[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t row = col + 1; row < terms; ++row) {
      const long double factor = g[row][col] / g[col][col];
      for (std::size_t q = col; q < terms; ++q) g[row][q] -= factor * g[col][q];
      rhs[row] -= factor * rhs[col];
    }
  }
  std::vector<long double> coeff(terms);
  for (std::size_t p = terms; p-- > 0;) {
    long double acc = rhs[p];
    for (std::size_t q = p + 1; q < terms; ++q) acc -= g[p][q] * coeff[q];
    coeff[p] = acc / g[p][p];
  }

  PolyFit fit;
  fit.degree = degree;
  fit.coefficients.reserve(terms);
  for (long double c : coeff) fit.coefficients.push_back(static_cast<double>(c));

  long double y_mean = 0;
  for (std::size_t i = 0; i < n; ++i) y_mean += y[i];
  y_mean /= n;
  long double ss_tot = 0, ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dev = y[i] - y_mean;
    ss_tot += dev * dev;
    const long double resid = y[i] - polyval(fit, x[i]);
    ss_res += resid * resid;
  }
  fit.r_squared =
      ss_tot > 0 ? static_cast<double>(1.0L - ss_res / ss_tot) : 1.0;
  return fit;
}

double polyval(const PolyFit& fit, double x) noexcept {
  double acc = 0;
  for (std::size_t p = fit.coefficients.size(); p-- > 0;) {
    acc = acc * x + fit.coefficients[p];
  }
  return acc;
}

}  // namespace trihelix
