#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "trihelix/decomposition.hpp"
#include "trihelix/hurst.hpp"
#include "trihelix/panel.hpp"
#include "trihelix/spectral.hpp"

namespace trihelix {

struct ReportOptions {
  Axis axis = Axis::geo;
  int fit_degree = 2;
  bool plots = false;
  std::string input_name;      // echoed into the report metadata
  std::string crosswalk_name;  // empty when no crosswalk was applied
};

struct YearAnalysis {
  int year = 0;
  EntropySet entropies;
  double synergy = 0;  // bits
  TransmissionPower power;
};

// Amplitude-versus-synergy fit for one frequency; carries the error code
// instead of a fit when the points were degenerate.
struct FrequencyFit {
  std::size_t l = 0;
  bool ok = false;
  std::string error;
  PolyFit fit;
};

// Everything the report command emits. All synergy values are in bits; the
// rendering layers convert to mbits where a human-facing table calls for it.
struct AnalysisReport {
  std::string tool_version;
  ReportOptions options;

  std::vector<YearAnalysis> years;

  std::vector<std::string> group_labels;
  std::vector<std::vector<double>> contributions;  // [year][group], bits
  double additivity_max_abs_error = 0;

  bool deviation_ok = false;
  std::string deviation_error;
  DeviationReport deviation;

  GroupSpectra spectra;

  bool hurst_ok = false;
  std::string hurst_error;
  HurstResult hurst;

  std::vector<FrequencyFit> fits;  // |mean synergy| vs C_l, one per frequency
};

// Runs the full pipeline. Needs at least two years; sections that fail on
// degenerate data (deviations, Hurst, individual fits) record their error
// code instead of aborting the report.
AnalysisReport analyze(const PanelSeries& panel, const ReportOptions& options);

// Deterministic JSON: fixed key order, floats at 12 significant digits.
std::string report_json(const AnalysisReport& report);

// Per-year table: year, national synergy (bits), tau, then one contribution
// column per group.
std::string series_csv(const AnalysisReport& report);

// Writes report.json and series.csv (plus the SVG charts when options.plots
// is set) into out_dir, creating it if needed. Throws "io-error" when the
// directory or a file cannot be written.
void write_report_files(const AnalysisReport& report, const std::filesystem::path& out_dir);

}  // namespace trihelix
