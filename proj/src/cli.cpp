#include "trihelix/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "trihelix/decomposition.hpp"
#include "trihelix/hurst.hpp"
#include "trihelix/ingest.hpp"
#include "trihelix/report.hpp"
#include "trihelix/spectral.hpp"
#include "trihelix/version.hpp"

namespace trihelix::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

const std::set<std::string>& numeric_error_codes() {
  static const std::set<std::string> codes = {
      "series-too-short", "degenerate-series",      "zero-mean-baseline",
      "singular-fit",     "degenerate-denominator", "insufficient-points",
      "shape-mismatch",   "invalid-series",
  };
  return codes;
}

// fixed-point with a canonical zero (no "-0.0000")
std::string fixed(double v, int precision) {
  char buf[64];
  double rounded = v;
  if (std::fabs(v) < 0.5 * std::pow(10.0, -precision)) rounded = 0.0;
  std::snprintf(buf, sizeof(buf), "%.*f", precision, rounded);
  return buf;
}

struct CommonOptions {
  std::string input;
  std::string crosswalk;
  std::string axis = "geo";
  std::string out;  // report: directory (default trihelix-report); crosswalk: file or stdout
  std::string xy;
  int degree = 2;
  bool plots = false;
};

PanelSeries load_panel(const CommonOptions& opts) {
  PanelSeries panel = read_panel(opts.input);
  if (!opts.crosswalk.empty()) {
    const Crosswalk xwalk = load_crosswalk(opts.crosswalk);
    panel = apply_crosswalk(panel, xwalk);
  }
  return panel;
}

std::vector<YearAnalysis> national_series(const PanelSeries& panel) {
  std::vector<YearAnalysis> out;
  out.reserve(panel.size());
  for (std::size_t y = 0; y < panel.size(); ++y) {
    YearAnalysis a;
    a.year = panel.years[y];
    a.entropies = entropy_set(probabilities(panel.tensors[y]));
    a.synergy = a.entropies.synergy();
    a.power = transmission_power(a.entropies);
    out.push_back(a);
  }
  return out;
}

void cmd_synergy(const CommonOptions& opts, std::ostream& out) {
  const PanelSeries panel = load_panel(opts);
  out << "year  synergy_mbits  tau_x100\n";
  for (const YearAnalysis& a : national_series(panel)) {
    out << a.year << "  " << std::setw(13) << fixed(a.synergy * 1000.0, 4) << "  "
        << std::setw(8) << fixed(a.power.tau * 100.0, 4) << "\n";
  }
}

void cmd_decompose(const CommonOptions& opts, std::ostream& out) {
  const PanelSeries panel = load_panel(opts);
  const Axis axis = axis_from_name(opts.axis);
  out << "year  group  contribution_mbits\n";
  for (std::size_t y = 0; y < panel.size(); ++y) {
    const DecompositionResult dec = decompose(panel.tensors[y], axis);
    const double total = synergy_3d(probabilities(panel.tensors[y]));
    long double sum = 0;
    for (std::size_t g = 0; g < dec.group_labels.size(); ++g) {
      out << panel.years[y] << "  " << dec.group_labels[g] << "  "
          << fixed(dec.contributions[g] * 1000.0, 4) << "\n";
      sum += dec.contributions[g];
    }
    out << panel.years[y] << "  [sum-check]  " << fixed(static_cast<double>(sum) * 1000.0, 4)
        << "  (total " << fixed(total * 1000.0, 4) << ", residual "
        << fixed((static_cast<double>(sum) - total) * 1000.0, 9) << ")\n";
  }
}

void cmd_power(const CommonOptions& opts, std::ostream& out) {
  const PanelSeries panel = load_panel(opts);
  out << "year  tau_x100  branch\n";
  for (const YearAnalysis& a : national_series(panel)) {
    out << a.year << "  " << std::setw(8) << fixed(a.power.tau * 100.0, 4) << "  "
        << tau_branch_name(a.power.branch) << "\n";
  }
}

void cmd_deviation(const CommonOptions& opts, std::ostream& out) {
  const PanelSeries panel = load_panel(opts);
  const DeviationReport report = deviations(panel, axis_from_name(opts.axis));
  out << "group  tau_mean_x100  K_percent  synergy_mean_mbits  P_percent\n";
  for (std::size_t g = 0; g < report.group_labels.size(); ++g) {
    out << report.group_labels[g] << "  " << fixed(report.tau_group_mean[g] * 100.0, 4) << "  "
        << fixed(report.k_percent[g], 2) << "  "
        << fixed(report.synergy_group_mean[g] * 1000.0, 4) << "  "
        << fixed(report.p_percent[g], 2) << "\n";
  }
  out << "baseline  tau_x100 " << fixed(report.tau_baseline * 100.0, 4) << "  synergy_mbits "
      << fixed(report.synergy_baseline * 1000.0, 4) << "\n";
}

void cmd_spectrum(const CommonOptions& opts, std::ostream& out) {
  const PanelSeries panel = load_panel(opts);
  TimeSeries series{panel.years.empty() ? 0 : panel.years.front(), {}};
  for (const ContingencyTensor& tensor : panel.tensors) {
    series.values.push_back(synergy_3d(probabilities(tensor)));
  }
  const SpectrumResult spectrum = dft(series);
  out << "l  period_years  B_mbits  D_mbits  C_mbits\n";
  out << "0  -  " << fixed(spectrum.constant * 1000.0, 4) << "  -  -\n";
  for (std::size_t l = 1; l <= spectrum.harmonics.size(); ++l) {
    const Harmonic& h = spectrum.harmonics[l - 1];
    out << l << "  " << fixed(static_cast<double>(spectrum.length) / l, 2) << "  "
        << fixed(h.b * 1000.0, 4) << "  " << fixed(h.d * 1000.0, 4) << "  "
        << fixed(h.modulus() * 1000.0, 4) << "\n";
  }
}

void cmd_hurst(const CommonOptions& opts, std::ostream& out) {
  const PanelSeries panel = load_panel(opts);
  std::vector<double> series;
  for (const ContingencyTensor& tensor : panel.tensors) {
    series.push_back(synergy_3d(probabilities(tensor)));
  }
  const HurstResult result = hurst_exponent(series);
  out << "H " << fixed(result.h, 6) << "\n";
  out << "intercept " << fixed(result.intercept, 6) << "\n";
  out << "classification " << hurst_class_name(result.classification) << "\n";
  out << "t  rs\n";
  for (const RescaledRangePoint& p : result.points) {
    out << p.t << "  " << fixed(p.rs, 6) << "\n";
  }
}

std::vector<std::pair<double, double>> read_xy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot open '" + path + "'");
  std::vector<std::pair<double, double>> points;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double x = 0, y = 0;
    if (!(fields >> x >> y)) {
      if (row == 1) continue;  // tolerate a header line
      throw Error("bad-row", "row " + std::to_string(row) + ": expected two numeric columns");
    }
    points.emplace_back(x, y);
  }
  if (points.empty()) throw Error("empty-data", "'" + path + "' has no numeric rows");
  return points;
}

void print_fit(const PolyFit& fit, std::ostream& out) {
  out << "degree " << fit.degree << "  coefficients";
  for (double c : fit.coefficients) out << " " << fixed(c, 8);
  out << "  r_squared " << fixed(fit.r_squared, 6) << "\n";
}

void cmd_fit(const CommonOptions& opts, std::ostream& out) {
  if (!opts.xy.empty()) {
    const auto points = read_xy(opts.xy);
    std::vector<double> xs, ys;
    for (const auto& [x, y] : points) {
      xs.push_back(x);
      ys.push_back(y);
    }
    const PolyFit fit = polyfit(xs, ys, opts.degree);
    print_fit(fit, out);
    return;
  }

  const PanelSeries panel = load_panel(opts);
  const GroupSpectra spectra = group_spectra(panel, axis_from_name(opts.axis));
  std::vector<double> abs_means_mbits;
  for (const SpectrumResult& g : spectra.groups) {
    abs_means_mbits.push_back(std::fabs(g.constant) * 1000.0);
  }
  out << "fit of C_l (mbits) against |mean synergy| (mbits) per group\n";
  for (std::size_t l = 1; l <= spectra.aggregate.harmonics.size(); ++l) {
    std::vector<double> amplitudes_mbits;
    for (const SpectrumResult& g : spectra.groups) {
      amplitudes_mbits.push_back(g.harmonics[l - 1].modulus() * 1000.0);
    }
    out << "l " << l << "  ";
    try {
      print_fit(polyfit(abs_means_mbits, amplitudes_mbits, opts.degree), out);
    } catch (const Error& e) {
      out << "skipped (" << e.code() << ")\n";
    }
  }
}

void cmd_crosswalk(const CommonOptions& opts, std::ostream& out) {
  if (opts.crosswalk.empty()) {
    throw Error("schema-error", "the crosswalk command needs --crosswalk <csv>");
  }
  const PanelSeries panel = load_panel(opts);  // load_panel already applies it
  if (opts.out.empty()) {
    write_panel(panel, out);
  } else {
    std::ofstream file(opts.out, std::ios::binary);
    if (!file) throw Error("io-error", "cannot write '" + opts.out + "'");
    write_panel(panel, file);
  }
}

void cmd_report(const CommonOptions& opts, std::ostream& out) {
  const PanelSeries panel = load_panel(opts);
  ReportOptions options;
  options.axis = axis_from_name(opts.axis);
  options.fit_degree = opts.degree;
  options.plots = opts.plots;
  options.input_name = opts.input;
  options.crosswalk_name = opts.crosswalk;
  const AnalysisReport report = analyze(panel, options);
  const std::filesystem::path out_dir = opts.out.empty() ? "trihelix-report" : opts.out;
  write_report_files(report, out_dir);
  out << "wrote " << (out_dir / "report.json").string() << "\n";
  out << "wrote " << (out_dir / "series.csv").string() << "\n";
  if (opts.plots) {
    for (const char* name :
         {"synergy_by_year.svg", "tau_by_year.svg", "spectrum.svg", "hurst_rs.svg"}) {
      const auto path = out_dir / name;
      if (std::filesystem::exists(path)) out << "wrote " << path.string() << "\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triple-Helix synergy analytics for categorical panel data"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions opts;
  std::string command;

  const auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* input = sub->add_option("--input", opts.input, "long-format panel CSV");
    if (needs_input) input->required();
    sub->add_option("--crosswalk", opts.crosswalk, "sector crosswalk CSV to apply");
    sub->add_option("--axis", opts.axis, "decomposition axis")
        ->check(CLI::IsMember({"geo", "org", "tech"}));
    sub->add_option("--degree", opts.degree, "polynomial fit degree")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", opts.out, "output directory (report) or file (crosswalk)");
    sub->add_flag("--plots", opts.plots, "also write SVG charts");
    sub->callback([&, sub] { command = sub->get_name(); });
  };

  add_common(app.add_subcommand("synergy", "per-year total synergy and transmission power"),
             true);
  add_common(app.add_subcommand("decompose", "per-group synergy contributions per year"), true);
  add_common(app.add_subcommand("power", "per-year transmission power"), true);
  add_common(app.add_subcommand("deviation", "per-group K and P percentage deviations"), true);
  add_common(app.add_subcommand("spectrum", "Fourier spectrum of the synergy series"), true);
  add_common(app.add_subcommand("hurst", "rescaled-range analysis of the synergy series"), true);
  auto* fit = app.add_subcommand("fit", "polynomial amplitude-versus-synergy fits");
  add_common(fit, false);
  fit->add_option("--xy", opts.xy, "CSV with two bare numeric columns to fit instead");
  add_common(app.add_subcommand("crosswalk", "remap the tech axis and print the panel"), true);
  add_common(app.add_subcommand("report", "full JSON report plus optional charts"), true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream message;
    const int code = app.exit(e, message, message);
    (code == 0 ? out : err) << message.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (command == "synergy") cmd_synergy(opts, out);
    else if (command == "decompose") cmd_decompose(opts, out);
    else if (command == "power") cmd_power(opts, out);
    else if (command == "deviation") cmd_deviation(opts, out);
    else if (command == "spectrum") cmd_spectrum(opts, out);
    else if (command == "hurst") cmd_hurst(opts, out);
    else if (command == "fit") {
      if (opts.xy.empty() && opts.input.empty()) {
        err << "error: fit needs --input or --xy\n";
        return kExitUsage;
      }
      cmd_fit(opts, out);
    } else if (command == "crosswalk") cmd_crosswalk(opts, out);
    else if (command == "report") cmd_report(opts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return numeric_error_codes().count(e.code()) ? kExitNumeric : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace trihelix::cli
