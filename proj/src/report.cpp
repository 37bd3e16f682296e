#include "trihelix/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "trihelix/error.hpp"
#include "trihelix/svg.hpp"
#include "trihelix/version.hpp"

namespace trihelix {

namespace {

// Deterministic JSON emission: insertion-ordered keys, two-space indent,
// floats at 12 significant digits.
class JsonWriter {
 public:
  std::string take() { return std::move(out_); }

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(std::string_view name) {
    separate();
    quote(name);
    out_ += ": ";
    pending_value_ = true;
  }

  void string(std::string_view v) {
    separate();
    quote(v);
  }
  void number(double v) {
    separate();
    if (!std::isfinite(v)) {
      out_ += "null";
      return;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);  // canonical zero
    out_ += buf;
  }
  void integer(long long v) {
    separate();
    out_ += std::to_string(v);
  }
  void boolean(bool v) {
    separate();
    out_ += v ? "true" : "false";
  }
  void null() {
    separate();
    out_ += "null";
  }

 private:
  void open(char bracket) {
    separate();
    out_ += bracket;
    counts_.push_back(0);
  }
  void close(char bracket) {
    const bool had_items = counts_.back() > 0;
    counts_.pop_back();
    if (had_items) {
      out_ += '\n';
      indent();
    }
    out_ += bracket;
  }
  // place commas/newlines/indent before an item unless it completes a key
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (counts_.empty()) return;
    if (counts_.back() > 0) out_ += ',';
    out_ += '\n';
    ++counts_.back();
    indent();
  }
  void indent() {
    out_.append(counts_.size() * 2, ' ');
  }
  void quote(std::string_view v) {
    out_ += '"';
    for (char c : v) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<std::size_t> counts_;
  bool pending_value_ = false;
};

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string num12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io-error", "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("io-error", "failed writing '" + path.string() + "'");
}

void emit_spectrum(JsonWriter& json, const SpectrumResult& spectrum) {
  json.begin_object();
  json.key("length");
  json.integer(static_cast<long long>(spectrum.length));
  json.key("constant_bits");
  json.number(spectrum.constant);
  json.key("harmonics");
  json.begin_array();
  for (std::size_t l = 1; l <= spectrum.harmonics.size(); ++l) {
    const Harmonic& h = spectrum.harmonics[l - 1];
    json.begin_object();
    json.key("l");
    json.integer(static_cast<long long>(l));
    json.key("period_years");
    json.number(static_cast<double>(spectrum.length) / static_cast<double>(l));
    json.key("b_bits");
    json.number(h.b);
    json.key("d_bits");
    json.number(h.d);
    json.key("c_bits");
    json.number(h.modulus());
    json.end_object();
  }
  json.end_array();
  json.end_object();
}

}  // namespace

AnalysisReport analyze(const PanelSeries& panel, const ReportOptions& options) {
  if (panel.size() < 2) throw Error("series-too-short", "report needs at least two years");
  if (!panel.consistent()) throw Error("panel-inconsistent", "years disagree on axis labels");

  AnalysisReport report;
  report.tool_version = kVersion;
  report.options = options;

  for (std::size_t y = 0; y < panel.size(); ++y) {
    const ProbabilityModel model(panel.tensors[y]);
    YearAnalysis year;
    year.year = panel.years[y];
    year.entropies = entropy_set(model);
    year.synergy = year.entropies.synergy();
    year.power = transmission_power(year.entropies);
    report.years.push_back(year);
  }

  report.group_labels = panel.tensors.front().labels(options.axis);
  for (std::size_t y = 0; y < panel.size(); ++y) {
    DecompositionResult dec = decompose(panel.tensors[y], options.axis);
    long double sum = 0;
    for (double t : dec.contributions) sum += t;
    report.additivity_max_abs_error =
        std::max(report.additivity_max_abs_error,
                 std::fabs(static_cast<double>(sum) - report.years[y].synergy));
    report.contributions.push_back(std::move(dec.contributions));
  }

  try {
    report.deviation = deviations(panel, options.axis);
    report.deviation_ok = true;
  } catch (const Error& e) {
    report.deviation_error = e.code();
  }

  report.spectra = group_spectra(panel, options.axis);

  std::vector<double> national;
  national.reserve(report.years.size());
  for (const YearAnalysis& y : report.years) national.push_back(y.synergy);
  try {
    report.hurst = hurst_exponent(national);
    report.hurst_ok = true;
  } catch (const Error& e) {
    report.hurst_error = e.code();
  }

  // |mean synergy| of each group against its amplitude C_l, fit per frequency
  std::vector<double> abs_means;
  abs_means.reserve(report.spectra.groups.size());
  for (const SpectrumResult& g : report.spectra.groups) {
    abs_means.push_back(std::fabs(g.constant));
  }
  for (std::size_t l = 1; l <= report.spectra.aggregate.harmonics.size(); ++l) {
    FrequencyFit fit;
    fit.l = l;
    std::vector<double> amplitudes;
    amplitudes.reserve(report.spectra.groups.size());
    for (const SpectrumResult& g : report.spectra.groups) {
      amplitudes.push_back(g.harmonics[l - 1].modulus());
    }
    try {
      fit.fit = polyfit(abs_means, amplitudes, options.fit_degree);
      fit.ok = true;
    } catch (const Error& e) {
      fit.error = e.code();
    }
    report.fits.push_back(std::move(fit));
  }
  return report;
}

std::string report_json(const AnalysisReport& report) {
  JsonWriter json;
  json.begin_object();
  json.key("schema_version");
  json.integer(1);
  json.key("tool");
  json.string("trihelix");
  json.key("tool_version");
  json.string(report.tool_version);
  json.key("input");
  json.string(report.options.input_name);
  json.key("crosswalk");
  if (report.options.crosswalk_name.empty()) {
    json.null();
  } else {
    json.string(report.options.crosswalk_name);
  }
  json.key("axis");
  json.string(axis_name(report.options.axis));
  json.key("fit_degree");
  json.integer(report.options.fit_degree);
  json.key("unit");
  json.string("bits");

  json.key("years");
  json.begin_array();
  for (const YearAnalysis& y : report.years) json.integer(y.year);
  json.end_array();

  json.key("national");
  json.begin_object();
  json.key("synergy_bits");
  json.begin_array();
  for (const YearAnalysis& y : report.years) json.number(y.synergy);
  json.end_array();
  json.key("transmission_power");
  json.begin_array();
  for (const YearAnalysis& y : report.years) json.number(y.power.tau);
  json.end_array();
  json.key("transmission_branch");
  json.begin_array();
  for (const YearAnalysis& y : report.years) json.string(tau_branch_name(y.power.branch));
  json.end_array();
  json.key("entropies_bits");
  json.begin_object();
  const auto entropy_row = [&](const char* name, double EntropySet::* member) {
    json.key(name);
    json.begin_array();
    for (const YearAnalysis& y : report.years) json.number(y.entropies.*member);
    json.end_array();
  };
  entropy_row("h1", &EntropySet::h1);
  entropy_row("h2", &EntropySet::h2);
  entropy_row("h3", &EntropySet::h3);
  entropy_row("h12", &EntropySet::h12);
  entropy_row("h13", &EntropySet::h13);
  entropy_row("h23", &EntropySet::h23);
  entropy_row("h123", &EntropySet::h123);
  json.end_object();
  json.end_object();

  json.key("decomposition");
  json.begin_object();
  json.key("groups");
  json.begin_array();
  for (const std::string& g : report.group_labels) json.string(g);
  json.end_array();
  json.key("contributions_bits");
  json.begin_array();
  for (const std::vector<double>& row : report.contributions) {
    json.begin_array();
    for (double t : row) json.number(t);
    json.end_array();
  }
  json.end_array();
  json.key("additivity_max_abs_error");
  json.number(report.additivity_max_abs_error);
  json.end_object();

  json.key("deviation");
  json.begin_object();
  if (report.deviation_ok) {
    json.key("groups");
    json.begin_array();
    for (const std::string& g : report.deviation.group_labels) json.string(g);
    json.end_array();
    json.key("tau_group_mean");
    json.begin_array();
    for (double v : report.deviation.tau_group_mean) json.number(v);
    json.end_array();
    json.key("synergy_group_mean_bits");
    json.begin_array();
    for (double v : report.deviation.synergy_group_mean) json.number(v);
    json.end_array();
    json.key("k_percent");
    json.begin_array();
    for (double v : report.deviation.k_percent) json.number(v);
    json.end_array();
    json.key("p_percent");
    json.begin_array();
    for (double v : report.deviation.p_percent) json.number(v);
    json.end_array();
    json.key("tau_baseline");
    json.number(report.deviation.tau_baseline);
    json.key("synergy_baseline_bits");
    json.number(report.deviation.synergy_baseline);
  } else {
    json.key("error");
    json.string(report.deviation_error);
  }
  json.end_object();

  json.key("spectrum");
  json.begin_object();
  json.key("aggregate");
  emit_spectrum(json, report.spectra.aggregate);
  json.key("groups");
  json.begin_array();
  for (std::size_t g = 0; g < report.spectra.groups.size(); ++g) {
    json.begin_object();
    json.key("label");
    json.string(report.spectra.group_labels[g]);
    json.key("spectrum");
    emit_spectrum(json, report.spectra.groups[g]);
    json.end_object();
  }
  json.end_array();
  json.end_object();

  json.key("hurst");
  json.begin_object();
  if (report.hurst_ok) {
    json.key("h");
    json.number(report.hurst.h);
    json.key("intercept");
    json.number(report.hurst.intercept);
    json.key("classification");
    json.string(hurst_class_name(report.hurst.classification));
    json.key("points");
    json.begin_array();
    for (const RescaledRangePoint& p : report.hurst.points) {
      json.begin_object();
      json.key("t");
      json.integer(static_cast<long long>(p.t));
      json.key("rs");
      json.number(p.rs);
      json.end_object();
    }
    json.end_array();
  } else {
    json.key("error");
    json.string(report.hurst_error);
  }
  json.end_object();

  json.key("fits");
  json.begin_array();
  for (const FrequencyFit& fit : report.fits) {
    json.begin_object();
    json.key("l");
    json.integer(static_cast<long long>(fit.l));
    if (fit.ok) {
      json.key("degree");
      json.integer(fit.fit.degree);
      json.key("coefficients");
      json.begin_array();
      for (double c : fit.fit.coefficients) json.number(c);
      json.end_array();
      json.key("r_squared");
      json.number(fit.fit.r_squared);
    } else {
      json.key("error");
      json.string(fit.error);
    }
    json.end_object();
  }
  json.end_array();

  json.end_object();
  std::string text = json.take();
  text += '\n';
  return text;
}

std::string series_csv(const AnalysisReport& report) {
  std::string out = "year,synergy_bits,tau";
  for (const std::string& g : report.group_labels) {
    out += ',';
    out += csv_field(g);
  }
  out += '\n';
  for (std::size_t y = 0; y < report.years.size(); ++y) {
    out += std::to_string(report.years[y].year);
    out += ',';
    out += num12(report.years[y].synergy);
    out += ',';
    out += num12(report.years[y].power.tau);
    for (double t : report.contributions[y]) {
      out += ',';
      out += num12(t);
    }
    out += '\n';
  }
  return out;
}

void write_report_files(const AnalysisReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("io-error", "cannot create '" + out_dir.string() + "': " + ec.message());

  write_text_file(out_dir / "report.json", report_json(report));
  write_text_file(out_dir / "series.csv", series_csv(report));
  if (!report.options.plots) return;

  std::vector<double> years, synergy_mbits, tau_x100;
  for (const YearAnalysis& y : report.years) {
    years.push_back(static_cast<double>(y.year));
    synergy_mbits.push_back(y.synergy * 1000.0);
    tau_x100.push_back(y.power.tau * 100.0);
  }
  write_text_file(out_dir / "synergy_by_year.svg",
                  svg::line_chart("Ternary synergy by year", "year", "synergy (mbits)", years,
                                  synergy_mbits));
  write_text_file(out_dir / "tau_by_year.svg",
                  svg::line_chart("Transmission power by year", "year", "tau (x100)", years,
                                  tau_x100));

  std::vector<std::string> freq_labels;
  std::vector<double> moduli_mbits;
  for (std::size_t l = 1; l <= report.spectra.aggregate.harmonics.size(); ++l) {
    freq_labels.push_back(std::to_string(l) + "w");
    moduli_mbits.push_back(report.spectra.aggregate.harmonics[l - 1].modulus() * 1000.0);
  }
  write_text_file(out_dir / "spectrum.svg",
                  svg::bar_chart("Amplitude spectrum of the synergy series", "frequency",
                                 "C (mbits)", freq_labels, moduli_mbits));

  if (report.hurst_ok) {
    std::vector<double> log_t, log_rs;
    for (const RescaledRangePoint& p : report.hurst.points) {
      if (p.rs <= 0.0) continue;
      log_t.push_back(std::log(static_cast<double>(p.t)));
      log_rs.push_back(std::log(p.rs));
    }
    write_text_file(out_dir / "hurst_rs.svg",
                    svg::scatter_with_line("Rescaled-range analysis", "ln t", "ln R/S", log_t,
                                           log_rs, report.hurst.h, report.hurst.intercept));
  }
}

}  // namespace trihelix
