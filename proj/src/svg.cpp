#include "trihelix/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace trihelix::svg {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kMarginLeft = 84;
constexpr double kMarginRight = 24;
constexpr double kMarginTop = 48;
constexpr double kMarginBottom = 64;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c; break;
    }
  }
  return out;
}

struct Range {
  double lo = 0;
  double hi = 1;

  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi <= lo) {
      lo -= 1;
      hi += 1;
      return;
    }
    const double margin = (hi - lo) * 0.05;
    lo -= margin;
    hi += margin;
  }
};

Range span_of(const std::vector<double>& values) {
  Range r;
  if (!values.empty()) {
    r.lo = r.hi = values.front();
    for (double v : values) r.expand(v);
  }
  r.pad();
  return r;
}

double map_x(double v, const Range& r) {
  return kMarginLeft + (v - r.lo) / (r.hi - r.lo) * (kWidth - kMarginLeft - kMarginRight);
}

double map_y(double v, const Range& r) {
  return kHeight - kMarginBottom -
         (v - r.lo) / (r.hi - r.lo) * (kHeight - kMarginTop - kMarginBottom);
}

void open_document(std::string& out, const std::string& title) {
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) + "\" height=\"" +
         fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " + fmt(kHeight) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" " +
         "font-family=\"sans-serif\" font-size=\"16\">" + escape(title) + "</text>\n";
}

void draw_axes(std::string& out, const std::string& x_label, const std::string& y_label,
               const Range& xr, const Range& yr, bool numeric_x_ticks = true) {
  const double x0 = kMarginLeft;
  const double x1 = kWidth - kMarginRight;
  const double y0 = kHeight - kMarginBottom;
  const double y1 = kMarginTop;
  out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x1) + "\" y2=\"" +
         fmt(y0) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x0) + "\" y2=\"" +
         fmt(y1) + "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    if (numeric_x_ticks) {
      const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
      const double px = map_x(fx, xr);
      out += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(px) +
             "\" y2=\"" + fmt(y0 + 5) + "\" stroke=\"black\"/>\n";
      out += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(y0 + 20) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
             escape(fmt_tick(fx)) + "</text>\n";
    }

    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const double py = map_y(fy, yr);
    out += "<line x1=\"" + fmt(x0 - 5) + "\" y1=\"" + fmt(py) + "\" x2=\"" + fmt(x0) +
           "\" y2=\"" + fmt(py) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(x0 - 8) + "\" y=\"" + fmt(py + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape(fmt_tick(fy)) + "</text>\n";
  }

  out += "<text x=\"" + fmt((x0 + x1) / 2) + "\" y=\"" + fmt(kHeight - 16) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(x_label) + "</text>\n";
  out += "<text x=\"20\" y=\"" + fmt((y0 + y1) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" " +
         "transform=\"rotate(-90 20 " + fmt((y0 + y1) / 2) + ")\">" +
         escape(y_label) + "</text>\n";

  // zero line when the y range crosses zero
  if (yr.lo < 0.0 && yr.hi > 0.0) {
    const double zy = map_y(0.0, yr);
    out += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(zy) + "\" x2=\"" + fmt(x1) + "\" y2=\"" +
           fmt(zy) + "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 4\"/>\n";
  }
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<double>& x,
                       const std::vector<double>& y) {
  std::string out;
  open_document(out, title);
  const Range xr = span_of(x);
  const Range yr = span_of(y);
  draw_axes(out, x_label, y_label, xr, yr);

  std::string path;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    path += (i == 0 ? "" : " ") + fmt(map_x(x[i], xr)) + "," + fmt(map_y(y[i], yr));
  }
  out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"" + path +
         "\"/>\n";
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    out += "<circle cx=\"" + fmt(map_x(x[i], xr)) + "\" cy=\"" + fmt(map_y(y[i], yr)) +
           "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string bar_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<std::string>& labels,
                      const std::vector<double>& values) {
  std::string out;
  open_document(out, title);
  Range yr = span_of(values);
  yr.expand(0.0);
  yr.pad();
  Range xr{0.0, static_cast<double>(values.size())};

  draw_axes(out, x_label, y_label, xr, yr, /*numeric_x_ticks=*/false);
  const double base = map_y(std::max(0.0, yr.lo), yr);
  const double slot = (kWidth - kMarginLeft - kMarginRight) / std::max<std::size_t>(1, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double top = map_y(values[i], yr);
    const double x = kMarginLeft + slot * static_cast<double>(i) + slot * 0.15;
    out += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(std::min(top, base)) + "\" width=\"" +
           fmt(slot * 0.7) + "\" height=\"" + fmt(std::fabs(base - top)) +
           "\" fill=\"#1f77b4\"/>\n";
    if (i < labels.size()) {
      out += "<text x=\"" + fmt(x + slot * 0.35) + "\" y=\"" + fmt(kHeight - kMarginBottom + 20) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
             escape(labels[i]) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string scatter_with_line(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<double>& x,
                              const std::vector<double>& y, double slope, double intercept) {
  std::string out;
  open_document(out, title);
  const Range xr = span_of(x);
  Range yr = span_of(y);
  yr.expand(intercept + slope * xr.lo);
  yr.expand(intercept + slope * xr.hi);
  yr.pad();
  draw_axes(out, x_label, y_label, xr, yr);

  out += "<line x1=\"" + fmt(map_x(xr.lo, xr)) + "\" y1=\"" +
         fmt(map_y(intercept + slope * xr.lo, yr)) + "\" x2=\"" + fmt(map_x(xr.hi, xr)) +
         "\" y2=\"" + fmt(map_y(intercept + slope * xr.hi, yr)) +
         "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    out += "<circle cx=\"" + fmt(map_x(x[i], xr)) + "\" cy=\"" + fmt(map_y(y[i], yr)) +
           "\" r=\"4\" fill=\"#1f77b4\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace trihelix::svg
