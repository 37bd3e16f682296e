#pragma once

#include <string>
#include <vector>

namespace trihelix::svg {

// Minimal static charts. Every function returns a complete standalone SVG
// document; coordinates are formatted with fixed precision so identical
// inputs produce identical bytes.

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<double>& x,
                       const std::vector<double>& y);

std::string bar_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<std::string>& labels,
                      const std::vector<double>& values);

// Scatter plus the line y = intercept + slope * x drawn across the x range.
std::string scatter_with_line(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<double>& x,
                              const std::vector<double>& y, double slope, double intercept);

}  // namespace trihelix::svg
