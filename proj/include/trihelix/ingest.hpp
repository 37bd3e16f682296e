#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trihelix/panel.hpp"

namespace trihelix {

// Column names of the long-format input CSV.
struct CsvSchema {
  std::string year = "year";
  std::string geo = "geo";
  std::string org = "org";
  std::string tech = "tech";
  std::string count = "count";
};

// Reads a long-format CSV (header year,geo,org,tech,count) into per-year
// tensors. Duplicate cells are summed, category universes are unioned across
// years with absent cells zero-filled, and categories are ordered naturally
// (digit runs compare numerically). Errors: "io-error", "schema-error",
// "empty-data", "bad-count" / "bad-row" with the offending row number.
PanelSeries read_panel(const std::filesystem::path& path, const CsvSchema& schema = {});

// Long-format writer; zero cells are omitted. Inverse of read_panel for
// panels whose categories all carry counts somewhere.
void write_panel(const PanelSeries& panel, std::ostream& out);

// Sector-code mapping onto a small set of target classes. Codes are
// hierarchical ("74.14" is a refinement of "74"); resolution tries the full
// code first and then drops dot-segments, so the longest listed prefix wins.
// When a file lists one code under several classes the first row wins and the
// ignored rows are kept for inspection.
class Crosswalk {
 public:
  struct Duplicate {
    std::string code;
    std::string kept_class;
    std::string ignored_class;
  };

  void insert(std::string_view revision, std::string_view code, std::string_view target);

  // Longest-prefix resolution, optionally restricted to one source revision
  // ("*" matches every row).
  std::optional<std::string> resolve(std::string_view code,
                                     std::string_view revision = "*") const;

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Duplicate>& duplicates() const noexcept { return duplicates_; }

  // Normalized form used for matching: segments split on '.', leading zeros
  // dropped ("01.13" -> "1.13").
  static std::string normalize(std::string_view code);

 private:
  struct Entry {
    std::string revision;
    std::string target;
  };
  std::map<std::string, std::vector<Entry>> entries_;  // normalized code -> rows in file order
  std::vector<Duplicate> duplicates_;
};

// CSV with header source_revision,source_code,target_class. '#' lines are
// comments. source_code may be a single hierarchical code or an integer range
// like "50-63" (expanded to one entry per value). Errors: "io-error",
// "schema-error", "crosswalk-error", "empty-data".
Crosswalk load_crosswalk(const std::filesystem::path& path);

// Replaces the tech axis with the crosswalk's target classes, summing counts.
// Totals per year are preserved exactly. Throws "unmapped-code" listing every
// unresolvable code.
PanelSeries apply_crosswalk(const PanelSeries& panel, const Crosswalk& crosswalk,
                            std::string_view revision = "*");

struct ValidationIssue {
  std::string code;  // "empty-year" | "year-gap" | "label-mismatch" | "non-increasing-years"
  std::string message;
};

struct YearStats {
  int year = 0;
  std::int64_t total = 0;
  double zero_cell_fraction = 0;
};

struct ValidationReport {
  std::vector<YearStats> per_year;
  std::vector<ValidationIssue> issues;
};

// Report-only consistency check; never throws, never mutates.
ValidationReport validate_panel(const PanelSeries& panel);

// Ordering used for category labels: digit runs compare numerically, so
// "2" < "10" and "class1" < "class10".
bool natural_less(std::string_view a, std::string_view b) noexcept;

}  // namespace trihelix
