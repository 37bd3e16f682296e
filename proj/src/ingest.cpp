#include "trihelix/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "trihelix/error.hpp"

namespace trihelix {

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // data rows
  std::vector<std::size_t> row_numbers;        // 1-based record number in the file
};

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

// RFC-4180 style records: quoted fields may contain commas, doubled quotes
// and line breaks. Unquoted fields are trimmed.
CsvTable parse_csv(const std::string& text, bool allow_comments) {
  CsvTable table;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;
  bool any_field = false;
  std::size_t record_number = 1;

  auto push_field = [&]() {
    record.push_back(field_was_quoted ? field : trim(field));
    field.clear();
    field_was_quoted = false;
    any_field = false;
  };
  auto push_record = [&]() {
    const bool blank = record.size() == 1 && record[0].empty();
    const bool comment =
        allow_comments && !record.empty() && !record[0].empty() && record[0][0] == '#';
    if (!blank && !comment) {
      if (table.header.empty()) {
        table.header = record;
      } else {
        table.rows.push_back(record);
        table.row_numbers.push_back(record_number);
      }
    }
    record.clear();
    ++record_number;
  };

  std::size_t i = 0;
  // tolerate a UTF-8 byte-order mark
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!any_field && field.empty()) {
          quoted = true;
          field_was_quoted = true;
          any_field = true;
        } else {
          field += ch;  // stray quote inside an unquoted field: literal
        }
        break;
      case ',':
        push_field();
        break;
      case '\r':
        break;
      case '\n':
        push_field();
        push_record();
        break;
      default:
        field += ch;
        any_field = true;
        break;
    }
  }
  if (!field.empty() || field_was_quoted || !record.empty()) {
    push_field();
    push_record();
  }
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io-error", "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == name) return i;
  }
  throw Error("schema-error", "missing column '" + name + "'");
}

bool parse_int(const std::string& text, long long& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

struct NaturalLabelLess {
  bool operator()(const std::string& a, const std::string& b) const noexcept {
    return natural_less(a, b);
  }
};

void write_csv_field(std::ostream& out, const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

bool natural_less(std::string_view a, std::string_view b) noexcept {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ia = i, jb = j;
      while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia]))) ++ia;
      while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb]))) ++jb;
      std::string_view run_a = a.substr(i, ia - i);
      std::string_view run_b = b.substr(j, jb - j);
      std::string_view sig_a = run_a.substr(std::min(run_a.find_first_not_of('0'), run_a.size()));
      std::string_view sig_b = run_b.substr(std::min(run_b.find_first_not_of('0'), run_b.size()));
      if (sig_a.size() != sig_b.size()) return sig_a.size() < sig_b.size();
      if (sig_a != sig_b) return sig_a < sig_b;
      if (run_a != run_b) return run_a < run_b;  // "01" before "1"... keep total order
      i = ia;
      j = jb;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

PanelSeries read_panel(const std::filesystem::path& path, const CsvSchema& schema) {
  const CsvTable table = parse_csv(read_file(path), /*allow_comments=*/false);
  if (table.header.empty()) throw Error("empty-data", "'" + path.string() + "' is empty");

  const std::size_t year_col = column_index(table, schema.year);
  const std::size_t geo_col = column_index(table, schema.geo);
  const std::size_t org_col = column_index(table, schema.org);
  const std::size_t tech_col = column_index(table, schema.tech);
  const std::size_t count_col = column_index(table, schema.count);
  if (table.rows.empty()) throw Error("empty-data", "'" + path.string() + "' has no data rows");

  struct Row {
    int year;
    std::string geo, org, tech;
    std::int64_t count;
  };
  std::vector<Row> rows;
  rows.reserve(table.rows.size());
  std::set<int> years;
  std::set<std::string, NaturalLabelLess> geo_set, org_set, tech_set;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::vector<std::string>& fields = table.rows[r];
    const std::size_t row_number = table.row_numbers[r];
    const std::size_t needed =
        std::max({year_col, geo_col, org_col, tech_col, count_col}) + 1;
    if (fields.size() < needed) {
      throw Error("bad-row",
                  "row " + std::to_string(row_number) + ": expected at least " +
                      std::to_string(needed) + " fields, got " + std::to_string(fields.size()));
    }
    long long year = 0;
    if (!parse_int(fields[year_col], year)) {
      throw Error("bad-row", "row " + std::to_string(row_number) + ": year '" +
                                 fields[year_col] + "' is not an integer");
    }
    long long count = 0;
    if (!parse_int(fields[count_col], count) || count < 0) {
      throw Error("bad-count", "row " + std::to_string(row_number) + ": count '" +
                                   fields[count_col] + "' is not a non-negative integer");
    }
    const std::string& geo = fields[geo_col];
    const std::string& org = fields[org_col];
    const std::string& tech = fields[tech_col];
    if (geo.empty() || org.empty() || tech.empty()) {
      throw Error("bad-row", "row " + std::to_string(row_number) + ": empty category field");
    }
    rows.push_back({static_cast<int>(year), geo, org, tech, count});
    years.insert(static_cast<int>(year));
    geo_set.insert(geo);
    org_set.insert(org);
    tech_set.insert(tech);
  }

  AxisLabels labels;
  labels[0].assign(geo_set.begin(), geo_set.end());
  labels[1].assign(org_set.begin(), org_set.end());
  labels[2].assign(tech_set.begin(), tech_set.end());

  std::map<std::string, std::size_t> geo_index, org_index, tech_index;
  for (std::size_t i = 0; i < labels[0].size(); ++i) geo_index[labels[0][i]] = i;
  for (std::size_t i = 0; i < labels[1].size(); ++i) org_index[labels[1][i]] = i;
  for (std::size_t i = 0; i < labels[2].size(); ++i) tech_index[labels[2][i]] = i;
  std::map<int, std::size_t> year_index;

  PanelSeries panel;
  for (int year : years) {
    year_index[year] = panel.years.size();
    panel.years.push_back(year);
    panel.tensors.emplace_back(labels);
  }
  for (const Row& row : rows) {
    panel.tensors[year_index[row.year]].add(geo_index[row.geo], org_index[row.org],
                                            tech_index[row.tech], row.count);
  }
  return panel;
}

void write_panel(const PanelSeries& panel, std::ostream& out) {
  out << "year,geo,org,tech,count\n";
  for (std::size_t y = 0; y < panel.size(); ++y) {
    const ContingencyTensor& tensor = panel.tensors[y];
    for (std::size_t i = 0; i < tensor.dim(Axis::geo); ++i) {
      for (std::size_t j = 0; j < tensor.dim(Axis::org); ++j) {
        for (std::size_t k = 0; k < tensor.dim(Axis::tech); ++k) {
          const std::int64_t c = tensor.count(i, j, k);
          if (c == 0) continue;
          out << panel.years[y] << ',';
          write_csv_field(out, tensor.labels(Axis::geo)[i]);
          out << ',';
          write_csv_field(out, tensor.labels(Axis::org)[j]);
          out << ',';
          write_csv_field(out, tensor.labels(Axis::tech)[k]);
          out << ',' << c << '\n';
        }
      }
    }
  }
}

std::string Crosswalk::normalize(std::string_view code) {
  std::string out;
  out.reserve(code.size());
  std::size_t start = 0;
  while (start <= code.size()) {
    std::size_t dot = code.find('.', start);
    if (dot == std::string_view::npos) dot = code.size();
    std::string_view segment = code.substr(start, dot - start);
    std::size_t nonzero = 0;
    while (nonzero + 1 < segment.size() && segment[nonzero] == '0') ++nonzero;
    if (!out.empty() || start > 0) out += '.';
    out.append(segment.substr(nonzero));
    if (dot == code.size()) break;
    start = dot + 1;
  }
  return out;
}

void Crosswalk::insert(std::string_view revision, std::string_view code,
                       std::string_view target) {
  const std::string key = normalize(code);
  std::vector<Entry>& slot = entries_[key];
  for (const Entry& existing : slot) {
    if (existing.revision == revision || existing.revision == "*" || revision == "*") {
      if (existing.target != target) {
        duplicates_.push_back({key, existing.target, std::string(target)});
      }
      return;  // first row wins
    }
  }
  slot.push_back({std::string(revision), std::string(target)});
}

std::optional<std::string> Crosswalk::resolve(std::string_view code,
                                              std::string_view revision) const {
  std::string key = normalize(code);
  while (true) {
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      for (const Entry& entry : it->second) {
        if (entry.revision == "*" || revision == "*" || entry.revision == revision) {
          return entry.target;
        }
      }
    }
    const std::size_t dot = key.rfind('.');
    if (dot == std::string::npos) return std::nullopt;
    key.resize(dot);  // drop the finest segment and retry
  }
}

Crosswalk load_crosswalk(const std::filesystem::path& path) {
  const CsvTable table = parse_csv(read_file(path), /*allow_comments=*/true);
  if (table.header.empty()) throw Error("empty-data", "'" + path.string() + "' is empty");
  const std::size_t rev_col = column_index(table, "source_revision");
  const std::size_t code_col = column_index(table, "source_code");
  const std::size_t class_col = column_index(table, "target_class");
  if (table.rows.empty()) throw Error("empty-data", "'" + path.string() + "' has no data rows");

  auto is_plain_code = [](const std::string& s) {
    if (s.empty()) return false;
    bool last_dot = true;
    for (char c : s) {
      if (c == '.') {
        if (last_dot) return false;
        last_dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        last_dot = false;
      } else {
        return false;
      }
    }
    return !last_dot;
  };

  Crosswalk xwalk;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::vector<std::string>& fields = table.rows[r];
    const std::size_t row_number = table.row_numbers[r];
    const std::size_t needed = std::max({rev_col, code_col, class_col}) + 1;
    if (fields.size() < needed) {
      throw Error("crosswalk-error", "row " + std::to_string(row_number) + ": too few fields");
    }
    const std::string& revision = fields[rev_col];
    const std::string& code = fields[code_col];
    const std::string& target = fields[class_col];
    if (revision.empty() || target.empty()) {
      throw Error("crosswalk-error",
                  "row " + std::to_string(row_number) + ": empty revision or target class");
    }
    const std::size_t dash = code.find('-');
    if (dash != std::string::npos) {
      long long lo = 0, hi = 0;
      if (!parse_int(code.substr(0, dash), lo) || !parse_int(code.substr(dash + 1), hi) ||
          lo > hi || lo < 0 || hi - lo > 1000) {
        throw Error("crosswalk-error",
                    "row " + std::to_string(row_number) + ": bad range '" + code + "'");
      }
      for (long long v = lo; v <= hi; ++v) {
        xwalk.insert(revision, std::to_string(v), target);
      }
    } else if (is_plain_code(code)) {
      xwalk.insert(revision, code, target);
    } else {
      throw Error("crosswalk-error",
                  "row " + std::to_string(row_number) + ": bad source code '" + code + "'");
    }
  }
  return xwalk;
}

PanelSeries apply_crosswalk(const PanelSeries& panel, const Crosswalk& crosswalk,
                            std::string_view revision) {
  if (panel.size() == 0) throw Error("empty-data", "panel has no years");
  if (!panel.consistent()) throw Error("panel-inconsistent", "years disagree on axis labels");

  const std::vector<std::string>& tech = panel.axis_labels()[2];
  std::vector<std::string> mapped(tech.size());
  std::set<std::string, NaturalLabelLess> classes;
  std::set<std::string, NaturalLabelLess> missing;
  for (std::size_t k = 0; k < tech.size(); ++k) {
    if (auto target = crosswalk.resolve(tech[k], revision)) {
      mapped[k] = *target;
      classes.insert(*target);
    } else {
      missing.insert(tech[k]);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const std::string& code : missing) {
      if (!list.empty()) list += ", ";
      list += "'" + code + "'";
    }
    throw Error("unmapped-code", "no crosswalk entry for " + list);
  }

  AxisLabels labels = panel.axis_labels();
  labels[2].assign(classes.begin(), classes.end());
  std::map<std::string, std::size_t> class_index;
  for (std::size_t k = 0; k < labels[2].size(); ++k) class_index[labels[2][k]] = k;

  PanelSeries out;
  out.years = panel.years;
  for (const ContingencyTensor& tensor : panel.tensors) {
    ContingencyTensor remapped(labels);
    for (std::size_t i = 0; i < tensor.dim(Axis::geo); ++i) {
      for (std::size_t j = 0; j < tensor.dim(Axis::org); ++j) {
        for (std::size_t k = 0; k < tensor.dim(Axis::tech); ++k) {
          const std::int64_t c = tensor.count(i, j, k);
          if (c != 0) remapped.add(i, j, class_index[mapped[k]], c);
        }
      }
    }
    out.tensors.push_back(std::move(remapped));
  }
  return out;
}

ValidationReport validate_panel(const PanelSeries& panel) {
  ValidationReport report;
  if (panel.size() == 0) {
    report.issues.push_back({"empty-data", "panel has no years"});
    return report;
  }

  for (std::size_t y = 0; y < panel.size(); ++y) {
    const ContingencyTensor& tensor = panel.tensors[y];
    YearStats stats;
    stats.year = panel.years[y];
    stats.total = tensor.total();
    std::size_t zero_cells = 0;
    for (std::int64_t c : tensor.counts()) {
      if (c == 0) ++zero_cells;
    }
    stats.zero_cell_fraction =
        tensor.counts().empty() ? 0.0
                                : static_cast<double>(zero_cells) / tensor.counts().size();
    report.per_year.push_back(stats);
    if (stats.total == 0) {
      report.issues.push_back(
          {"empty-year", "year " + std::to_string(stats.year) + " has no events"});
    }
  }

  for (std::size_t y = 1; y < panel.size(); ++y) {
    if (panel.years[y] <= panel.years[y - 1]) {
      report.issues.push_back({"non-increasing-years",
                               "year " + std::to_string(panel.years[y]) + " follows " +
                                   std::to_string(panel.years[y - 1])});
    } else if (panel.years[y] != panel.years[y - 1] + 1) {
      report.issues.push_back({"year-gap", "gap between " + std::to_string(panel.years[y - 1]) +
                                               " and " + std::to_string(panel.years[y])});
    }
  }

  const AxisLabels& reference = panel.tensors.front().all_labels();
  for (std::size_t y = 1; y < panel.size(); ++y) {
    if (panel.tensors[y].all_labels() != reference) {
      report.issues.push_back({"label-mismatch", "year " + std::to_string(panel.years[y]) +
                                                     " uses different axis labels"});
    }
  }
  return report;
}

}  // namespace trihelix
