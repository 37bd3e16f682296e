#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trihelix/panel.hpp"
#include "trihelix/tensor.hpp"

namespace testutil {

inline trihelix::AxisLabels make_labels(std::size_t ng, std::size_t no, std::size_t nt) {
  trihelix::AxisLabels labels;
  for (std::size_t i = 0; i < ng; ++i) labels[0].push_back("g" + std::to_string(i));
  for (std::size_t j = 0; j < no; ++j) labels[1].push_back("o" + std::to_string(j));
  for (std::size_t k = 0; k < nt; ++k) labels[2].push_back("t" + std::to_string(k));
  return labels;
}

// Random tensor with a configurable share of empty cells; always at least one
// event so analysis calls are legal.
inline trihelix::ContingencyTensor random_tensor(std::mt19937& rng, std::size_t ng,
                                                 std::size_t no, std::size_t nt,
                                                 int max_count = 20, double zero_prob = 0.3) {
  trihelix::ContingencyTensor tensor(make_labels(ng, no, nt));
  std::uniform_real_distribution<double> zero(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, max_count);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < no; ++j)
      for (std::size_t k = 0; k < nt; ++k)
        if (zero(rng) >= zero_prob) tensor.add(i, j, k, count(rng));
  if (tensor.total() == 0) tensor.add(0, 0, 0, 1);
  return tensor;
}

inline trihelix::PanelSeries random_panel(std::mt19937& rng, int n_years, std::size_t ng,
                                          std::size_t no, std::size_t nt, int max_count = 20,
                                          double zero_prob = 0.2, int first_year = 2002) {
  trihelix::PanelSeries panel;
  for (int y = 0; y < n_years; ++y) {
    panel.years.push_back(first_year + y);
    panel.tensors.push_back(random_tensor(rng, ng, no, nt, max_count, zero_prob));
  }
  return panel;
}

// Four unit cells with even index parity: synergy is exactly -1 bit.
inline trihelix::ContingencyTensor xor_parity_tensor() {
  trihelix::ContingencyTensor tensor(make_labels(2, 2, 2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        if ((i ^ j ^ k) == 0) tensor.add(i, j, k, 1);
  return tensor;
}

inline trihelix::ContingencyTensor uniform_tensor(std::size_t ng, std::size_t no,
                                                  std::size_t nt, std::int64_t cell = 1) {
  trihelix::ContingencyTensor tensor(make_labels(ng, no, nt));
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < no; ++j)
      for (std::size_t k = 0; k < nt; ++k) tensor.add(i, j, k, cell);
  return tensor;
}

// p = 0.5 at (0,0,0) and (1,1,1): synergy is exactly +1 bit.
inline trihelix::ContingencyTensor diagonal_tensor() {
  trihelix::ContingencyTensor tensor(make_labels(2, 2, 2));
  tensor.add(0, 0, 0, 1);
  tensor.add(1, 1, 1, 1);
  return tensor;
}

class TempDir {
 public:
  TempDir() {
    std::string pattern =
        (std::filesystem::temp_directory_path() / "trihelix-test-XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const std::filesystem::path file = path_ / name;
    std::ofstream out(file, std::ios::binary);
    out << content;
    return file;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace testutil
