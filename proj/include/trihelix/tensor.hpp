#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trihelix/error.hpp"

namespace trihelix {

// The three categorical dimensions of the panel data.
enum class Axis { geo = 0, org = 1, tech = 2 };

inline constexpr std::array<Axis, 3> kAllAxes = {Axis::geo, Axis::org, Axis::tech};

Axis axis_from_name(const std::string& name);          // "geo" | "org" | "tech"
const char* axis_name(Axis axis) noexcept;

using AxisLabels = std::array<std::vector<std::string>, 3>;

// Dense 3-D table of non-negative event counts over labelled categories.
// The total is maintained by the mutators so it always equals the cell sum.
class ContingencyTensor {
 public:
  // Zero-filled tensor. Labels must be non-empty per axis and duplicate-free.
  explicit ContingencyTensor(AxisLabels labels);
  ContingencyTensor(AxisLabels labels, std::vector<std::int64_t> counts);

  std::size_t dim(Axis axis) const noexcept { return labels_[static_cast<int>(axis)].size(); }
  const std::vector<std::string>& labels(Axis axis) const noexcept {
    return labels_[static_cast<int>(axis)];
  }
  const AxisLabels& all_labels() const noexcept { return labels_; }

  std::int64_t count(std::size_t i, std::size_t j, std::size_t k) const {
    return counts_[flat_index(i, j, k)];
  }
  void add(std::size_t i, std::size_t j, std::size_t k, std::int64_t delta);

  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t total() const noexcept { return total_; }

  std::size_t flat_index(std::size_t i, std::size_t j, std::size_t k) const;

 private:
  AxisLabels labels_;
  std::vector<std::int64_t> counts_;  // row-major geo x org x tech
  std::int64_t total_ = 0;
};

// Joint and marginal probabilities of a tensor. The joint is stored; the
// marginals are summed out on demand so the count tensor stays the single
// source of truth.
class ProbabilityModel {
 public:
  // Throws "empty-data" when the tensor has total 0.
  explicit ProbabilityModel(const ContingencyTensor& tensor);

  const std::array<std::size_t, 3>& shape() const noexcept { return shape_; }
  std::size_t dim(Axis axis) const noexcept { return shape_[static_cast<int>(axis)]; }

  double joint(std::size_t i, std::size_t j, std::size_t k) const {
    return joint_[(i * shape_[1] + j) * shape_[2] + k];
  }
  std::span<const double> joint_flat() const noexcept { return joint_; }

  // p over one axis, indexed by that axis' categories.
  std::vector<double> marginal(Axis axis) const;
  // p over an ordered axis pair, row-major |a| x |b|. Axes must differ.
  std::vector<double> marginal2(Axis a, Axis b) const;

 private:
  std::array<std::size_t, 3> shape_;
  std::vector<double> joint_;
};

// All seven Shannon entropies of a three-way distribution, in bits.
struct EntropySet {
  double h1 = 0, h2 = 0, h3 = 0;
  double h12 = 0, h13 = 0, h23 = 0;
  double h123 = 0;

  // Signed three-way mutual information, negative = synergy.
  double synergy() const noexcept { return h1 + h2 + h3 - h12 - h13 - h23 + h123; }
};

ProbabilityModel probabilities(const ContingencyTensor& tensor);

// Shannon entropy in bits with the 0*log2(0) = 0 convention. The input must
// be a distribution: entries >= 0 and summing to 1 within 1e-9, otherwise
// "invalid-distribution" is thrown.
double entropy(std::span<const double> dist);

EntropySet entropy_set(const ProbabilityModel& model);

// H_a + H_b - H_ab in bits; >= 0 up to rounding. Throws "invalid-axes" when
// a == b.
double mutual_info_2d(const ProbabilityModel& model, Axis a, Axis b);

// Signed three-way mutual information in bits (negative = synergy).
double synergy_3d(const ProbabilityModel& model);

}  // namespace trihelix
