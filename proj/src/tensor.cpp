#include "trihelix/tensor.hpp"

#include <cmath>
#include <unordered_set>

namespace trihelix {

namespace {

void check_labels(const AxisLabels& labels) {
  for (Axis axis : kAllAxes) {
    const auto& names = labels[static_cast<int>(axis)];
    if (names.empty()) {
      throw Error("invalid-labels",
                  std::string("axis '") + axis_name(axis) + "' has no categories");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
      if (!seen.insert(name).second) {
        throw Error("invalid-labels", std::string("duplicate category '") + name + "' on axis '" +
                                          axis_name(axis) + "'");
      }
    }
  }
}

// -p*log2(p) with the 0*log2(0) = 0 convention.
inline long double plog2p(double p) noexcept {
  return p > 0.0 ? -static_cast<long double>(p) * std::log2(p) : 0.0L;
}

}  // namespace

Axis axis_from_name(const std::string& name) {
  if (name == "geo") return Axis::geo;
  if (name == "org") return Axis::org;
  if (name == "tech") return Axis::tech;
  throw Error("invalid-axes", "unknown axis '" + name + "' (expected geo, org or tech)");
}

const char* axis_name(Axis axis) noexcept {
  switch (axis) {
    case Axis::geo: return "geo";
    case Axis::org: return "org";
    case Axis::tech: return "tech";
  }
  return "?";
}

ContingencyTensor::ContingencyTensor(AxisLabels labels) : labels_(std::move(labels)) {
  check_labels(labels_);
  counts_.assign(dim(Axis::geo) * dim(Axis::org) * dim(Axis::tech), 0);
}

ContingencyTensor::ContingencyTensor(AxisLabels labels, std::vector<std::int64_t> counts)
    : labels_(std::move(labels)), counts_(std::move(counts)) {
  check_labels(labels_);
  const std::size_t cells = dim(Axis::geo) * dim(Axis::org) * dim(Axis::tech);
  if (counts_.size() != cells) {
    throw Error("invalid-labels", "count array size does not match axis dimensions");
  }
  for (std::int64_t c : counts_) {
    if (c < 0) throw Error("bad-count", "negative cell count");
    total_ += c;
  }
}

std::size_t ContingencyTensor::flat_index(std::size_t i, std::size_t j, std::size_t k) const {
  return (i * dim(Axis::org) + j) * dim(Axis::tech) + k;
}

void ContingencyTensor::add(std::size_t i, std::size_t j, std::size_t k, std::int64_t delta) {
  std::int64_t& cell = counts_[flat_index(i, j, k)];
  if (cell + delta < 0) throw Error("bad-count", "cell count would become negative");
  cell += delta;
  total_ += delta;
}

ProbabilityModel::ProbabilityModel(const ContingencyTensor& tensor)
    : shape_{tensor.dim(Axis::geo), tensor.dim(Axis::org), tensor.dim(Axis::tech)} {
  if (tensor.total() < 1) {
    throw Error("empty-data", "tensor holds no events");
  }
  const double n = static_cast<double>(tensor.total());
  joint_.reserve(tensor.counts().size());
  for (std::int64_t c : tensor.counts()) {
    joint_.push_back(static_cast<double>(c) / n);
  }
}

std::vector<double> ProbabilityModel::marginal(Axis axis) const {
  std::vector<double> out(dim(axis), 0.0);
  const int a = static_cast<int>(axis);
  std::size_t idx[3];
  for (idx[0] = 0; idx[0] < shape_[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < shape_[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < shape_[2]; ++idx[2])
        out[idx[a]] += joint(idx[0], idx[1], idx[2]);
  return out;
}

std::vector<double> ProbabilityModel::marginal2(Axis a, Axis b) const {
  if (a == b) throw Error("invalid-axes", "marginal2 needs two distinct axes");
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  std::vector<double> out(shape_[ia] * shape_[ib], 0.0);
  std::size_t idx[3];
  for (idx[0] = 0; idx[0] < shape_[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < shape_[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < shape_[2]; ++idx[2])
        out[idx[ia] * shape_[ib] + idx[ib]] += joint(idx[0], idx[1], idx[2]);
  return out;
}

ProbabilityModel probabilities(const ContingencyTensor& tensor) {
  return ProbabilityModel(tensor);
}

double entropy(std::span<const double> dist) {
  long double sum = 0.0L;
  long double h = 0.0L;
  for (double p : dist) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error("invalid-distribution", "entries must be finite and non-negative");
    }
    sum += p;
    h += plog2p(p);
  }
  if (std::fabs(static_cast<double>(sum) - 1.0) > 1e-9) {
    throw Error("invalid-distribution", "probabilities do not sum to 1");
  }
  return static_cast<double>(h);
}

namespace {

// Entropy of an internally built marginal; skips the distribution checks.
double entropy_raw(std::span<const double> dist) noexcept {
  long double h = 0.0L;
  for (double p : dist) h += plog2p(p);
  return static_cast<double>(h);
}

}  // namespace

EntropySet entropy_set(const ProbabilityModel& model) {
  EntropySet e;
  e.h1 = entropy_raw(model.marginal(Axis::geo));
  e.h2 = entropy_raw(model.marginal(Axis::org));
  e.h3 = entropy_raw(model.marginal(Axis::tech));
  e.h12 = entropy_raw(model.marginal2(Axis::geo, Axis::org));
  e.h13 = entropy_raw(model.marginal2(Axis::geo, Axis::tech));
  e.h23 = entropy_raw(model.marginal2(Axis::org, Axis::tech));
  e.h123 = entropy_raw(model.joint_flat());
  return e;
}

double mutual_info_2d(const ProbabilityModel& model, Axis a, Axis b) {
  if (a == b) throw Error("invalid-axes", "mutual information needs two distinct axes");
  const double ha = entropy_raw(model.marginal(a));
  const double hb = entropy_raw(model.marginal(b));
  const double hab = entropy_raw(model.marginal2(a, b));
  return ha + hb - hab;
}

double synergy_3d(const ProbabilityModel& model) {
  return entropy_set(model).synergy();
}

}  // namespace trihelix
