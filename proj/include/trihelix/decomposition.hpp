#pragma once

#include <string>
#include <vector>

#include "trihelix/panel.hpp"
#include "trihelix/tensor.hpp"

namespace trihelix {

// Exact additive split of the total synergy across the groups of one axis.
// total is computed independently of the contributions; their sum matches it
// to rounding.
struct DecompositionResult {
  std::vector<std::string> group_labels;
  std::vector<double> contributions;  // signed bits, one per group
  double total = 0;                   // signed bits
};

enum class TauBranch { negative_t, positive_t, zero_t };

const char* tau_branch_name(TauBranch branch) noexcept;

// Transmission power: share of synergy produced relative to system size.
struct TransmissionPower {
  double tau = 0;
  TauBranch branch = TauBranch::zero_t;
};

// Per-group slice of every entropy term, produced by regrouping the synergy
// formula cell by cell: own-axis summands go to their group directly, the
// cross-axis entropies are distributed by the group's joint-probability
// weight. Summing any field over the groups reproduces the corresponding
// entropy of the whole tensor, which makes the decomposition additive by
// construction.
struct GroupSynergy {
  double weight = 0;  // p_g, the group's probability mass
  double h_axis = 0;  // share of the decomposition axis' entropy
  double h_b = 0;     // share of the first remaining axis' entropy
  double h_c = 0;     // share of the second remaining axis' entropy
  double h_ab = 0;    // share of H(axis, b)
  double h_ac = 0;    // share of H(axis, c)
  double h_bc = 0;    // share of H(b, c)
  double h_abc = 0;   // share of the joint entropy

  double contribution() const noexcept {
    return h_axis + h_b + h_c - h_ab - h_ac - h_bc + h_abc;
  }
};

std::vector<GroupSynergy> group_synergy_shares(const ContingencyTensor& tensor, Axis axis);

// Throws "empty-data" for an all-zero tensor.
DecompositionResult decompose(const ContingencyTensor& tensor, Axis axis);

// tau = T / (H123 - H1 - H2 - H3) for T < 0, T / H123 for T > 0, 0 for
// T == 0. Throws "degenerate-denominator" when the applicable denominator is
// zero while T is not.
TransmissionPower transmission_power(const EntropySet& entropies);

// Transmission power of each group, evaluated on the group's entropy shares
// (same branch rule as the aggregate case).
std::vector<TransmissionPower> group_transmission_power(const ContingencyTensor& tensor,
                                                        Axis axis);

// Percentage deviations of each group's period-average transmission power (K)
// and synergy contribution (P) from the cross-group averages.
struct DeviationReport {
  std::vector<std::string> group_labels;
  std::vector<double> tau_group_mean;      // per-group mean transmission power
  std::vector<double> synergy_group_mean;  // per-group mean contribution, bits
  std::vector<double> k_percent;
  std::vector<double> p_percent;
  double tau_baseline = 0;      // mean of tau_group_mean over groups
  double synergy_baseline = 0;  // mean of synergy_group_mean over groups
};

// Per-group means run over the years in which the group has any counts.
// Throws "zero-mean-baseline" when either cross-group average is zero.
DeviationReport deviations(const PanelSeries& panel, Axis axis);

}  // namespace trihelix
