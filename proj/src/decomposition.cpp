#include "trihelix/decomposition.hpp"

#include <cmath>

namespace trihelix {

namespace {

inline long double plog2p(double p) noexcept {
  return p > 0.0 ? -static_cast<long double>(p) * std::log2(p) : 0.0L;
}

// p * (-log2 q); zero when p is zero. q >= p > 0 holds for every use below
// because q is always a marginal dominating p.
inline long double cross_term(double p, double q) noexcept {
  return p > 0.0 ? -static_cast<long double>(p) * std::log2(q) : 0.0L;
}

TransmissionPower tau_from_terms(double t, double h123, double h_singles_sum) {
  TransmissionPower out;
  if (t < 0.0) {
    const double denom = h123 - h_singles_sum;
    if (denom == 0.0) {
      throw Error("degenerate-denominator", "synergy negative but H123 - H1 - H2 - H3 is zero");
    }
    out.tau = t / denom;
    out.branch = TauBranch::negative_t;
  } else if (t > 0.0) {
    if (h123 == 0.0) {
      throw Error("degenerate-denominator", "synergy positive but joint entropy is zero");
    }
    out.tau = t / h123;
    out.branch = TauBranch::positive_t;
  } else {
    out.tau = 0.0;
    out.branch = TauBranch::zero_t;
  }
  return out;
}

}  // namespace

const char* tau_branch_name(TauBranch branch) noexcept {
  switch (branch) {
    case TauBranch::negative_t: return "negative-T";
    case TauBranch::positive_t: return "positive-T";
    case TauBranch::zero_t: return "zero-T";
  }
  return "?";
}

std::vector<GroupSynergy> group_synergy_shares(const ContingencyTensor& tensor, Axis axis) {
  const ProbabilityModel model(tensor);

  // Role order: a is the decomposition axis, b and c the remaining two in
  // axis order.
  const Axis a = axis;
  Axis b{}, c{};
  switch (axis) {
    case Axis::geo: b = Axis::org; c = Axis::tech; break;
    case Axis::org: b = Axis::geo; c = Axis::tech; break;
    case Axis::tech: b = Axis::geo; c = Axis::org; break;
  }

  const std::size_t na = model.dim(a);
  const std::size_t nb = model.dim(b);
  const std::size_t nc = model.dim(c);

  const std::vector<double> pa = model.marginal(a);
  const std::vector<double> pb = model.marginal(b);
  const std::vector<double> pc = model.marginal(c);
  const std::vector<double> pab = model.marginal2(a, b);  // na x nb
  const std::vector<double> pac = model.marginal2(a, c);  // na x nc
  const std::vector<double> pbc = model.marginal2(b, c);  // nb x nc

  // joint indexed by the (a, b, c) roles
  auto joint = [&](std::size_t g, std::size_t j, std::size_t k) {
    std::size_t idx[3];
    idx[static_cast<int>(a)] = g;
    idx[static_cast<int>(b)] = j;
    idx[static_cast<int>(c)] = k;
    return model.joint(idx[0], idx[1], idx[2]);
  };

  std::vector<GroupSynergy> shares(na);
  for (std::size_t g = 0; g < na; ++g) {
    GroupSynergy& s = shares[g];
    s.weight = pa[g];
    long double h_axis = plog2p(pa[g]);
    long double h_b = 0, h_c = 0, h_ab = 0, h_ac = 0, h_bc = 0, h_abc = 0;
    for (std::size_t j = 0; j < nb; ++j) {
      const double pgj = pab[g * nb + j];
      h_b += cross_term(pgj, pb[j]);
      h_ab += plog2p(pgj);
    }
    for (std::size_t k = 0; k < nc; ++k) {
      const double pgk = pac[g * nc + k];
      h_c += cross_term(pgk, pc[k]);
      h_ac += plog2p(pgk);
    }
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t k = 0; k < nc; ++k) {
        const double pgjk = joint(g, j, k);
        h_bc += cross_term(pgjk, pbc[j * nc + k]);
        h_abc += plog2p(pgjk);
      }
    }
    s.h_axis = static_cast<double>(h_axis);
    s.h_b = static_cast<double>(h_b);
    s.h_c = static_cast<double>(h_c);
    s.h_ab = static_cast<double>(h_ab);
    s.h_ac = static_cast<double>(h_ac);
    s.h_bc = static_cast<double>(h_bc);
    s.h_abc = static_cast<double>(h_abc);
  }
  return shares;
}

DecompositionResult decompose(const ContingencyTensor& tensor, Axis axis) {
  DecompositionResult out;
  out.group_labels = tensor.labels(axis);
  const std::vector<GroupSynergy> shares = group_synergy_shares(tensor, axis);
  out.contributions.reserve(shares.size());
  for (const GroupSynergy& s : shares) out.contributions.push_back(s.contribution());
  // independently computed total, so the additivity of the contributions
  // stays a checkable identity rather than a tautology
  out.total = synergy_3d(probabilities(tensor));
  return out;
}

TransmissionPower transmission_power(const EntropySet& e) {
  return tau_from_terms(e.synergy(), e.h123, e.h1 + e.h2 + e.h3);
}

std::vector<TransmissionPower> group_transmission_power(const ContingencyTensor& tensor,
                                                        Axis axis) {
  const std::vector<GroupSynergy> shares = group_synergy_shares(tensor, axis);
  std::vector<TransmissionPower> out;
  out.reserve(shares.size());
  for (const GroupSynergy& s : shares) {
    out.push_back(tau_from_terms(s.contribution(), s.h_abc, s.h_axis + s.h_b + s.h_c));
  }
  return out;
}

DeviationReport deviations(const PanelSeries& panel, Axis axis) {
  if (panel.size() == 0) throw Error("empty-data", "panel has no years");
  if (!panel.consistent()) throw Error("panel-inconsistent", "years disagree on axis labels");

  const std::size_t groups = panel.tensors.front().dim(axis);
  DeviationReport report;
  report.group_labels = panel.tensors.front().labels(axis);

  std::vector<long double> tau_sum(groups, 0), syn_sum(groups, 0);
  std::vector<std::size_t> used_years(groups, 0);
  for (const ContingencyTensor& tensor : panel.tensors) {
    const std::vector<GroupSynergy> shares = group_synergy_shares(tensor, axis);
    for (std::size_t g = 0; g < groups; ++g) {
      if (shares[g].weight <= 0.0) continue;  // group absent this year
      const TransmissionPower tp =
          tau_from_terms(shares[g].contribution(), shares[g].h_abc,
                         shares[g].h_axis + shares[g].h_b + shares[g].h_c);
      tau_sum[g] += tp.tau;
      syn_sum[g] += shares[g].contribution();
      ++used_years[g];
    }
  }

  report.tau_group_mean.resize(groups, 0.0);
  report.synergy_group_mean.resize(groups, 0.0);
  long double tau_total = 0, syn_total = 0;
  for (std::size_t g = 0; g < groups; ++g) {
    if (used_years[g] > 0) {
      report.tau_group_mean[g] = static_cast<double>(tau_sum[g] / used_years[g]);
      report.synergy_group_mean[g] = static_cast<double>(syn_sum[g] / used_years[g]);
    }
    tau_total += report.tau_group_mean[g];
    syn_total += report.synergy_group_mean[g];
  }
  report.tau_baseline = static_cast<double>(tau_total / groups);
  report.synergy_baseline = static_cast<double>(syn_total / groups);

  if (report.tau_baseline == 0.0 || report.synergy_baseline == 0.0) {
    throw Error("zero-mean-baseline", "cross-group average is zero; deviations undefined");
  }

  report.k_percent.reserve(groups);
  report.p_percent.reserve(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    report.k_percent.push_back(
        (report.tau_group_mean[g] - report.tau_baseline) / report.tau_baseline * 100.0);
    report.p_percent.push_back(
        (report.synergy_group_mean[g] - report.synergy_baseline) / report.synergy_baseline *
        100.0);
  }
  return report;
}

}  // namespace trihelix
