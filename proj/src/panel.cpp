#include "trihelix/panel.hpp"

namespace trihelix {

bool PanelSeries::consistent() const noexcept {
  if (years.empty() || years.size() != tensors.size()) return false;
  for (std::size_t i = 1; i < years.size(); ++i) {
    if (years[i] <= years[i - 1]) return false;
  }
  const AxisLabels& reference = tensors.front().all_labels();
  for (const ContingencyTensor& t : tensors) {
    if (t.all_labels() != reference) return false;
  }
  return true;
}

}  // namespace trihelix
