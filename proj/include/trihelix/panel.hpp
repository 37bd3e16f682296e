#pragma once

#include <vector>

#include "trihelix/tensor.hpp"

namespace trihelix {

// Year-indexed sequence of contingency tensors sharing one category universe.
struct PanelSeries {
  std::vector<int> years;                  // strictly increasing
  std::vector<ContingencyTensor> tensors;  // one per year, identical labels

  std::size_t size() const noexcept { return years.size(); }
  const AxisLabels& axis_labels() const { return tensors.front().all_labels(); }

  // True when years are strictly increasing and all tensors share identical
  // axis labels. Does not throw.
  bool consistent() const noexcept;
};

}  // namespace trihelix
