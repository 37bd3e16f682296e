#pragma once

namespace trihelix {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace trihelix
