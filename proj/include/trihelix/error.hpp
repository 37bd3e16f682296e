#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace trihelix {

// Domain error carrying a stable machine-readable code ("empty-data",
// "series-too-short", ...) next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error("[" + code + "] " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace trihelix
