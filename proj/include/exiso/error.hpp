#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace exiso {

// Error carrying the subsystem that raised it, so the CLI can emit
// machine-parseable "error: <module>: <message>" lines.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

}  // namespace exiso
