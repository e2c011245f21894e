#pragma once

#include <stdexcept>
#include <string>

namespace shemass {

// Bad run configuration (CFL violation, malformed config file, unknown keys).
// The CLI maps this (and std::domain_error) to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A field value became non-finite during time stepping. Exit code 2.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, long step)
      : std::runtime_error(what), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace shemass
