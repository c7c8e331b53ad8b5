#pragma once

#include <stdexcept>
#include <string>

namespace hnla {

// Thrown when a gain would push a squeezing parameter past tanh = 1,
// i.e. the transformed state does not exist.
class unphysical_gain_error : public std::domain_error {
  public:
    explicit unphysical_gain_error(const std::string &what_arg) : std::domain_error(what_arg) {}
};

// Thrown when an intermediate magnitude would leave the double-precision
// exponent range. The remedy is a smaller cutoff, gain or displacement.
class cutoff_too_large_error : public std::runtime_error {
  public:
    explicit cutoff_too_large_error(const std::string &what_arg) : std::runtime_error(what_arg) {}
};

} // namespace hnla
