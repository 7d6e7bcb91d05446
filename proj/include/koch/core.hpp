#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace koch {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Enumeration or search exceeded its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t requested)
      : std::runtime_error(what), requested_(requested) {}
  std::uint64_t requested() const { return requested_; }

 private:
  std::uint64_t requested_;
};

// A certified comparison could not be decided at the configured depth.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguousGeometry : public Inconclusive {
 public:
  using Inconclusive::Inconclusive;
};

// Relative widening applied to vertex-exact quantities to absorb binary64 roundoff.
inline constexpr double kRoundoff = 1e-12;

}  // namespace koch
