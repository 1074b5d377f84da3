#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ewens {

// The bias parameter: either a fixed positive real, theta = n^e (any
// positive exponent != 1), or theta = lambda * n.
enum class ThetaMode { fixed, power, linear };

struct ThetaSpec {
  ThetaMode mode = ThetaMode::fixed;
  double value = 1.0;  // theta, exponent, or lambda depending on mode

  static ThetaSpec fixed(double theta) { return make(ThetaMode::fixed, theta); }
  static ThetaSpec power(double exponent) {
    return make(ThetaMode::power, exponent);
  }
  static ThetaSpec linear(double lambda) {
    return make(ThetaMode::linear, lambda);
  }

  double resolve(std::int64_t n) const;
  std::string describe() const;

 private:
  static ThetaSpec make(ThetaMode mode, double value) {
    if (!(value > 0))
      throw std::domain_error("theta parameter must be positive");
    return ThetaSpec{mode, value};
  }
};

}  // namespace ewens
