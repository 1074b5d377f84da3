#include "ewens/theta.hpp"

#include <cmath>
#include <sstream>

namespace ewens {

double ThetaSpec::resolve(std::int64_t n) const {
  switch (mode) {
    case ThetaMode::fixed:
      return value;
    case ThetaMode::power:
      return std::pow(static_cast<double>(n), value);
    case ThetaMode::linear:
      return value * static_cast<double>(n);
  }
  throw std::logic_error("unreachable");
}

std::string ThetaSpec::describe() const {
  std::ostringstream out;
  switch (mode) {
    case ThetaMode::fixed:
      out << value;
      break;
    case ThetaMode::power:
      out << "n^" << value;
      break;
    case ThetaMode::linear:
      out << value << "*n";
      break;
  }
  return out.str();
}

}  // namespace ewens
