#include "fluidfluid/errors.hpp"

#include <sstream>

namespace fluidfluid {

namespace {
std::string singular_message(std::size_t row, double value) {
  std::ostringstream os;
  os << "singular matrix: pivot " << value << " at row " << row;
  return os.str();
}
}  // namespace

SingularMatrixError::SingularMatrixError(std::size_t pivot_row, double pivot_value)
    : Error(singular_message(pivot_row, pivot_value)), pivot_row_(pivot_row) {}

NumericalFailure::NumericalFailure(const std::string& what, double residual)
    : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

}  // namespace fluidfluid
