#include "recexp/error.hpp"

namespace recexp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ParameterDomain: return "parameter-domain";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Ordering: return "ordering";
    case ErrorKind::DegenerateInterval: return "degenerate-interval";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::BudgetExhausted: return "budget-exhausted";
    case ErrorKind::Saturation: return "saturation";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::Data: return "data";
    case ErrorKind::Shape: return "shape";
  }
  return "unknown";
}

}  // namespace recexp
