#pragma once

#include <stdexcept>
#include <string>

namespace polyweight {

// Shape/size mismatches (wrong matrix dimensions, inconsistent subsystem lists).
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Violated preconditions (non-Hermitian input, broken normalization, bad ranges).
struct contract_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runtime numerical failures (non-convergence, bracket failure).
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Point outside the ordering region required by a closed form.
struct region_error : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace polyweight
