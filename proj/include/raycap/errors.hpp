#pragma once

#include <stdexcept>
#include <string>

namespace raycap {

// Input lies outside a function's mathematical domain.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative scheme exhausted its budget before reaching tolerance, or the
// requested tolerance is below what double precision can certify.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A user-supplied callback produced a non-finite value.
class evaluation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace raycap
