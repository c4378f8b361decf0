#pragma once

#include <stdexcept>
#include <string>

namespace evencob {

/// Operand shapes or ambient dimensions disagree.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A vector handed to `decompose` does not lie in the sum of the two subspaces.
class NotInSum : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotSymmetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotLagrangian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotSymplectic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPseudoCylinder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Target of the first morphism differs from the source of the second.
class ObjectMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GeneraMismatch : public ObjectMismatch {
 public:
  using ObjectMismatch::ObjectMismatch;
};

class LagrangianMismatch : public ObjectMismatch {
 public:
  using ObjectMismatch::ObjectMismatch;
};

/// A generator shape whose pieces do not fit together.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace evencob
