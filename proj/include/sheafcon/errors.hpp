#pragma once

#include <stdexcept>
#include <string>

namespace sheafcon {

  /// Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
    /// The class name, for diagnostics.
    virtual const char* kind() const noexcept { return "Error"; }
  };

#define SHEAFCON_DEFINE_ERROR(name)                                    \
  class name : public Error {                                          \
   public:                                                             \
    using Error::Error;                                                \
    const char* kind() const noexcept override { return #name; }       \
  }

  // poset
  SHEAFCON_DEFINE_ERROR(CycleError);
  SHEAFCON_DEFINE_ERROR(DuplicateElementError);
  SHEAFCON_DEFINE_ERROR(UnknownElementError);
  SHEAFCON_DEFINE_ERROR(NotMonotoneError);

  // algebras and congruences
  SHEAFCON_DEFINE_ERROR(PartialTableError);
  SHEAFCON_DEFINE_ERROR(RangeError);
  SHEAFCON_DEFINE_ERROR(ArityMismatchError);
  SHEAFCON_DEFINE_ERROR(SignatureMismatchError);
  SHEAFCON_DEFINE_ERROR(ForeignCongruenceError);
  SHEAFCON_DEFINE_ERROR(NotCongruenceError);
  SHEAFCON_DEFINE_ERROR(NotHomomorphismError);
  SHEAFCON_DEFINE_ERROR(AlgebraMismatchError);
  SHEAFCON_DEFINE_ERROR(SizeLimitError);

  // perm
  SHEAFCON_DEFINE_ERROR(PreconditionError);
  SHEAFCON_DEFINE_ERROR(InternalInvariantError);

  // sheaves
  SHEAFCON_DEFINE_ERROR(MonotonicityError);
  SHEAFCON_DEFINE_ERROR(SoftnessRequiredError);

  // distributive lattices and MV-algebras
  SHEAFCON_DEFINE_ERROR(NotLatticeError);
  SHEAFCON_DEFINE_ERROR(NotInterpolatingError);
  SHEAFCON_DEFINE_ERROR(NotMVAlgebraError);
  SHEAFCON_DEFINE_ERROR(InvalidSizeError);

  // front end
  SHEAFCON_DEFINE_ERROR(ParseError);
  SHEAFCON_DEFINE_ERROR(UnsupportedObjectError);

#undef SHEAFCON_DEFINE_ERROR

}  // namespace sheafcon
