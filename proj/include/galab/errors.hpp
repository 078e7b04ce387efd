#pragma once

#include <stdexcept>
#include <string>

namespace galab {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define GALAB_DEFINE_ERROR(Name)     \
  struct Name : Error {              \
    using Error::Error;              \
  }

GALAB_DEFINE_ERROR(NotLatinSquare);
GALAB_DEFINE_ERROR(NoIdentity);
GALAB_DEFINE_ERROR(NoInverse);
GALAB_DEFINE_ERROR(NonAssociative);
GALAB_DEFINE_ERROR(OrderBoundExceeded);
GALAB_DEFINE_ERROR(DegenerateSplit);
GALAB_DEFINE_ERROR(SizeMismatch);
GALAB_DEFINE_ERROR(ShapeMismatch);
GALAB_DEFINE_ERROR(InvalidP);
GALAB_DEFINE_ERROR(IndexOutOfRange);
GALAB_DEFINE_ERROR(InvalidDimension);
GALAB_DEFINE_ERROR(UnknownScenario);
GALAB_DEFINE_ERROR(ParseError);

#undef GALAB_DEFINE_ERROR

}  // namespace galab
