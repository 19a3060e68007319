#pragma once

#include <stdexcept>
#include <string>

namespace specbasis {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// mesh
class ParseError : public Error { using Error::Error; };
class UnsupportedFeature : public Error { using Error::Error; };
class InvalidMesh : public Error { using Error::Error; };

// numerics
class NotConverged : public Error { using Error::Error; };
class SingularSystem : public Error { using Error::Error; };
class NearSingularShift : public Error { using Error::Error; };
class FactorizationFailed : public Error { using Error::Error; };
class DimensionMismatch : public Error { using Error::Error; };

// laplacian
class EmptyMesh : public Error { using Error::Error; };
class AllDegenerate : public Error { using Error::Error; };
class SchemeNotSymmetric : public Error { using Error::Error; };

// filters
class SingularEvaluation : public Error { using Error::Error; };
class UnsupportedDegree : public Error { using Error::Error; };
class RepeatedRoots : public Error { using Error::Error; };
class DegreeMismatch : public Error { using Error::Error; };
class UnsupportedFilter : public Error { using Error::Error; };
class FilterSyntaxError : public Error { using Error::Error; };

// basis
class SolverFailure : public Error { using Error::Error; };
class DuplicateSeeds : public Error { using Error::Error; };
class InvalidArgument : public Error { using Error::Error; };

// metrics
class NotAdjoint : public Error { using Error::Error; };

// seeds
class ZeroField : public Error { using Error::Error; };
class NoProgress : public Error { using Error::Error; };

}  // namespace specbasis
