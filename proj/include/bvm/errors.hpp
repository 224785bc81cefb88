#pragma once

#include <stdexcept>
#include <string>

namespace bvm {

// All domain failures derive from Error so callers can catch the library
// exactly once; the concrete types below match the failure modes of each
// module and are what the test suite asserts on.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct NonSimpleCurve : Error {
    using Error::Error;
};
struct NonPositiveRadius : Error {
    using Error::Error;
};

// mesh
struct OrderingViolated : Error {
    using Error::Error;
};
struct InsufficientSamples : Error {
    using Error::Error;
};

// kernel_ops
struct CoincidentNodesInB : Error {
    using Error::Error;
};
struct NonUniformMesh : Error {
    using Error::Error;
};

// fields / oracle
struct SingularEvaluation : Error {
    using Error::Error;
};
struct InsideObstacle : Error {
    using Error::Error;
};

// solvers
struct BlobTouchesBoundary : Error {
    using Error::Error;
};
struct SingularSystem : Error {
    using Error::Error;
};
struct LambdaMeanNearTwoPi : Error {
    using Error::Error;
};
struct SolverCrossCheckFailed : Error {
    using Error::Error;
};

// dynamics
struct BoundaryCollision : Error {
    using Error::Error;
};

// cli / io
struct ConfigError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

} // namespace bvm
