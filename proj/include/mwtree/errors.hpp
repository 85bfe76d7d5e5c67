#pragma once

#include <stdexcept>
#include <string>

namespace mwtree {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input document is structurally malformed (missing keys, bad types, unknown labels).
struct SchemaError : Error {
    using Error::Error;
};

// Document parsed but violates a model invariant (topology, weight class, ...).
struct ValidationError : Error {
    using Error::Error;
};

struct UnknownVertex : Error {
    explicit UnknownVertex(int v)
        : Error("unknown vertex id " + std::to_string(v)) {}
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct NotSymmetric : Error {
    using Error::Error;
};

struct NotPositiveDefinite : Error {
    using Error::Error;
};

// Operation is undefined for the tree's weight class.
struct ClassError : Error {
    using Error::Error;
};

struct BranchMismatch : Error {
    using Error::Error;
};

// Perron-branch walk failed to settle; usually a tie-tolerance misclassification.
struct NonTermination : Error {
    using Error::Error;
};

struct BracketError : Error {
    using Error::Error;
};

struct RankAnomaly : Error {
    using Error::Error;
};

struct PenroseFailure : Error {
    using Error::Error;
};

} // namespace mwtree
