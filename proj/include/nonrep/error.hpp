#ifndef NONREP_ERROR_HPP
#define NONREP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nonrep {

// Base class for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition.
struct InputError : Error {
    using Error::Error;
};

// A path code is not realisable for the given (graph, X, v).
struct DecodeError : Error {
    using Error::Error;
};

// A (colouring, record) pair is inconsistent with the fixed engine setup.
struct ReconstructionError : Error {
    using Error::Error;
};

// A structural invariant that genuine artefacts always satisfy was violated.
struct InvariantError : Error {
    using Error::Error;
};

// A decomposition or file failed validation; the message names the axiom.
struct ValidationError : Error {
    using Error::Error;
};

// A randomised driver hit its step or retry cap without succeeding.
struct ExhaustionError : Error {
    using Error::Error;
};

// An enumeration request exceeds the configured desk-scale caps.
struct ResourceError : Error {
    using Error::Error;
};

// A bounded search that is guaranteed to succeed came up empty.
struct ConstructionError : Error {
    using Error::Error;
};

} // namespace nonrep

#endif
