#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catgraph {

enum class ErrorKind {
    InvalidNode,
    UnknownCategory,
    SelfPairNotSupported,
    EmptyCategory,
    InvalidGraph,
    InvalidPartition,
    InvalidParameter,
    InfeasibleRegularGraph,
    GenerationFailed,
    TooManyEdgesRequested,
    EmptyGraph,
    EmptySample,
    InvalidWeight,
    IsolatedStartNode,
    InvalidThinning,
    WrongObservationMode,
    InvalidObservationLog,
    InsufficientSample,
    MissingSizeEstimate,
    UndefinedNRMSE,
    ParseError,
    SelfLoop,
    DuplicateEdge,
    UnlabeledNode,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; kind() is stable and
// machine-readable, what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace catgraph
