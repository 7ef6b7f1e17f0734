#include "catgraph/error.hpp"

namespace catgraph {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidNode: return "InvalidNode";
        case ErrorKind::UnknownCategory: return "UnknownCategory";
        case ErrorKind::SelfPairNotSupported: return "SelfPairNotSupported";
        case ErrorKind::EmptyCategory: return "EmptyCategory";
        case ErrorKind::InvalidGraph: return "InvalidGraph";
        case ErrorKind::InvalidPartition: return "InvalidPartition";
        case ErrorKind::InvalidParameter: return "InvalidParameter";
        case ErrorKind::InfeasibleRegularGraph: return "InfeasibleRegularGraph";
        case ErrorKind::GenerationFailed: return "GenerationFailed";
        case ErrorKind::TooManyEdgesRequested: return "TooManyEdgesRequested";
        case ErrorKind::EmptyGraph: return "EmptyGraph";
        case ErrorKind::EmptySample: return "EmptySample";
        case ErrorKind::InvalidWeight: return "InvalidWeight";
        case ErrorKind::IsolatedStartNode: return "IsolatedStartNode";
        case ErrorKind::InvalidThinning: return "InvalidThinning";
        case ErrorKind::WrongObservationMode: return "WrongObservationMode";
        case ErrorKind::InvalidObservationLog: return "InvalidObservationLog";
        case ErrorKind::InsufficientSample: return "InsufficientSample";
        case ErrorKind::MissingSizeEstimate: return "MissingSizeEstimate";
        case ErrorKind::UndefinedNRMSE: return "UndefinedNRMSE";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::SelfLoop: return "SelfLoop";
        case ErrorKind::DuplicateEdge: return "DuplicateEdge";
        case ErrorKind::UnlabeledNode: return "UnlabeledNode";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace catgraph
