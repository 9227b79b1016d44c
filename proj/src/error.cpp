#include "elastinet/error.hpp"

namespace elastinet {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidCurve: return "invalid-curve";
        case ErrorKind::InvalidConfig: return "invalid-config";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::SingularAngle: return "singular-angle";
        case ErrorKind::NoOptimalRescale: return "no-optimal-rescale";
        case ErrorKind::ConstructionFailed: return "construction-failed";
        case ErrorKind::Numeric: return "numeric";
    }
    return "unknown";
}

}  // namespace elastinet
