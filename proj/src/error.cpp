#include "nacirc/error.hpp"

namespace nacirc {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::FieldTooSmall: return "FieldTooSmall";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::CycleError: return "CycleError";
        case ErrorKind::BadReference: return "BadReference";
        case ErrorKind::BadMode: return "BadMode";
        case ErrorKind::DegreeExceeded: return "DegreeExceeded";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::InvalidCode: return "InvalidCode";
        case ErrorKind::TermCapExceeded: return "TermCapExceeded";
        case ErrorKind::SetTooSmall: return "SetTooSmall";
        case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorKind::WeightOverflow: return "WeightOverflow";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError:
        case ErrorKind::CycleError:
        case ErrorKind::BadReference:
        case ErrorKind::BadMode:
        case ErrorKind::NotPrime:
        case ErrorKind::InvalidCode:
            return 2;
        case ErrorKind::FieldTooSmall:
        case ErrorKind::EnumerationCapExceeded:
        case ErrorKind::TermCapExceeded:
        case ErrorKind::CapExceeded:
        case ErrorKind::SetTooSmall:
        case ErrorKind::DegreeExceeded:
        case ErrorKind::WeightOverflow:
            return 3;
        case ErrorKind::DimensionMismatch:
        case ErrorKind::InvalidArgument:
            return 1;
    }
    return 1;
}

}  // namespace nacirc
