#include "qmb/error.hpp"

namespace qmb {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::truncation: return "truncation";
        case ErrorKind::shape: return "shape";
        case ErrorKind::out_of_range: return "out-of-range";
        case ErrorKind::precondition: return "precondition";
        case ErrorKind::invariant: return "invariant";
        case ErrorKind::domain: return "domain";
        case ErrorKind::degenerate: return "degenerate-operating-point";
        case ErrorKind::consistency: return "internal consistency";
        case ErrorKind::config: return "config";
        case ErrorKind::usage: return "usage";
    }
    return "unknown";
}

}  // namespace qmb
