#include "relicpress/error.hpp"

namespace relicpress {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::MissingSection: return "MissingSection";
        case ErrorKind::EmptySelection: return "EmptySelection";
        case ErrorKind::MalformedTokenStream: return "MalformedTokenStream";
        case ErrorKind::CodebookMiss: return "CodebookMiss";
        case ErrorKind::CodebookOverflow: return "CodebookOverflow";
        case ErrorKind::TruncatedStream: return "TruncatedStream";
        case ErrorKind::InflateError: return "InflateError";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::CapacityExceeded: return "CapacityExceeded";
        case ErrorKind::CorruptSymbol: return "CorruptSymbol";
        case ErrorKind::NotAQrSymbol: return "NotAQrSymbol";
        case ErrorKind::MissingArtifact: return "MissingArtifact";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace relicpress
