#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relicpress {

enum class ErrorKind {
    InvalidInput,
    MissingSection,
    EmptySelection,
    MalformedTokenStream,
    CodebookMiss,
    CodebookOverflow,
    TruncatedStream,
    InflateError,
    BudgetExceeded,
    CapacityExceeded,
    CorruptSymbol,
    NotAQrSymbol,
    MissingArtifact,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so the CLI can map it
/// onto its exit-code contract without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InflateError : public Error {
public:
    InflateError(std::size_t offset, const std::string& message)
        : Error(ErrorKind::InflateError, message + " at byte " + std::to_string(offset)),
          offset_(offset) {}

    /// Byte offset into the compressed stream where decoding failed.
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

}  // namespace relicpress
