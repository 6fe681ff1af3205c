#pragma once

#include <stdexcept>
#include <string>

namespace gammaint {

/// Failure categories surfaced by the library and the command line tool.
enum class ErrorKind {
    InvalidFan,
    InvalidInput,
    Domain,
    Presentation,
    Configuration,
    Formula,
    MalformedSeries,
    SearchFailure,
    Precision,
    Unsupported,
    WidenWindow,
    Gauge,
    NumericFailure,
    NefPartition
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidFan: return "invalid-fan";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Presentation: return "presentation";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Formula: return "formula";
    case ErrorKind::MalformedSeries: return "malformed-series";
    case ErrorKind::SearchFailure: return "search-failure";
    case ErrorKind::Precision: return "precision";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::WidenWindow: return "widen-window";
    case ErrorKind::Gauge: return "gauge";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::NefPartition: return "nef-partition";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace gammaint
