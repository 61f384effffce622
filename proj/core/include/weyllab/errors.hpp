#pragma once

#include <stdexcept>
#include <string>

namespace weyllab {

/// Base class for all library errors; `what()` carries a module-qualified code
/// prefix, e.g. "geom_core.Elliptic: ...".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Moebius element classification outcomes that are not hyperbolic.
enum class NonHyperbolicKind { Identity, Elliptic, Parabolic };

class NotHyperbolicError : public Error {
public:
    NotHyperbolicError(NonHyperbolicKind kind, const std::string& msg)
        : Error(kind == NonHyperbolicKind::Identity    ? "geom_core.Identity"
                : kind == NonHyperbolicKind::Elliptic  ? "geom_core.Elliptic"
                                                       : "geom_core.Parabolic",
                msg),
          kind_(kind) {}

    NonHyperbolicKind kind() const { return kind_; }

private:
    NonHyperbolicKind kind_;
};

class NotNegativelyCurvedError : public Error {
public:
    explicit NotNegativelyCurvedError(const std::string& msg)
        : Error("geom_core.NotNegativelyCurved", msg) {}
};

class MemoryBudgetError : public Error {
public:
    explicit MemoryBudgetError(const std::string& msg)
        : Error("fuchsian.MemoryBudgetExceeded", msg) {}
};

class StabilizationError : public Error {
public:
    explicit StabilizationError(const std::string& msg)
        : Error("fuchsian.StabilizationFailed", msg) {}
};

class NoConvergenceError : public Error {
public:
    NoConvergenceError(const std::string& where, const std::string& msg)
        : Error(where, msg) {}
};

class RelaxationError : public Error {
public:
    explicit RelaxationError(const std::string& msg)
        : Error("flow_dynamics.RelaxationFailed", msg) {}
};

class MissingDetTermError : public Error {
public:
    explicit MissingDetTermError(const std::string& msg)
        : Error("thermo.MissingDetTerm", msg) {}
};

class DegenerateWindowError : public Error {
public:
    explicit DegenerateWindowError(const std::string& msg)
        : Error("thermo.DegenerateWindow", msg) {}
};

class SpectrumTruncatedError : public Error {
public:
    explicit SpectrumTruncatedError(const std::string& msg)
        : Error("spectral.SpectrumTruncated", msg) {}
};

class IncompleteSpectrumError : public Error {
public:
    explicit IncompleteSpectrumError(const std::string& msg)
        : Error("spectral.IncompleteSpectrum", msg) {}
};

class CoverageError : public Error {
public:
    explicit CoverageError(const std::string& msg)
        : Error("spectral.CoverageExceeded", msg) {}
};

class FileFormatError : public Error {
public:
    FileFormatError(const std::string& msg, long line = -1)
        : Error("io.FileFormat",
                line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}

    long line() const { return line_; }

private:
    long line_;
};

class SearchExhaustedError : public Error {
public:
    SearchExhaustedError(const std::string& msg, double bestRadius)
        : Error("box_search.SearchExhausted",
                msg + " (best phase radius " + std::to_string(bestRadius) + ")"),
          bestRadius_(bestRadius) {}

    double best_radius() const { return bestRadius_; }

private:
    double bestRadius_;
};

class WindowEmptyError : public Error {
public:
    explicit WindowEmptyError(const std::string& msg)
        : Error("box_search.WindowEmpty", msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg)
        : Error("cli_io.Config", msg) {}
};

} // namespace weyllab
