#pragma once

#include <stdexcept>
#include <string>

namespace cpdmd {

// Base for all library errors so callers can catch the whole family at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// linalg
struct NonFinite : Error {
    explicit NonFinite(const std::string& msg = "matrix contains non-finite entries") : Error(msg) {}
};
struct RankOutOfRange : Error {
    explicit RankOutOfRange(const std::string& msg = "requested rank out of range") : Error(msg) {}
};
struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& msg = "eigendecomposition did not converge") : Error(msg) {}
};

// embedding
struct InsufficientHistory : Error {
    explicit InsufficientHistory(const std::string& msg = "not enough history for the requested window") : Error(msg) {}
};
struct OrderOutOfRange : Error {
    explicit OrderOutOfRange(const std::string& msg = "auto-regressive order out of range") : Error(msg) {}
};
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& msg = "matrix shape mismatch") : Error(msg) {}
};

// dmd
struct DegenerateWindow : Error {
    explicit DegenerateWindow(const std::string& msg = "window has effective rank zero") : Error(msg) {}
};

// selection
struct EmptyGrid : Error {
    explicit EmptyGrid(const std::string& msg = "no hyperparameter candidate survives the constraints") : Error(msg) {}
};
struct AllCandidatesFailed : Error {
    explicit AllCandidatesFailed(const std::string& msg = "every hyperparameter candidate failed on the burn-in") : Error(msg) {}
};

// metrics
struct NoValidRuns : Error {
    explicit NoValidRuns(const std::string& msg = "no run with a valid post-change detection") : Error(msg) {}
};

// baseline
struct DegenerateBurnIn : Error {
    explicit DegenerateBurnIn(const std::string& msg = "burn-in standard deviation is zero") : Error(msg) {}
};

// theory
struct NonDiagonalisable : Error {
    explicit NonDiagonalisable(const std::string& msg = "operator eigenvector matrix is numerically singular") : Error(msg) {}
};
struct ClosedFormMismatch : Error {
    explicit ClosedFormMismatch(const std::string& msg) : Error(msg) {}
};

// io / cli
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};
struct UnknownScenario : Error {
    explicit UnknownScenario(const std::string& msg) : Error(msg) {}
};

}  // namespace cpdmd
