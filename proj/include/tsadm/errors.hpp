#pragma once

#include <stdexcept>
#include <string>

namespace tsadm {

// Exit-code classes used by the CLI: 2 parse, 3 data shape, 4 infeasible, 5 unknown metric.
class Error : public std::runtime_error {
public:
    Error(const std::string& msg, int exit_code) : std::runtime_error(msg), exit_code_(exit_code) {}
    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg, 2) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error(msg, 3) {}
};

struct InfeasibleError : Error {
    explicit InfeasibleError(const std::string& msg) : Error(msg, 4) {}
};

struct UnknownMetric : Error {
    explicit UnknownMetric(const std::string& id) : Error("unknown metric: " + id, 5) {}
};

struct LengthMismatch : ShapeError {
    LengthMismatch(std::size_t a, std::size_t b)
        : ShapeError("series length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct SegmentOutOfRange : ShapeError {
    SegmentOutOfRange(std::size_t end, std::size_t t)
        : ShapeError("segment end " + std::to_string(end) + " outside series of length " + std::to_string(t)) {}
};

struct InvalidK : ShapeError {
    explicit InvalidK(double k) : ShapeError("coverage threshold K must be in (0,1], got " + std::to_string(k)) {}
};

struct InvalidAlpha : ShapeError {
    explicit InvalidAlpha(double a) : ShapeError("alpha must be in (0,1], got " + std::to_string(a)) {}
};

struct NoGroundTruthSegments : ShapeError {
    NoGroundTruthSegments() : ShapeError("ground truth contains no anomalous segment") {}
};

struct NoAnomalies : ShapeError {
    NoAnomalies() : ShapeError("ground truth contains no anomalous point") {}
};

struct SingleClass : ShapeError {
    SingleClass() : ShapeError("both classes must be present in the labels") {}
};

struct NoPositives : ShapeError {
    NoPositives() : ShapeError("labels contain no positive point") {}
};

struct EmptyGrid : ShapeError {
    EmptyGrid() : ShapeError("parameter grid must be non-empty") {}
};

struct TooFewLevels : ShapeError {
    explicit TooFewLevels(std::size_t n)
        : ShapeError("need at least 3 quality levels, got " + std::to_string(n)) {}
};

struct SeriesTooShort : ShapeError {
    SeriesTooShort(std::size_t t, std::size_t need)
        : ShapeError("series of length " + std::to_string(t) + " is shorter than detector warm-up " +
                     std::to_string(need)) {}
};

struct MissingMetric : ShapeError {
    explicit MissingMetric(const std::string& id) : ShapeError("samples missing for registered metric: " + id) {}
};

struct BudgetInfeasible : InfeasibleError {
    explicit BudgetInfeasible(const std::string& msg) : InfeasibleError(msg) {}
};

}  // namespace tsadm
