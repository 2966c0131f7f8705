#pragma once

#include <stdexcept>
#include <string>

namespace fracutm {

// Base error; reason() is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string reason, const std::string& what)
        : std::runtime_error(what), reason_(std::move(reason)) {}
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error("pole", w) {}
};
struct BranchCutError : Error {
    explicit BranchCutError(const std::string& w) : Error("branch_cut", w) {}
};
struct ResolutionError : Error {
    explicit ResolutionError(const std::string& w) : Error("resolution", w) {}
};
struct GeometryError : Error {
    explicit GeometryError(const std::string& w) : Error("geometry", w) {}
};
struct DecayError : Error {
    explicit DecayError(const std::string& w) : Error("decay", w) {}
};
struct OverflowError : Error {
    explicit OverflowError(const std::string& w) : Error("overflow", w) {}
};
struct ToleranceError : Error {
    ToleranceError(const std::string& w, double achieved)
        : Error("tolerance", w), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error("validation", w) {}
};
struct NonFiniteError : Error {
    explicit NonFiniteError(const std::string& w) : Error("non_finite", w) {}
};

}  // namespace fracutm
