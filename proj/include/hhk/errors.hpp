#pragma once

#include <stdexcept>
#include <string>

namespace hhk {

/// Base of all library errors; `code()` is a short stable identifier used in
/// reports and CLI messages.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};
struct DomainViolation : Error {
    explicit DomainViolation(const std::string& what) : Error("domain-violation", what) {}
};
struct NegativeRadicand : Error {
    explicit NegativeRadicand(const std::string& what) : Error("negative-radicand", what) {}
};
struct NearSingular : Error {
    explicit NearSingular(const std::string& what) : Error("near-singular", what) {}
};
struct EulerViolation : Error {
    explicit EulerViolation(const std::string& what) : Error("euler-violation", what) {}
};
struct OnCurve : Error {
    explicit OnCurve(const std::string& what) : Error("on-curve", what) {}
};
struct DegenerateRay : Error {
    explicit DegenerateRay(const std::string& what) : Error("degenerate-ray", what) {}
};
struct ParabolicAmbiguity : Error {
    explicit ParabolicAmbiguity(const std::string& what) : Error("parabolic-ambiguity", what) {}
};
struct IoError : Error {
    explicit IoError(const std::string& what) : Error("io-error", what) {}
};

}  // namespace hhk
