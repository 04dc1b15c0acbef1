#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

namespace alinconv {

// Base class for all library errors. code() is a stable machine-readable
// identifier; it ends up in CLI diagnostics and JSON reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Raised while checking a structure tensor against the basis requirements.
// `where` holds the offending index tuple; unused slots are -1.
class ValidationError : public Error {
public:
    enum class Kind { Commutativity, Identity, Associativity, Condition1, Condition2 };

    ValidationError(Kind kind, std::array<int, 4> where, const std::string& what)
        : Error(code_for(kind), what), kind(kind), where(where) {}

    Kind kind;
    std::array<int, 4> where;

    static std::string code_for(Kind kind) {
        switch (kind) {
            case Kind::Commutativity: return "CommutativityViolated";
            case Kind::Identity: return "IdentityMissing";
            case Kind::Associativity: return "AssociativityViolated";
            case Kind::Condition1: return "Condition1Violated";
            case Kind::Condition2: return "Condition2Violated";
        }
        return "ValidationError";
    }
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

class DimensionTooLarge : public Error {
public:
    explicit DimensionTooLarge(const std::string& what) : Error("DimensionTooLarge", what) {}
};

class NotInvertible : public Error {
public:
    explicit NotInvertible(const std::string& what) : Error("NotInvertible", what) {}
};

class UnknownAlgebra : public Error {
public:
    explicit UnknownAlgebra(const std::string& what) : Error("UnknownAlgebra", what) {}
};

class ZeroCoefficients : public Error {
public:
    explicit ZeroCoefficients(const std::string& what) : Error("ZeroCoefficients", what) {}
};

class InconsistentBold : public Error {
public:
    explicit InconsistentBold(const std::string& what) : Error("InconsistentBold", what) {}
};

class AsymmetricInput : public Error {
public:
    explicit AsymmetricInput(const std::string& what) : Error("AsymmetricInput", what) {}
};

class DegenerateGradient : public Error {
public:
    explicit DegenerateGradient(const std::string& what) : Error("DegenerateGradient", what) {}
};

class NonFiniteValue : public Error {
public:
    explicit NonFiniteValue(const std::string& what) : Error("NonFiniteValue", what) {}
};

class ProjectionFailed : public Error {
public:
    explicit ProjectionFailed(const std::string& what) : Error("ProjectionFailed", what) {}
};

class InsufficientSamples : public Error {
public:
    explicit InsufficientSamples(const std::string& what) : Error("InsufficientSamples", what) {}
};

class UnknownDomain : public Error {
public:
    explicit UnknownDomain(const std::string& what) : Error("UnknownDomain", what) {}
};

class MalformedMonomials : public Error {
public:
    explicit MalformedMonomials(const std::string& what) : Error("MalformedMonomials", what) {}
};

class MismatchedAnchor : public Error {
public:
    explicit MismatchedAnchor(const std::string& what) : Error("MismatchedAnchor", what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("ConfigError", what) {}
};

}  // namespace alinconv
