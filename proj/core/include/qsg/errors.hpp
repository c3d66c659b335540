#pragma once

#include <stdexcept>
#include <string>

namespace qsg {

// Base class for all qsg errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape mismatch between operands (non-square operator, ambient clash, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

// Argument outside the documented domain (negative time, h <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An iterative kernel exhausted its budget. Carries the best residual reached.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// Adaptive quadrature hit the recursion-depth cap before reaching its
// tolerance. Carries the achieved error estimate.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// The subspace handed to quotient_operator was not invariant.
class InvarianceError : public Error {
public:
    InvarianceError(const std::string& what, double defect)
        : Error(what), defect_(defect) {}
    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

// Scenario configuration rejected; names the offending field.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Unknown backend or scalar-function name.
class CatalogError : public Error {
public:
    using Error::Error;
};

}  // namespace qsg
