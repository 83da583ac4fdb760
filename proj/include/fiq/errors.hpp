#pragma once

#include <stdexcept>
#include <string>

namespace fiq {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (digit strings, rationals, behavior files,
/// mechanism descriptors). The message names the offending field.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// A value outside its mathematical domain (propensity outside [0,1],
/// epsilon outside (0,1), ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// A configured resource guard was hit (explicit digit storage,
/// assignment enumeration cap).
class ResourceCapError : public Error {
public:
    explicit ResourceCapError(const std::string& what) : Error(what) {}
};

/// A causal model on which the Bayes reversal is undefined
/// (zero cause or zero marginal effect). Distinct from a contradiction.
class DegenerateModelError : public Error {
public:
    explicit DegenerateModelError(const std::string& what) : Error(what) {}
};

/// Vector/basis dimensions do not match.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

/// No bounded-denominator rational approximation met the tolerance.
class ApproximationError : public Error {
public:
    explicit ApproximationError(const std::string& what) : Error(what) {}
};

} // namespace fiq
