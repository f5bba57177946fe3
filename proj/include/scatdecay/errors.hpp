#pragma once

#include <stdexcept>
#include <string>

namespace scatdecay {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class OrderOverflowError : public Error {
public:
    using Error::Error;
};

class PoleError : public Error {
public:
    using Error::Error;
};

// |D| of a Mie denominator underflowed: an exact resonance was hit.
class DegenerateDenominatorError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double zeta = 0.0, int lmax = 0)
        : Error(what), zeta_(zeta), lmax_(lmax) {}
    double zeta() const noexcept { return zeta_; }
    int lmax() const noexcept { return lmax_; }

private:
    double zeta_;
    int lmax_;
};

}  // namespace scatdecay
