#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "scatdecay/scaled.hpp"

namespace scatdecay {

// Neumaier's variant: also correct when the addend outgrows the running sum.
class KahanSum {
public:
    KahanSum& add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    KahanSum& operator+=(double x) { return add(x); }
    double value() const { return sum_ + comp_; }
    void scale(double s) {
        sum_ *= s;
        comp_ *= s;
    }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanSumComplex {
public:
    KahanSumComplex& add(const std::complex<double>& x) {
        re_.add(x.real());
        im_.add(x.imag());
        return *this;
    }
    KahanSumComplex& operator+=(const std::complex<double>& x) { return add(x); }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }
    void scale(double s) {
        re_.scale(s);
        im_.scale(s);
    }

private:
    KahanSum re_;
    KahanSum im_;
};

// Compensated sum of Scaled terms. The running sum lives at the exponent of
// the largest term seen so far; smaller terms are shifted onto it.
template <typename T>
class ScaledSum {
public:
    ScaledSum& add(const Scaled<T>& x) {
        if (x.is_zero()) return *this;
        if (empty_) {
            ref_ = x.exponent();
            empty_ = false;
        } else if (x.exponent() > ref_) {
            acc_.scale(std::ldexp(1.0, detail::clamp_shift(ref_ - x.exponent())));
            ref_ = x.exponent();
        }
        acc_.add(detail::ldexp_any(x.mantissa(), x.exponent() - ref_));
        return *this;
    }
    ScaledSum& operator+=(const Scaled<T>& x) { return add(x); }
    Scaled<T> value() const { return empty_ ? Scaled<T>{} : Scaled<T>(acc_.value(), ref_); }

private:
    using Acc = std::conditional_t<std::is_same_v<T, double>, KahanSum, KahanSumComplex>;
    Acc acc_;
    std::int64_t ref_ = 0;
    bool empty_ = true;
};

}  // namespace scatdecay
