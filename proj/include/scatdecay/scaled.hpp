#pragma once

// Values of the form mantissa * 2^exponent. High-order Hankel functions,
// Mie amplitudes and Bessel integrals over a ball leave the binary64
// exponent range long before the series they feed have converged.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <type_traits>

namespace scatdecay {

namespace detail {

inline double max_abs_part(double v) { return std::abs(v); }
inline double max_abs_part(const std::complex<double>& v) {
    return std::max(std::abs(v.real()), std::abs(v.imag()));
}

inline int clamp_shift(std::int64_t e) {
    return static_cast<int>(std::clamp<std::int64_t>(e, -4000, 4000));
}

inline double ldexp_any(double v, std::int64_t e) { return std::ldexp(v, clamp_shift(e)); }
inline std::complex<double> ldexp_any(const std::complex<double>& v, std::int64_t e) {
    const int k = clamp_shift(e);
    return {std::ldexp(v.real(), k), std::ldexp(v.imag(), k)};
}

}  // namespace detail

template <typename T>
class Scaled {
public:
    using value_type = T;

    Scaled() = default;
    Scaled(T mantissa, std::int64_t exponent = 0) : m_(mantissa), e_(exponent) { normalize(); }

    T mantissa() const noexcept { return m_; }
    std::int64_t exponent() const noexcept { return e_; }
    bool is_zero() const noexcept { return m_ == T{}; }

    // Plain binary64 value; saturates to 0 or inf outside the range.
    T value() const { return detail::ldexp_any(m_, e_); }

    // value * 2^shift without an intermediate overflow.
    T value_shifted(std::int64_t shift) const { return detail::ldexp_any(m_, e_ + shift); }

    double log2_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log2(std::abs(m_)) + static_cast<double>(e_);
    }

    Scaled& operator*=(const Scaled& o) {
        m_ *= o.m_;
        e_ += o.e_;
        normalize();
        return *this;
    }
    Scaled& operator/=(const Scaled& o) {
        m_ /= o.m_;
        e_ -= o.e_;
        normalize();
        return *this;
    }
    Scaled& operator*=(const T& s) {
        m_ *= s;
        normalize();
        return *this;
    }
    Scaled& operator+=(const Scaled& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) return *this = o;
        if (e_ >= o.e_) {
            m_ += detail::ldexp_any(o.m_, o.e_ - e_);
        } else {
            m_ = o.m_ + detail::ldexp_any(m_, e_ - o.e_);
            e_ = o.e_;
        }
        normalize();
        return *this;
    }
    Scaled& operator-=(const Scaled& o) { return *this += -o; }

    Scaled operator-() const {
        Scaled r = *this;
        r.m_ = -r.m_;
        return r;
    }

    friend Scaled operator*(Scaled a, const Scaled& b) { return a *= b; }
    friend Scaled operator/(Scaled a, const Scaled& b) { return a /= b; }
    friend Scaled operator+(Scaled a, const Scaled& b) { return a += b; }
    friend Scaled operator-(Scaled a, const Scaled& b) { return a -= b; }
    friend Scaled operator*(Scaled a, const T& s) { return a *= s; }
    friend Scaled operator*(const T& s, Scaled a) { return a *= s; }

    template <typename U = T, typename = std::enable_if_t<!std::is_same_v<U, double>>>
    friend Scaled operator*(Scaled a, double s) {
        return a *= T(s);
    }
    template <typename U = T, typename = std::enable_if_t<!std::is_same_v<U, double>>>
    friend Scaled operator*(double s, Scaled a) {
        return a *= T(s);
    }

private:
    void normalize() {
        const double a = detail::max_abs_part(m_);
        if (a == 0.0) {
            m_ = T{};
            e_ = 0;
            return;
        }
        if (!std::isfinite(a)) return;
        int k = 0;
        std::frexp(a, &k);
        m_ = detail::ldexp_any(m_, -k);
        e_ += k;
    }

    T m_{};
    std::int64_t e_ = 0;
};

using ScaledReal = Scaled<double>;
using ScaledComplex = Scaled<std::complex<double>>;

inline ScaledComplex to_complex(const ScaledReal& x) {
    return ScaledComplex(std::complex<double>(x.mantissa(), 0.0), x.exponent());
}

inline ScaledComplex conj(const ScaledComplex& x) {
    return ScaledComplex(std::conj(x.mantissa()), x.exponent());
}

inline ScaledReal real_part(const ScaledComplex& x) {
    return ScaledReal(x.mantissa().real(), x.exponent());
}

inline ScaledReal norm(const ScaledComplex& x) {
    return ScaledReal(std::norm(x.mantissa()), 2 * x.exponent());
}

}  // namespace scatdecay
