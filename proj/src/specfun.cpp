#include "scatdecay/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "scatdecay/errors.hpp"

namespace scatdecay {

namespace {

constexpr int kRescaleBits = 500;
const double kRescaleUp = std::ldexp(1.0, kRescaleBits);
const double kRescaleDown = std::ldexp(1.0, -kRescaleBits);

double mag(double v) { return std::abs(v); }
double mag(const Complex& v) { return std::max(std::abs(v.real()), std::abs(v.imag())); }

void check_order(int l, int max_order) {
    if (l < 0) throw DomainError("negative Bessel order " + std::to_string(l));
    if (l > max_order)
        throw OrderOverflowError("Bessel order " + std::to_string(l) + " exceeds maximum " +
                                 std::to_string(max_order));
}

template <typename T>
int miller_start(int lmax, T z) {
    const double base = std::max<double>(lmax, std::ceil(std::abs(z)));
    return static_cast<int>(base) + 20 + 4 * static_cast<int>(std::ceil(std::cbrt(base)));
}

// Closed forms for the normalisation: j_0 for small |z|, otherwise the
// larger of j_0 and j_1 so a zero of j_0 never ends up in a denominator.
template <typename T>
std::pair<int, T> miller_anchor(T z) {
    if (std::abs(z) < 1e-8) return {0, T(1.0)};
    if (std::abs(z) < 1.0) return {0, std::sin(z) / z};
    const T s = std::sin(z);
    const T j0 = s / z;
    const T j1 = (j0 - std::cos(z)) / z;
    if (std::abs(j0) >= std::abs(j1)) return {0, j0};
    return {1, j1};
}

template <typename T>
std::vector<Scaled<T>> miller_j(int lmax, T z) {
    std::vector<Scaled<T>> out(static_cast<std::size_t>(lmax) + 1);
    if (std::abs(z) == 0.0) {
        out[0] = Scaled<T>(T(1.0));
        return out;
    }
    if constexpr (!std::is_same_v<T, double>) {
        if (std::abs(z.imag()) > 700.0) throw DomainError("|Im z| too large for spherical Bessel j");
    }
    const int start = miller_start(lmax, z);
    const int keep = std::max(lmax, 1);
    std::vector<T> mant(static_cast<std::size_t>(keep) + 1);
    std::vector<std::int64_t> expo(static_cast<std::size_t>(keep) + 1);
    T fp1(0.0);
    T f(1.0);
    std::int64_t shift = 0;
    const T inv_z = T(1.0) / z;
    for (int k = start; k >= 1; --k) {
        const T fm1 = (2.0 * k + 1.0) * inv_z * f - fp1;
        fp1 = f;
        f = fm1;
        if (mag(f) > kRescaleUp) {
            f *= kRescaleDown;
            fp1 *= kRescaleDown;
            shift += kRescaleBits;
        }
        if (k - 1 <= keep) {
            mant[static_cast<std::size_t>(k - 1)] = f;
            expo[static_cast<std::size_t>(k - 1)] = shift;
        }
    }
    const auto [n, exact] = miller_anchor(z);
    const Scaled<T> norm = Scaled<T>(exact) / Scaled<T>(mant[static_cast<std::size_t>(n)],
                                                          expo[static_cast<std::size_t>(n)]);
    for (int k = 0; k <= lmax; ++k)
        out[static_cast<std::size_t>(k)] =
            Scaled<T>(mant[static_cast<std::size_t>(k)], expo[static_cast<std::size_t>(k)]) * norm;
    return out;
}

}  // namespace

std::vector<ScaledComplex> sph_bessel_j_scaled(int lmax, Complex z) {
    check_order(lmax, 1 << 20);
    return miller_j<Complex>(lmax, z);
}

std::vector<ScaledReal> sph_bessel_j_scaled(int lmax, double x) {
    check_order(lmax, 1 << 20);
    return miller_j<double>(lmax, x);
}

Complex sph_bessel_j(int l, Complex z, int max_order) {
    check_order(l, max_order);
    return miller_j<Complex>(l, z)[static_cast<std::size_t>(l)].value();
}

double sph_bessel_j(int l, double x, int max_order) {
    check_order(l, max_order);
    return miller_j<double>(l, x)[static_cast<std::size_t>(l)].value();
}

std::vector<ScaledReal> sph_bessel_y_scaled(int lmax, double x) {
    if (!(x > 0.0)) throw DomainError("spherical Bessel y requires x > 0");
    check_order(lmax, 1 << 20);
    std::vector<ScaledReal> out(static_cast<std::size_t>(lmax) + 1);
    const double c = std::cos(x);
    const double s = std::sin(x);
    double ym = -c / x;
    out[0] = ScaledReal(ym);
    if (lmax == 0) return out;
    double y = -c / (x * x) - s / x;
    out[1] = ScaledReal(y);
    std::int64_t shift = 0;
    for (int k = 1; k < lmax; ++k) {
        const double yn = (2.0 * k + 1.0) / x * y - ym;
        ym = y;
        y = yn;
        if (std::abs(y) > kRescaleUp) {
            y *= kRescaleDown;
            ym *= kRescaleDown;
            shift += kRescaleBits;
        }
        out[static_cast<std::size_t>(k) + 1] = ScaledReal(y, shift);
    }
    return out;
}

std::vector<ScaledComplex> sph_hankel1_scaled(int lmax, double x) {
    if (!(x > 0.0)) throw DomainError("spherical Hankel function requires x > 0");
    const auto j = sph_bessel_j_scaled(lmax, x);
    const auto y = sph_bessel_y_scaled(lmax, x);
    std::vector<ScaledComplex> out(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        out[k] = to_complex(j[k]) + ScaledComplex(Complex(0.0, y[k].mantissa()), y[k].exponent());
    return out;
}

ScaledHankelPair sph_hankel1_pair_scaled(int l, double x) {
    if (!(x > 0.0)) throw DomainError("spherical Hankel function requires x > 0");
    if (l < 0) throw DomainError("negative Hankel order");
    // Dedicated allocation-free path: this sits inside quadrature loops.
    const int lmax = l + 1;
    const int start = miller_start(lmax, x);
    double fp1 = 0.0;
    double f = 1.0;
    std::int64_t shift = 0;
    double jm[2] = {0.0, 0.0};
    std::int64_t je[2] = {0, 0};
    double a[2] = {0.0, 0.0};
    std::int64_t ae[2] = {0, 0};
    for (int k = start; k >= 1; --k) {
        const double fm1 = (2.0 * k + 1.0) / x * f - fp1;
        fp1 = f;
        f = fm1;
        if (std::abs(f) > kRescaleUp) {
            f *= kRescaleDown;
            fp1 *= kRescaleDown;
            shift += kRescaleBits;
        }
        const int idx = k - 1;
        if (idx == l || idx == l + 1) {
            jm[idx - l] = f;
            je[idx - l] = shift;
        }
        if (idx <= 1) {
            a[idx] = f;
            ae[idx] = shift;
        }
    }
    const auto [n, exact] = miller_anchor(x);
    const ScaledReal norm = ScaledReal(exact) / ScaledReal(a[n], ae[n]);
    const ScaledReal jl = ScaledReal(jm[0], je[0]) * norm;
    const ScaledReal jl1 = ScaledReal(jm[1], je[1]) * norm;

    const double c = std::cos(x);
    const double s = std::sin(x);
    double ym = -c / x;
    double y = -c / (x * x) - s / x;
    std::int64_t yshift = 0;
    double yl = ym, yl1 = y;
    std::int64_t yle = 0, yl1e = 0;
    for (int k = 1; k <= l; ++k) {
        const double yn = (2.0 * k + 1.0) / x * y - ym;
        ym = y;
        y = yn;
        if (std::abs(y) > kRescaleUp) {
            y *= kRescaleDown;
            ym *= kRescaleDown;
            yshift += kRescaleBits;
        }
    }
    if (l >= 1) {
        yl = ym;
        yl1 = y;
        yle = yl1e = yshift;
    }
    const ScaledComplex hl = to_complex(jl) + ScaledComplex(Complex(0.0, yl), yle);
    const ScaledComplex hl1 = to_complex(jl1) + ScaledComplex(Complex(0.0, yl1), yl1e);
    ScaledHankelPair out;
    out.exponent = hl.exponent();
    out.h_l = hl.mantissa();
    out.h_lplus1 = hl1.value_shifted(-out.exponent);
    return out;
}

HankelPair sph_hankel1(int l, double x, int max_order) {
    if (!(x > 0.0)) throw DomainError("spherical Hankel function requires x > 0");
    check_order(l, max_order);
    const ScaledHankelPair p = sph_hankel1_pair_scaled(l, x);
    HankelPair out;
    out.order = l;
    out.argument = x;
    out.h_l = ScaledComplex(p.h_l, p.exponent).value();
    out.h_lplus1 = ScaledComplex(p.h_lplus1, p.exponent).value();
    if (!std::isfinite(std::abs(out.h_lplus1)))
        throw DomainError("spherical Hankel function overflows binary64 at l=" + std::to_string(l) +
                          ", x=" + std::to_string(x));
    return out;
}

Complex riccati_h_derivative(int l, double x) {
    const HankelPair p = sph_hankel1(l, x);
    return (l + 1.0) * p.h_l - x * p.h_lplus1;
}

SiCi sin_cos_integrals(double x) {
    if (!(x > 0.0)) throw DomainError("Si/Ci require x > 0");
    SiCi out;
    if (x < 4.0) {
        const double x2 = x * x;
        double t = x;  // (-1)^k x^{2k+1}/(2k+1)!
        double si = 0.0;
        for (int k = 0; k < 60; ++k) {
            const double term = t / (2.0 * k + 1.0);
            si += term;
            if (std::abs(term) < 1e-18 * std::abs(si)) break;
            t *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        }
        double u = -0.5 * x2;  // (-1)^k x^{2k}/(2k)!
        double ci = 0.0;
        for (int k = 1; k < 60; ++k) {
            const double term = u / (2.0 * k);
            ci += term;
            if (std::abs(term) < 1e-18) break;
            u *= -x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
        }
        out.si = si;
        out.ci = std::numbers::egamma + std::log(x) + ci;
        return out;
    }
    // Continued fraction for E1(ix), modified Lentz.
    constexpr double tiny = 1e-300;
    Complex b(1.0, x);
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 2; i < 10000; ++i) {
        const double a = -static_cast<double>(i - 1) * (i - 1);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const Complex del = c * d;
        h *= del;
        if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
    }
    h *= Complex(std::cos(x), -std::sin(x));
    out.ci = -h.real();
    out.si = std::numbers::pi / 2.0 + h.imag();
    return out;
}

Complex exp_integral_E1_neg2iz(double z) {
    if (!(z > 0.0)) throw DomainError("E1(-2iz) requires z > 0");
    const SiCi sc = sin_cos_integrals(2.0 * z);
    return {-sc.ci, -sc.si + std::numbers::pi / 2.0};
}

double pochhammer(double a, int n) {
    if (n >= 0) {
        double p = 1.0;
        for (int k = 0; k < n; ++k) p *= a + k;
        return p;
    }
    double p = 1.0;
    for (int k = n; k < 0; ++k) {
        const double factor = a + k;
        if (factor == 0.0)
            throw PoleError("Pochhammer symbol (" + std::to_string(a) + ")_" + std::to_string(n) +
                            " has a pole");
        p *= factor;
    }
    return 1.0 / p;
}

std::vector<double> wigner3j_110_family(int l, int lp) {
    const int jmin = std::abs(l - lp);
    const int jmax = l + lp;
    std::vector<double> f(static_cast<std::size_t>(jmax - jmin) + 1, 0.0);
    if (l < 1 || lp < 1) return f;
    const double d2 = static_cast<double>(l - lp) * (l - lp);
    const double s2 = static_cast<double>(l + lp + 1) * (l + lp + 1);
    auto A = [&](int j) {
        const double jj = static_cast<double>(j) * j;
        return j * std::sqrt(std::max(0.0, (jj - d2) * (s2 - jj)));
    };
    auto B = [](int j) { return -2.0 * (2.0 * j + 1.0) * j * (j + 1.0); };
    auto at = [&](int j) -> double& { return f[static_cast<std::size_t>(j - jmin)]; };

    // Recursion in the third index (Schulten-Gordon); Racah's alternating sum
    // cancels catastrophically at the orders the shell sums need.
    at(jmin) = 1.0;
    int first;
    if (jmin == 0) {
        at(1) = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1.0));
        first = 1;
    } else {
        at(jmin + 1) = -B(jmin) * at(jmin) / (jmin * A(jmin + 1));
        first = jmin + 1;
    }
    for (int j = first; j < jmax; ++j)
        at(j + 1) = -(B(j) * at(j) + (j + 1.0) * A(j) * at(j - 1)) / (j * A(j + 1));

    double norm = 0.0;
    for (int j = jmin; j <= jmax; ++j) norm += (2.0 * j + 1.0) * at(j) * at(j);
    double scale = 1.0 / std::sqrt(norm);
    const bool want_positive = ((l - lp) % 2 == 0);
    if ((at(jmax) > 0.0) != want_positive) scale = -scale;
    for (auto& v : f) v *= scale;
    return f;
}

double wigner3j_110(int l, int lp, int lpp) {
    if (l < 1 || lp < 1 || lpp < std::abs(l - lp) || lpp > l + lp) return 0.0;
    return wigner3j_110_family(l, lp)[static_cast<std::size_t>(lpp - std::abs(l - lp))];
}

namespace {

double log_factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(4 * kDefaultMaxOrder + 2);
        t[0] = 0.0;
        for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
        return t;
    }();
    if (n < static_cast<int>(table.size())) return table[static_cast<std::size_t>(n)];
    return std::lgamma(n + 1.0);
}

}  // namespace

double wigner3j_110_racah(int l, int lp, int lpp) {
    const int j1 = l, j2 = lp, j3 = lpp;
    const int m1 = 1, m2 = -1, m3 = 0;
    if (j1 < 1 || j2 < 1 || j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0;
    const double pre =
        0.5 * (log_factorial(j1 + j2 - j3) + log_factorial(j1 - j2 + j3) + log_factorial(-j1 + j2 + j3) -
               log_factorial(j1 + j2 + j3 + 1) + log_factorial(j1 + m1) + log_factorial(j1 - m1) +
               log_factorial(j2 + m2) + log_factorial(j2 - m2) + log_factorial(j3 + m3) +
               log_factorial(j3 - m3));
    const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
    const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        const double t = log_factorial(k) + log_factorial(j1 + j2 - j3 - k) + log_factorial(j1 - m1 - k) +
                         log_factorial(j2 + m2 - k) + log_factorial(j3 - j2 + m1 + k) +
                         log_factorial(j3 - j1 - m2 + k);
        sum += ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(pre - t);
    }
    return (((j1 - j2 - m3) % 2 == 0) ? 1.0 : -1.0) * sum;
}

int parity_delta(Parity kind, int n) {
    const bool even = (n % 2 == 0);
    return (kind == Parity::even) == even ? 1 : 0;
}

}  // namespace scatdecay
