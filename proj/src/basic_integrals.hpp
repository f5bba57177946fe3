#pragma once

// Closed forms of the basic Hankel-product integrals, templated on the real
// type so the J-integral assembly can run them in binary128 where the
// binary64 versions cancel too much.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include "scatdecay/errors.hpp"
#include "scatdecay/hankint.hpp"
#include "scatdecay/specfun.hpp"

namespace scatdecay::detail {

using boost::multiprecision::complex128;
using boost::multiprecision::float128;

template <typename R>
struct Prec;

template <>
struct Prec<double> {
    using C = std::complex<double>;
    static std::vector<C> hankel(int lmax, double z) {
        const auto s = sph_hankel1_scaled(lmax, z);
        std::vector<C> h(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) h[k] = s[k].value();
        return h;
    }
    static C e1_neg2iz(double z) { return exp_integral_E1_neg2iz(z); }
};

template <>
struct Prec<float128> {
    using C = complex128;
    using R = float128;

    static std::vector<C> hankel(int lmax, R z) {
        using std::cos;
        using std::sin;
        const R c = cos(z), s = sin(z);
        std::vector<C> h(static_cast<std::size_t>(std::max(lmax, 1)) + 1);
        h[0] = C(s / z, -c / z);
        h[1] = C(-(c * z - s) / (z * z), -(s * z + c) / (z * z));
        for (int k = 1; k < lmax; ++k)
            h[static_cast<std::size_t>(k) + 1] = h[static_cast<std::size_t>(k)] * C(R(2 * k + 1) / z) -
                                                 h[static_cast<std::size_t>(k) - 1];
        h.resize(static_cast<std::size_t>(lmax) + 1);
        return h;
    }

    // E1(-2iz) = -Ci(2z) - i Si(2z) + i pi/2
    static C e1_neg2iz(R z) {
        const R x = 2 * z;
        const R pi = boost::math::constants::pi<R>();
        if (x < 8) {
            const R x2 = x * x;
            R t = x, si = 0;
            for (int k = 0; k < 200; ++k) {
                const R term = t / (2 * k + 1);
                si += term;
                if (abs(term) < R(1e-36) * abs(si)) break;
                t *= -x2 / (R(2 * k + 2) * R(2 * k + 3));
            }
            R u = -x2 / 2, ci = 0;
            for (int k = 1; k < 200; ++k) {
                const R term = u / (2 * k);
                ci += term;
                if (abs(term) < R(1e-36)) break;
                u *= -x2 / (R(2 * k + 1) * R(2 * k + 2));
            }
            ci += boost::math::constants::euler<R>() + log(x);
            return C(-ci, -si + pi / 2);
        }
        // E1(w) = e^{-w} / (w + 1 - 1/(w + 3 - 4/(w + 5 - ...))), w = -ix, modified Lentz
        const C w(R(0), -x);
        const R tiny = std::numeric_limits<R>::min();
        C b = w + C(R(1));
        C cc = C(R(1) / tiny);
        C d = C(R(1)) / b;
        C f = d;
        for (int n = 1; n < 2000; ++n) {
            const R an = -R(n) * R(n);
            b += C(R(2));
            d = C(R(1)) / (d * C(an) + b);
            cc = b + C(an) / cc;
            const C delta = cc * d;
            f *= delta;
            if (abs(delta - C(R(1))) < R(1e-34)) break;
        }
        return exp(-w) * f;
    }
};

template <typename R>
R pow_int(R z, int n) {
    R r = 1;
    const bool neg = n < 0;
    for (int k = 0; k < (neg ? -n : n); ++k) r *= z;
    return neg ? R(1) / r : r;
}

template <typename R>
R poch4(int l) {  // (l-1)_4
    return R(l - 1) * R(l) * R(l + 1) * R(l + 2);
}

template <typename C>
auto re(const C& c) {
    return real(c);
}

template <typename R>
struct BasicKernel {
    using C = typename Prec<R>::C;
    int l = 0;
    R z = 0;
    bool conj = false;
    std::vector<C> sq;  // 0..l+1
    C cross, e1, ez, core;

    BasicKernel(int l_, R z_, bool conj_) : l(l_), z(z_), conj(conj_) {
        using std::cos;
        using std::log;
        using std::sin;
        const auto h = Prec<R>::hankel(l + 1, z);
        sq.resize(h.size());
        for (std::size_t k = 0; k < h.size(); ++k) sq[k] = conj ? C(norm_of(h[k])) : h[k] * h[k];
        const auto L = static_cast<std::size_t>(l);
        cross = conj ? C(real(h[L]) * real(h[L + 1]) + imag(h[L]) * imag(h[L + 1])) : h[L] * h[L + 1];
        e1 = conj ? C(R(log(z))) : Prec<R>::e1_neg2iz(z);
        ez = conj ? C(R(0)) : C(R(cos(2 * z)), R(sin(2 * z)));
        // compensated core sum
        C s = C(R(0)), comp = C(R(0));
        for (int k = 1; k <= l; ++k) {
            const C y = sq[static_cast<std::size_t>(k)] * C(R(2 * k + 1) / (R(k) * R(k + 1))) - comp;
            const C t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        core = s;
    }
    static R norm_of(const C& c) { return real(c) * real(c) + imag(c) * imag(c); }
    C sl() const { return sq[static_cast<std::size_t>(l)]; }
    C sl1() const { return sq[static_cast<std::size_t>(l) + 1]; }
};

template <typename C>
struct MagAcc {
    C sum{};
    double mag = 0.0;
    void add(const C& t) {
        sum += t;
        mag = std::max(mag, static_cast<double>(abs(t)));
    }
};

template <typename R>
std::array<typename Prec<R>::C, 8> k_integrals(R z) {
    using C = typename Prec<R>::C;
    using std::cos;
    using std::sin;
    std::array<C, 8> K{};
    K[1] = -Prec<R>::e1_neg2iz(z);
    const C e(R(cos(2 * z)), R(sin(2 * z)));
    for (int k = 2; k <= 7; ++k)
        K[static_cast<std::size_t>(k)] = -e * C(pow_int(z, 1 - k) / R(k - 1)) +
                                         C(R(0), R(2) / R(k - 1)) * K[static_cast<std::size_t>(k) - 1];
    return K;
}

template <typename R>
typename Prec<R>::C diag_closed(const BasicKernel<R>& k, int n, double& mag) {
    using C = typename Prec<R>::C;
    const int l = k.l;
    const R z = k.z;
    const R z2 = z * z;
    const C I1(R(0), R(1));
    auto c = [](R v) { return C(v); };
    MagAcc<C> a;
    switch (n) {
        case 0: {
            C s = C(R(0));
            for (int j = 0; j <= l; ++j) s += k.sq[static_cast<std::size_t>(j)];
            a.add(c(-2 * z / R(2 * l + 1)) * s);
            a.add(c(z / R(2 * l + 1)) * k.sl());
            if (!k.conj) a.add(C(R(0), R(2) / R(2 * l + 1)) * k.e1);
            break;
        }
        case -2:
            a.add(c(z2 * z / 2) * k.sl());
            a.add(c(z2 * z / 2) * k.sl1());
            a.add(c(-R(2 * l + 1) / 2 * z2) * k.cross);
            break;
        case 3: {
            if (l < 2) {
                if (k.conj) {
                    const R z4 = z2 * z2;
                    a.add(l == 0 ? c(-R(1) / (4 * z4)) : c(-R(1) / (6 * z4 * z2) - R(1) / (4 * z4)));
                } else {
                    const auto K = k_integrals(z);
                    a.add(l == 0 ? -K[5] : K[5] + C(R(0), R(2)) * K[6] - K[7]);
                }
                break;
            }
            const R p = poch4<R>(l);
            const R lm = R(l - 1);
            a.add(c(z2 / (3 * p) + R(1) / (6 * lm * l) + R(1) / (2 * lm * z2)) * k.sl());
            a.add(c(z2 / (3 * p) + R(1) / (6 * lm * R(l + 2))) * k.sl1());
            a.add(c(-(2 * z / (3 * lm * l * R(l + 2)) + R(1) / (3 * lm * z))) * k.cross);
            break;
        }
        case 1: {
            if (l == 0) {
                a.add(k.conj ? c(-R(1) / (2 * z2)) : -k_integrals(z)[3]);
                break;
            }
            const R ll = R(l) * R(l + 1);
            a.add(c(z2 / (2 * ll) + R(1) / (2 * l)) * k.sl());
            a.add(c(z2 / (2 * ll)) * k.sl1());
            a.add(c(-z / l) * k.cross);
            break;
        }
        case -1:
            a.add(c(-z2 / 2) * k.core);
            a.add(c(z2 / (2 * R(l + 1))) * k.sl());
            a.add(k.e1);
            a.add(c(R(1) / 2) * k.ez);
            break;
        case -3: {
            const R ll = R(l) * R(l + 1);
            a.add(c(-ll * z2 / 4) * k.core);
            a.add(c(z2 * z2 / 4) * k.sl());
            a.add(c(z2 * z2 / 4) * k.sl1());
            a.add(c(-R(l) / 2 * z2 * z) * k.cross);
            a.add(c(ll / 2) * k.e1);
            a.add(c(ll / 4) * k.ez);
            break;
        }
        case -5: {
            const R p = poch4<R>(l);
            const R z4 = z2 * z2;
            a.add(c(-R(3) / 16 * p * z2) * k.core);
            a.add(c((R(3) / 16 * R(l) * R(l - 1) + z2 / 8) * z4) * k.sl());
            a.add(c((R(3) / 16 * R(l - 1) * R(l + 2) + z2 / 8) * z4) * k.sl1());
            a.add(c(-(R(3) / 8 * R(l) * R(l + 2) + z2 / 4) * R(l - 1) * z2 * z) * k.cross);
            a.add(c(R(3) / 8 * p) * k.e1);
            a.add(c(R(3) / 16 * p) * k.ez);
            break;
        }
        default:
            throw UnsupportedError("diagonal basic integral with n=" + std::to_string(n) + " is not provided");
    }
    mag = std::max(mag, a.mag);
    return a.sum;
}

template <typename R>
typename Prec<R>::C offdiag_closed(const BasicKernel<R>& k, int n, double& mag) {
    using C = typename Prec<R>::C;
    if (std::find(kOffdiagN.begin(), kOffdiagN.end(), n) == kOffdiagN.end())
        throw UnsupportedError("off-diagonal basic integral with n=" + std::to_string(n) + " is not provided");
    using std::log;
    const int l = k.l;
    const R z = k.z;
    const C d = diag_closed(k, n + 1, mag);
    const C t1 = C(R(2 * l - n) / 2) * d;
    const C t2 = C(-pow_int(z, -n) / 2) * k.sl();
    mag = std::max({mag, static_cast<double>(abs(t1)), static_cast<double>(abs(t2))});
    C v = t1 + t2;
    if (k.conj) {
        // Im[h_l h_{l+1}^*] = 1/z^2 exactly
        v += C(R(0), n == -1 ? R(log(z)) : pow_int(z, -n - 1) / R(-n - 1));
    }
    return v;
}

template <typename R>
struct BasicSet {
    using C = typename Prec<R>::C;
    std::array<C, 7> diag{};
    std::array<C, 5> offdiag{};
    double magnitude = 0.0;
};

template <typename R>
BasicSet<R> basic_set(int l, R z, bool conj) {
    const BasicKernel<R> k(l, z, conj);
    BasicSet<R> out;
    for (std::size_t i = 0; i < kDiagN.size(); ++i) out.diag[i] = diag_closed(k, kDiagN[i], out.magnitude);
    for (std::size_t i = 0; i < kOffdiagN.size(); ++i) out.offdiag[i] = offdiag_closed(k, kOffdiagN[i], out.magnitude);
    return out;
}

}  // namespace scatdecay::detail
