#include "scatdecay/hankint.hpp"

#include "basic_integrals.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "scatdecay/errors.hpp"
#include "scatdecay/kahan.hpp"
#include "scatdecay/quadrature.hpp"

namespace scatdecay {

namespace {

constexpr Complex I1{0.0, 1.0};

std::vector<Complex> hankel_values(int lmax, double z) {
    if (!(z > 0.0)) throw DomainError("basic integrals need z > 0");
    const auto s = sph_hankel1_scaled(lmax, z);
    std::vector<Complex> h(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) h[k] = s[k].value();
    return h;
}

void check_args(int l, double z) {
    if (l < 0) throw DomainError("negative order in basic integral");
    if (!(z > 0.0)) throw DomainError("basic integrals need z > 0");
}

}  // namespace

int diag_index(int n) {
    for (std::size_t i = 0; i < kDiagN.size(); ++i)
        if (kDiagN[i] == n) return static_cast<int>(i);
    throw UnsupportedError("diagonal basic integral with n=" + std::to_string(n) + " is not provided");
}

int offdiag_index(int n) {
    for (std::size_t i = 0; i < kOffdiagN.size(); ++i)
        if (kOffdiagN[i] == n) return static_cast<int>(i);
    throw UnsupportedError("off-diagonal basic integral with n=" + std::to_string(n) + " is not provided");
}

Complex I_diag(int l, int n, double z) {
    check_args(l, z);
    diag_index(n);
    double mag = 0.0;
    return detail::diag_closed(detail::BasicKernel<double>(l, z, false), n, mag);
}

Complex I_offdiag(int l, int n, double z) {
    check_args(l, z);
    double mag = 0.0;
    return detail::offdiag_closed(detail::BasicKernel<double>(l, z, false), n, mag);
}

double Iprime_diag(int l, int n, double z) {
    check_args(l, z);
    diag_index(n);
    double mag = 0.0;
    return detail::diag_closed(detail::BasicKernel<double>(l, z, true), n, mag).real();
}

Complex Iprime_offdiag(int l, int n, double z) {
    check_args(l, z);
    double mag = 0.0;
    return detail::offdiag_closed(detail::BasicKernel<double>(l, z, true), n, mag);
}

Complex recursion_B2_step(int l, int n, double z, Complex I_ll) {
    check_args(l, z);
    const int d = 2 * l + n + 3;
    if (d == 0)
        throw PoleError("recursion (2l+n+3) I_{l+1} terminates at l=" + std::to_string(l) + ", n=" + std::to_string(n));
    const auto h = hankel_values(l + 1, z);
    const auto L = static_cast<std::size_t>(l);
    return ((2.0 * l - n + 1.0) * I_ll - std::pow(z, 1.0 - n) * (h[L] * h[L] + h[L + 1] * h[L + 1])) /
           static_cast<double>(d);
}

AntiderivativeValue antiderivative(int l1, int l2, int n, double z, bool conjugated) {
    AntiderivativeValue v{l1, l2, n, z, {}, conjugated};
    if (l2 == l1)
        v.value = conjugated ? Complex(Iprime_diag(l1, n, z)) : I_diag(l1, n, z);
    else if (l2 == l1 + 1)
        v.value = conjugated ? Iprime_offdiag(l1, n, z) : I_offdiag(l1, n, z);
    else
        throw UnsupportedError("basic integrals only for l2 - l1 in {0, 1}");
    return v;
}

Complex definite(int l1, int l2, int n, double lower, double upper, bool conjugated) {
    if (!(lower > 0.0) || lower > upper) throw DomainError("definite integral needs 0 < lower <= upper");
    if (lower == upper) {
        antiderivative(l1, l2, n, lower, conjugated);  // still validate the arguments
        return {};
    }
    if (l1 < 0) throw DomainError("negative order in basic integral");
    if (l2 != l1 && l2 != l1 + 1) throw UnsupportedError("basic integrals only for l2 - l1 in {0, 1}");
    if (l2 == l1) diag_index(n);
    else offdiag_index(n);
    // the closed forms cancel heavily for l >> z; difference the ends in binary128
    using Q = detail::float128;
    double mag = 0.0;
    auto at = [&](double z) {
        const detail::BasicKernel<Q> k(l1, Q(z), conjugated);
        auto v = l2 == l1 ? detail::diag_closed(k, n, mag) : detail::offdiag_closed(k, n, mag);
        if (l2 == l1 && conjugated) v = detail::complex128(v.real(), 0);
        return v;
    };
    const auto d = at(upper) - at(lower);
    return {static_cast<double>(d.real()), static_cast<double>(d.imag())};
}

Complex definite_quadrature(int l1, int l2, int n, double lower, double upper, bool conjugated, double tol) {
    if (!(lower > 0.0) || lower > upper) throw DomainError("definite integral needs 0 < lower <= upper");
    if (l1 < 0 || l2 < 0) throw DomainError("negative order");
    auto f = [&](double u) {
        const auto h1 = sph_hankel1(l1, u).h_l;
        const auto h2 = sph_hankel1(l2, u).h_l;
        return std::pow(u, -n) * h1 * (conjugated ? std::conj(h2) : h2);
    };
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = tol;
    opt.max_intervals = 5000;
    const auto r = integrate_gk15<Complex>(f, lower, upper, opt);
    if (!r.converged)
        throw ConvergenceError("quadrature of basic integral did not converge (" + std::to_string(r.intervals) +
                               " intervals, error " + std::to_string(r.error) + ")");
    return r.value;
}

BasicIntegralSet basic_integrals(int l, double z, bool conjugated) {
    check_args(l, z);
    const auto b = detail::basic_set<double>(l, z, conjugated);
    return {b.diag, b.offdiag, b.magnitude};
}

// ---------------------------------------------------------------------------
// Sum rules

namespace {

// The finite hierarchies close on terms of size |h_{l+1}|^2 that cancel
// against the left-hand sums to many digits once l >> z, so both sides are
// built in binary128 and rounded at the end.
using Q = detail::float128;
using QC = detail::complex128;

Q qpoch(Q a, int n) {
    Q p = 1;
    if (n >= 0) {
        for (int k = 0; k < n; ++k) p *= a + k;
        return p;
    }
    for (int k = n; k < 0; ++k) {
        if (a + k == 0) throw PoleError("Pochhammer symbol with a pole in a sum rule");
        p *= a + k;
    }
    return 1 / p;
}

Q qpoch(double a, int n) { return qpoch(Q(a), n); }

struct HSquares {
    std::vector<QC> h;
    QC sq(int k) const { return h[static_cast<std::size_t>(k)] * h[static_cast<std::size_t>(k)]; }
    QC cross(int l) const { return h[static_cast<std::size_t>(l)] * h[static_cast<std::size_t>(l) + 1]; }
};

HSquares squares(int lmax, Q z) { return {detail::Prec<Q>::hankel(lmax, z)}; }

Complex to_double(const QC& c) { return {static_cast<double>(c.real()), static_cast<double>(c.imag())}; }

QC c2_rhs(const HSquares& H, int l, int p, Q z) {
    Q a = 0, b = 0, c = 0;
    for (int k = 0; k <= p; ++k) {
        const Q base = qpoch(p - k + 1.0, k) / qpoch(p - k + 0.5, k + 1);
        a += base / qpoch(l - p + k + 1.5, 2 * p - 2 * k + 1) / detail::pow_int(z, 2 * k);
        b += base / qpoch(l - p + k + 0.5, 2 * p - 2 * k + 1) / detail::pow_int(z, 2 * k);
        c += base / qpoch(l - p + k + 1.5, 2 * p - 2 * k) / detail::pow_int(z, 2 * k + 1);
    }
    return -a / 2 * H.sq(l) - b / 2 * H.sq(l + 1) + c * H.cross(l);
}

QC c2_lhs(const HSquares& H, int l, int p) {
    QC s = 0;
    for (int k = 0; k <= l; ++k) s += Q(2 * k + 1) / qpoch(k - p - 0.5, 2 * p + 3) * H.sq(k);
    return s;
}

QC c5_rhs0(const HSquares& H, int l, int p, Q z) {
    QC s = 0;
    for (int k = p; k <= l; ++k) s += Q(2 * k + 1) / qpoch(k - p + 1.0, 2 * p) * H.sq(k);
    const Q z2 = z * z;
    return Q(2 * p - 1) / Q(2 * p) * s - z2 * H.sq(l) / (2 * p * qpoch(l - p + 2.0, 2 * p)) -
           z2 * H.sq(l + 1) / (2 * p * qpoch(l - p + 1.0, 2 * p)) + z * H.cross(l) / (p * qpoch(l - p + 2.0, 2 * p - 1));
}

QC c6_lhs(const HSquares& H, int l, int p) {
    QC s = 0;
    for (int k = 0; k <= l; ++k) s += Q(2 * k + 1) * qpoch(k - p + 0.5, 2 * p + 1) * H.sq(k);
    return s;
}

QC c6_rhs0(const HSquares& H, int l, int p, Q z) {
    QC s = 0;
    for (int k = 0; k <= l; ++k) s += Q(2 * k + 1) * qpoch(k - p + 1.5, 2 * p - 1) * H.sq(k);
    const Q z2 = z * z, d = 2 * Q(p + 1);
    return Q(2 * p + 1) / d * z2 * s - qpoch(l - p + 1.5, 2 * p + 1) / d * z2 * H.sq(l) -
           qpoch(l - p + 0.5, 2 * p + 1) / d * z2 * H.sq(l + 1) + qpoch(l - p + 0.5, 2 * p + 2) / Q(p + 1) * z * H.cross(l);
}

double factorial(int p) {
    double f = 1.0;
    for (int k = 2; k <= p; ++k) f *= k;
    return f;
}

double poch(double a, int n) { return pochhammer(a, n); }

}  // namespace

SumRuleSides sumrule_check(SumRule rule, int l, int p, double z) {
    if (!(z > 0.0)) throw DomainError("sum rules need z > 0");
    SumRuleSides out;
    const bool infinite = rule == SumRule::C7 || rule == SumRule::C8 || rule == SumRule::C9 || rule == SumRule::C10;
    if (infinite) {
        if (p < 0) throw DomainError("sum rule needs p >= 0");
        const int kmax = static_cast<int>(std::ceil(z)) + 60;
        const auto js = sph_bessel_j_scaled(kmax, z);
        auto j2 = [&](int k) {
            const double v = js[static_cast<std::size_t>(k)].value();
            return v * v;
        };
        KahanSum s;
        switch (rule) {
            case SumRule::C7:
                for (int k = p; k <= kmax; ++k) s.add((2.0 * k + 1.0) * poch(k - p + 1.0, 2 * p) * j2(k));
                out.rhs = factorial(p) / poch(1.5, p) * std::pow(z, 2 * p);
                break;
            case SumRule::C8: {
                for (int k = 0; k <= kmax; ++k) s.add(j2(k));
                out.rhs = sin_cos_integrals(2.0 * z).si / (2.0 * z);
                break;
            }
            case SumRule::C9: {
                for (int k = 0; k <= kmax; ++k) s.add((2.0 * k + 1.0) * (2.0 * k + 1.0) * j2(k));
                out.rhs = z * sin_cos_integrals(2.0 * z).si + std::sin(2.0 * z) / (4.0 * z) + 0.5 * std::cos(2.0 * z);
                break;
            }
            default: {
                for (int k = p; k <= kmax; ++k)
                    s.add(((k % 2 == 0) ? 1.0 : -1.0) * (2.0 * k + 1.0) * poch(k - p + 1.0, 2 * p) * j2(k));
                out.rhs = ((p % 2 == 0) ? 1.0 : -1.0) * factorial(p) * std::pow(z, p) * sph_bessel_j(p, 2.0 * z);
                break;
            }
        }
        out.lhs = s.value();
        return out;
    }

    if (l < 0) throw DomainError("sum rule needs l >= 0");
    const Q zq = z;
    const HSquares H = squares(std::max(l, p) + 1, zq);
    const Q z2 = zq * zq;
    QC lhs = 0, rhs = 0;
    switch (rule) {
        case SumRule::C1: {
            for (int k = 0; k <= l; ++k) lhs += H.sq(k) / Q((2 * k - 1) * (2 * k + 3));
            using std::cos;
            using std::sin;
            const QC e2(cos(2 * zq), sin(2 * zq));
            rhs = -H.sq(l) / Q(4 * (2 * l + 3)) - H.sq(l + 1) / Q(4 * (2 * l + 1)) + H.cross(l) / (4 * zq) +
                  (1 / (2 * z2) + QC(0, 1) / (4 * z2 * zq)) * e2;
            break;
        }
        case SumRule::C2: {
            if (p < 0) throw DomainError("C2 needs p >= 0");
            const QC R = c2_lhs(H, 0, p) - c2_rhs(H, 0, p, zq);
            lhs = c2_lhs(H, l, p);
            rhs = c2_rhs(H, l, p, zq) + R;
            break;
        }
        case SumRule::C3: {
            for (int k = 0; k <= l; ++k) lhs += Q(2 * k + 1) * H.sq(k);
            rhs = -z2 * H.sq(l) - z2 * H.sq(l + 1) + 2 * Q(l + 1) * zq * H.cross(l);
            break;
        }
        case SumRule::C4: {
            if (p < 0 || l < p) throw DomainError("C4 needs 0 <= p <= l");
            for (int k = p; k <= l; ++k) lhs += Q(2 * k + 1) * qpoch(k - p + 1.0, 2 * p) * H.sq(k);
            Q a = 0, b = 0, c = 0;
            for (int k = 0; k <= p; ++k) {
                const Q base = qpoch(p - k + 1.0, k) / qpoch(p - k + 0.5, k + 1);
                a += base * qpoch(l - p + k + 2.0, 2 * p - 2 * k) * detail::pow_int(zq, 2 * k + 2);
                b += base * qpoch(l - p + k + 1.0, 2 * p - 2 * k) * detail::pow_int(zq, 2 * k + 2);
                c += base * qpoch(l - p + k + 1.0, 2 * p - 2 * k + 1) * detail::pow_int(zq, 2 * k + 1);
            }
            rhs = -a / 2 * H.sq(l) - b / 2 * H.sq(l + 1) + c * H.cross(l);
            break;
        }
        case SumRule::C5: {
            if (p < 1 || l < p) throw DomainError("C5 needs 1 <= p <= l");
            const QC R = -c5_rhs0(H, p, p, zq);
            QC s = 0;
            for (int k = p + 1; k <= l; ++k) s += Q(2 * k + 1) / qpoch(Q(k - p), 2 * p + 2) * H.sq(k);
            lhs = z2 * s;
            rhs = c5_rhs0(H, l, p, zq) + R;
            break;
        }
        case SumRule::C6: {
            if (p < 0) throw DomainError("C6 needs p >= 0");
            const QC R = c6_lhs(H, 0, p) - c6_rhs0(H, 0, p, zq);
            lhs = c6_lhs(H, l, p);
            rhs = c6_rhs0(H, l, p, zq) + R;
            break;
        }
        default:
            break;
    }
    out.lhs = to_double(lhs);
    out.rhs = to_double(rhs);
    return out;
}

}  // namespace scatdecay
