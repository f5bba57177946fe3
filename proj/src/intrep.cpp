#include "scatdecay/intrep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "scatdecay/errors.hpp"
#include "scatdecay/hankint.hpp"

#include "basic_integrals.hpp"
#include "scatdecay/kahan.hpp"
#include "scatdecay/quadrature.hpp"

namespace scatdecay {

double g1(double t, double zeta, double rho) { return (rho * rho - (zeta - t) * (zeta - t)) / (2.0 * zeta); }

double g2(double t, double zeta, double rho) {
    const double u = (rho * rho - zeta * zeta - t * t) / (2.0 * zeta);
    return u * u * u / (3.0 * t * t) + t / 3.0;
}

namespace {

// g1 as a product of its roots, exact zeros at both ends
double g1_stable(double t, double zeta, double rho) { return (t - (zeta - rho)) * ((zeta + rho) - t) / (2.0 * zeta); }

struct GValues {
    double g2, gm, gp;
};

GValues g_values(double t, double zeta, double rho) {
    const double a = g1_stable(t, zeta, rho);
    const double x = a / t;
    return {a * (1.0 - x + x * x / 3.0), a * x * (1.0 - x / 3.0), a * (2.0 - x + x * x / 3.0)};
}

}  // namespace

double g_minus(double t, double zeta, double rho) { return g_values(t, zeta, rho).gm; }
double g_plus(double t, double zeta, double rho) { return g_values(t, zeta, rho).gp; }

namespace {

void check_geometry(int l, double zeta, double rho) {
    if (l < 1) throw DomainError("J-integrals need l >= 1");
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    if (!(zeta > rho)) throw DomainError("J-integrals need zeta > rho");
}

// ---------------------------------------------------------------------------
// closed path

using detail::complex128;
using detail::float128;
using R = float128;
using C = complex128;

// Laurent polynomial with powers kLo..kHi
constexpr int kLo = -3;
constexpr int kHi = 6;
struct Laurent {
    std::array<R, kHi - kLo + 1> c{};
    R& at(int p) { return c[static_cast<std::size_t>(p - kLo)]; }
    R get(int p) const { return c[static_cast<std::size_t>(p - kLo)]; }
    Laurent shifted(int s) const {
        Laurent r;
        for (int p = kLo; p <= kHi; ++p)
            if (get(p) != 0) r.at(p + s) = get(p);
        return r;
    }
    Laurent operator*(R s) const {
        Laurent r = *this;
        for (auto& v : r.c) v *= s;
        return r;
    }
    Laurent operator+(const Laurent& o) const {
        Laurent r = *this;
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
        return r;
    }
};

struct GPolys {
    Laurent g2, gm, gp;
};

// g1 = A + t + v t^2, g2 = (A + v t^2)^3/(3t^2) + t/3
GPolys g_polys(R zeta, R rho) {
    const R A = (rho * rho - zeta * zeta) / (2 * zeta);
    const R v = R(-1) / (2 * zeta);
    Laurent g1p, g2p;
    g1p.at(0) = A;
    g1p.at(1) = 1;
    g1p.at(2) = v;
    g2p.at(-2) = A * A * A / 3;
    g2p.at(0) = A * A * v;
    g2p.at(1) = R(1) / 3;
    g2p.at(2) = A * v * v;
    g2p.at(4) = v * v * v / 3;
    return {g2p, g1p + g2p * R(-1), g1p + g2p};
}

// coefficient polynomials of h_l^2, h_l h_{l+1}, h_{l+1}^2 for one J
struct Kernel3 {
    Laurent ll, x, l1;
};

std::array<Kernel3, 4> kernels(int l, R zeta, R rho) {
    const auto g = g_polys(zeta, rho);
    const R a = R(l + 1) * R(l + 1);
    const R b = 2 * R(l) * R(l + 1);
    const R x = -2 * R(l + 1);
    return {{
        {(g.gm * a + g.g2 * b).shifted(-1), g.gm * x, g.gm.shifted(1)},
        {g.gm.shifted(1), {}, {}},
        {(g.gp * a + g.gm * b).shifted(-1), g.gp * x, g.gp.shifted(1)},
        {g.gp.shifted(1), {}, {}},
    }};
}

struct Ends {
    detail::BasicSet<R> lo, hi;
    double mag() const { return std::max(lo.magnitude, hi.magnitude); }
};

C diag_def(const Ends& e, int n, bool conj) {
    const auto i = static_cast<std::size_t>(diag_index(n));
    const C d = e.hi.diag[i] - e.lo.diag[i];
    return conj ? C(real(d)) : d;
}

C off_def(const Ends& e, int n, bool conj) {
    const auto i = static_cast<std::size_t>(offdiag_index(n));
    const C d = e.hi.offdiag[i] - e.lo.offdiag[i];
    // the hot kernel carries Re[h_l h_{l+1}^*]
    return conj ? C(real(d)) : d;
}

Complex to_double(const C& c) { return {static_cast<double>(real(c)), static_cast<double>(imag(c))}; }

}  // namespace

JIntegralSet J_closed(int l, double zeta, double rho, JKind kind, double* condition) {
    check_geometry(l, zeta, rho);
    const bool conj = kind == JKind::hot;
    const R Z = zeta, P = rho;
    const R lo = Z - P, hi = Z + P;
    const Ends el{detail::basic_set<R>(l, lo, conj), detail::basic_set<R>(l, hi, conj)};
    const Ends el1{detail::basic_set<R>(l + 1, lo, conj), detail::basic_set<R>(l + 1, hi, conj)};
    const auto K = kernels(l, Z, P);

    std::array<C, 4> Jx{};
    std::array<double, 4> bounds{};
    for (std::size_t k = 0; k < 4; ++k) {
        C s = C(R(0));
        double bound = 0.0;
        for (int p = kLo; p <= kHi; ++p) {
            if (const R c = K[k].ll.get(p); c != 0) {
                s += C(c) * diag_def(el, -p, conj);
                bound += static_cast<double>(abs(c)) * el.mag();
            }
            if (const R c = K[k].x.get(p); c != 0) {
                s += C(c) * off_def(el, -p, conj);
                bound += static_cast<double>(abs(c)) * el.mag();
            }
            if (const R c = K[k].l1.get(p); c != 0) {
                s += C(c) * diag_def(el1, -p, conj);
                bound += static_cast<double>(abs(c)) * el1.mag();
            }
        }
        Jx[k] = s;
        bounds[k] = bound;
    }
    // binary128 has room for values binary64 cannot hold; hand those back scaled
    std::int64_t e = 0;
    R big = 0;
    for (const auto& v : Jx) big = std::max({big, R(abs(real(v))), R(abs(imag(v)))});
    if (big > 0 && (big > R(0x1p900) || big < R(0x1p-900))) e = static_cast<std::int64_t>(ilogb(big));
    const R scale = ldexp(R(1), static_cast<int>(-e));
    std::array<Complex, 4> J{};
    double cond = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        J[k] = to_double(Jx[k] * C(scale));
        const double a = static_cast<double>(abs(Jx[k]));
        const double bound = bounds[k];
        cond = std::max(cond, a > 0.0 ? bound / a : (bound > 0.0 ? std::numeric_limits<double>::infinity() : 0.0));
    }
    if (condition) *condition = cond;
    JIntegralSet out;
    out.exponent = e;
    out.l = l;
    out.zeta = zeta;
    out.rho = rho;
    out.kind = kind;
    out.method = JMethod::closed;
    out.Je_par = J[0];
    out.Jm_par = J[1];
    out.Je_perp = J[2];
    out.Jm_perp = J[3];
    return out;
}

// ---------------------------------------------------------------------------
// quadrature path

namespace {

using V8 = std::array<Complex, 8>;

struct QuadJ {
    V8 v{};
    std::int64_t exponent = 0;
};

// Integrands of the cold (0..3) and hot (4..7) sets at t, times 2^{-2 eref}.
V8 integrands(int l, double t, double zeta, double rho, std::int64_t eref, bool cold, bool hot) {
    const auto p = sph_hankel1_pair_scaled(l, t);
    const double s = std::ldexp(1.0, static_cast<int>(std::clamp<std::int64_t>(p.exponent - eref, -4000, 600)));
    const Complex h = p.h_l * s;
    const Complex d = (l + 1.0) * h - t * (p.h_lplus1 * s);
    const auto g = g_values(t, zeta, rho);
    const double b = 2.0 * l * (l + 1.0);
    V8 out{};
    if (cold) {
        const Complex H = h * h, Hb = d * d;
        out[0] = (g.gm * Hb + b * g.g2 * H) / t;
        out[1] = t * g.gm * H;
        out[2] = (g.gp * Hb + b * g.gm * H) / t;
        out[3] = t * g.gp * H;
    }
    if (hot) {
        const double H = std::norm(h), Hb = std::norm(d);
        out[4] = (g.gm * Hb + b * g.g2 * H) / t;
        out[5] = t * g.gm * H;
        out[6] = (g.gp * Hb + b * g.gm * H) / t;
        out[7] = t * g.gp * H;
    }
    return out;
}

QuadJ quad_J(int l, double zeta, double rho, bool cold, bool hot, double tol) {
    const double a = zeta - rho, b = zeta + rho;
    const std::int64_t eref = sph_hankel1_pair_scaled(l, a).exponent;
    // weights from a coarse L1 estimate, so each component is resolved to
    // tol relative to its own size
    constexpr int kProbe = 48;
    std::array<double, 8> w{};
    for (int i = 0; i < kProbe; ++i) {
        const double t = a + (b - a) * (i + 0.5) / kProbe;
        const auto v = integrands(l, t, zeta, rho, eref, cold, hot);
        for (std::size_t k = 0; k < 8; ++k) w[k] += std::abs(v[k]) * (b - a) / kProbe;
    }
    // high orders pile up within ~a/l of the lower end; peak times offset
    // is a fair size estimate there
    for (int i = 0; i < kProbe; ++i) {
        const double d = (b - a) * std::pow(10.0, -9.0 + 9.0 * i / kProbe);
        const auto v = integrands(l, a + d, zeta, rho, eref, cold, hot);
        for (std::size_t k = 0; k < 8; ++k) w[k] = std::max(w[k], std::abs(v[k]) * d);
    }
    const double wmax = *std::max_element(w.begin(), w.end());
    if (wmax == 0.0) return QuadJ{V8{}, 2 * eref};
    for (auto& x : w) x = std::max(x, 1e-6 * wmax);

    auto f = [&](double t) {
        auto v = integrands(l, t, zeta, rho, eref, cold, hot);
        for (std::size_t k = 0; k < 8; ++k) v[k] /= w[k];
        return v;
    };
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.max_intervals = 2000;
    // panels shrinking geometrically towards the lower end, down to ~a/l
    std::vector<double> pts{a};
    for (double d = std::min(0.5 * a / (l + 1.0), 0.5 * (b - a)); d < 0.5 * (b - a); d *= 4.0) pts.push_back(a + d);
    pts.push_back(b);
    const auto r = integrate_gk15<V8>(f, pts, opt);
    if (!r.converged)
        throw ConvergenceError("J-integral quadrature did not converge for l=" + std::to_string(l) + " (" +
                                   std::to_string(r.intervals) + " intervals, error " + std::to_string(r.error) + ")",
                               zeta, l);
    QuadJ out;
    out.exponent = 2 * eref;
    for (std::size_t k = 0; k < 8; ++k) out.v[k] = r.value[k] * w[k];
    return out;
}

JIntegralSet from_quad(int l, double zeta, double rho, JKind kind, const QuadJ& q) {
    const std::size_t o = kind == JKind::cold ? 0 : 4;
    JIntegralSet s;
    s.l = l;
    s.zeta = zeta;
    s.rho = rho;
    s.kind = kind;
    s.method = JMethod::quadrature;
    s.exponent = q.exponent;
    s.Je_par = q.v[o];
    s.Jm_par = q.v[o + 1];
    s.Je_perp = q.v[o + 2];
    s.Jm_perp = q.v[o + 3];
    // fold the exponent back when the plain values are representable
    const double m = std::max({std::abs(s.Je_par), std::abs(s.Jm_par), std::abs(s.Je_perp), std::abs(s.Jm_perp)});
    if (m > 0.0 && std::abs(std::log2(m) + static_cast<double>(s.exponent)) < 900.0) {
        for (Complex* c : {&s.Je_par, &s.Jm_par, &s.Je_perp, &s.Jm_perp}) *c = detail::ldexp_any(*c, s.exponent);
        s.exponent = 0;
    }
    return s;
}

// the closed sums run in binary128; this keeps their rounding below ~1e-14
bool closed_usable(double cond) { return std::isfinite(cond) && cond < 1e20; }

}  // namespace

JIntegralSet J_quadrature(int l, double zeta, double rho, JKind kind, double tol) {
    check_geometry(l, zeta, rho);
    return from_quad(l, zeta, rho, kind, quad_J(l, zeta, rho, kind == JKind::cold, kind == JKind::hot, tol));
}

namespace {

JIntegralSet J_any(int l, double zeta, double rho, JKind kind, JMethod method) {
    check_geometry(l, zeta, rho);
    if (method == JMethod::quadrature || (method == JMethod::automatic && l > kClosedLmax))
        return J_quadrature(l, zeta, rho, kind, 1e-11);
    double cond = 0.0;
    auto s = J_closed(l, zeta, rho, kind, &cond);
    if (method == JMethod::closed) {
        if (!std::isfinite(std::abs(s.Je_par)) || !std::isfinite(std::abs(s.Je_perp)))
            throw OrderOverflowError("closed-form J-integrals overflow at l=" + std::to_string(l));
        return s;
    }
    return closed_usable(cond) ? s : J_quadrature(l, zeta, rho, kind, 1e-11);
}

}  // namespace

JIntegralSet J_cold(int l, double zeta, double rho, JMethod method) {
    return J_any(l, zeta, rho, JKind::cold, method);
}

JIntegralSet J_hot(int l, double zeta, double rho, JMethod method) { return J_any(l, zeta, rho, JKind::hot, method); }

// ---------------------------------------------------------------------------
// correction functions

IntrepEvaluator::IntrepEvaluator(const AggregateSpec& spec, int lmax, JMethod method)
    : spec_(spec),
      lmax_fixed_(lmax),
      method_(method),
      table_(spec.sphere, lmax > 0 ? lmax : kAutoLmaxCap) {
    if (!(spec_.rho > 0.0)) throw DomainError("rho must be > 0");
}

int IntrepEvaluator::amplitude_lmax(double zeta) const {
    if (lmax_fixed_ > 0) return lmax_fixed_;
    return std::max(1, multipole_lmax(spec_.sphere, zeta - spec_.rho, 1e-13, table_.lmax()));
}

CorrectionValue IntrepEvaluator::run(double zeta, bool want_cold, bool want_hot, SumDiagnostics* diag) const {
    const double q = spec_.sphere.q;
    const double rho = spec_.rho;
    if (!(zeta > rho + q)) throw DomainError("zeta must exceed rho + q");
    const int L = amplitude_lmax(zeta);

    KahanSum cpar, cperp, hpar, hperp;
    double last = 0.0, total = 0.0;
    auto sc = [](const Complex& v, std::int64_t e) { return ScaledComplex(v, e); };
    for (int l = 1; l <= L; ++l) {
        std::array<JIntegralSet, 2> J;  // cold, hot
        const bool quad = method_ == JMethod::quadrature || (method_ == JMethod::automatic && l > kClosedLmax);
        if (quad) {
            const auto qj = quad_J(l, zeta, rho, want_cold, want_hot, 1e-11);
            J[0] = from_quad(l, zeta, rho, JKind::cold, qj);
            J[1] = from_quad(l, zeta, rho, JKind::hot, qj);
        } else {
            if (want_cold) J[0] = J_any(l, zeta, rho, JKind::cold, method_);
            if (want_hot) J[1] = J_any(l, zeta, rho, JKind::hot, method_);
        }
        const double ll = l * (l + 1.0);
        double term = 0.0;
        if (want_cold) {
            const auto& j = J[0];
            const ScaledComplex& ae = table_.reduced(l, Pole::electric);
            const ScaledComplex& am = table_.reduced(l, Pole::magnetic);
            const double p = ll * ((ae * sc(j.Je_par, j.exponent)).value().real() +
                                   (am * sc(j.Jm_par, j.exponent)).value().real());
            const double t = ll * ((ae * sc(j.Je_perp, j.exponent)).value().real() +
                                   (am * sc(j.Jm_perp, j.exponent)).value().real());
            cpar.add(p);
            cperp.add(t);
            term = std::max({term, std::abs(p), std::abs(t)});
        }
        if (want_hot) {
            const auto& j = J[1];
            const ScaledComplex ce = to_complex(table_.C_scaled(l, Pole::electric));
            const ScaledComplex cm = to_complex(table_.C_scaled(l, Pole::magnetic));
            const double p = ll * ((ce * sc(j.Je_par, j.exponent)).value().real() +
                                   (cm * sc(j.Jm_par, j.exponent)).value().real());
            const double t = ll * ((ce * sc(j.Je_perp, j.exponent)).value().real() +
                                   (cm * sc(j.Jm_perp, j.exponent)).value().real());
            hpar.add(p);
            hperp.add(t);
            term = std::max({term, std::abs(p), std::abs(t)});
        }
        total += term;
        last = total > 0.0 ? term / total : 0.0;
    }
    if (diag) *diag = SumDiagnostics{L, 0, last, last < 1e-10};

    const double q3 = q * q * q;
    CorrectionValue out;
    out.zeta = zeta;
    out.F_c_par = -9.0 / (8.0 * q3) * cpar.value();
    out.F_c_perp = -9.0 / (16.0 * q3) * cperp.value();
    out.F_d_par = 9.0 / (8.0 * q3) * hpar.value();
    out.F_d_perp = 9.0 / (16.0 * q3) * hperp.value();
    return out;
}

CorrectionValue IntrepEvaluator::evaluate(double zeta, SumDiagnostics* diag) const {
    return run(zeta, true, true, diag);
}

CorrectionPair IntrepEvaluator::cold(double zeta, SumDiagnostics* diag) const {
    const auto v = run(zeta, true, false, diag);
    return {v.F_c_par, v.F_c_perp};
}

CorrectionPair IntrepEvaluator::hot(double zeta, SumDiagnostics* diag) const {
    const auto v = run(zeta, false, true, diag);
    return {v.F_d_par, v.F_d_perp};
}

CorrectionPair F_cold_int(const AggregateSpec& spec, double zeta, int lmax, JMethod method) {
    return IntrepEvaluator(spec, lmax, method).cold(zeta);
}

CorrectionPair F_hot_int(const AggregateSpec& spec, double zeta, int lmax, JMethod method) {
    return IntrepEvaluator(spec, lmax, method).hot(zeta);
}

// ---------------------------------------------------------------------------
// halfspace limit

namespace {

// h_l and h_{l+1} at complex argument by upward recurrence (stable for h^(1))
std::pair<Complex, Complex> hankel_complex(int l, Complex z) {
    const Complex I1{0.0, 1.0};
    const Complex e = std::exp(I1 * z);
    Complex h0 = -I1 * e / z;
    Complex h1 = -e * (z + I1) / (z * z);
    for (int k = 1; k <= l; ++k) {
        const Complex h2 = (2.0 * k + 1.0) / z * h1 - h0;
        h0 = h1;
        h1 = h2;
    }
    return {h0, h1};
}

}  // namespace

JIntegralSet halfspace_J(int l, double zp, JKind kind) {
    if (l < 1) throw DomainError("J-integrals need l >= 1");
    if (!(zp > 0.0)) throw DomainError("halfspace distance must be > 0");
    const double b = 2.0 * l * (l + 1.0);
    const double z3 = zp * zp * zp;
    JIntegralSet out;
    out.l = l;
    out.zeta = zp;
    out.rho = std::numeric_limits<double>::infinity();
    out.kind = kind;
    out.method = JMethod::quadrature;

    if (kind == JKind::hot) {
        // tail exponent of the leading integrand from two far samples
        auto je_par = [&](double t) {
            const auto p = sph_hankel1_pair_scaled(l, t);
            const double s = std::ldexp(1.0, static_cast<int>(p.exponent));
            const Complex h = p.h_l * s, d = (l + 1.0) * h - t * (p.h_lplus1 * s);
            const double gm = 2.0 * t / 3.0 - zp + z3 / (3.0 * t * t);
            const double g2 = t / 3.0 - z3 / (3.0 * t * t);
            return (gm * std::norm(d) + b * g2 * std::norm(h)) / t;
        };
        const double T = 1e4 * std::max(1.0, zp);
        const double alpha = std::log2(std::abs(je_par(2.0 * T)) / std::abs(je_par(T)));
        if (alpha > -1.05)
            throw ConvergenceError("hot halfspace J-integrals diverge: integrand ~ t^" + std::to_string(alpha) +
                                       " at large t",
                                   zp, l);
        // unreachable for the kernels above; kept for a convergent variant
        throw ConvergenceError("hot halfspace tail extrapolation not available", zp, l);
    }

    // t = zp + i s
    auto f = [&](double s) {
        const Complex t{zp, s};
        const auto [h, h1] = hankel_complex(l, t);
        const Complex d = (l + 1.0) * h - t * h1;
        const Complex H = h * h, Hb = d * d;
        const Complex gm = 2.0 * t / 3.0 - zp + z3 / (3.0 * t * t);
        const Complex gp = 4.0 * t / 3.0 - zp - z3 / (3.0 * t * t);
        const Complex g2 = t / 3.0 - z3 / (3.0 * t * t);
        const Complex dt{0.0, 1.0};
        return std::array<Complex, 4>{dt * (gm * Hb + b * g2 * H) / t, dt * t * gm * H, dt * (gp * Hb + b * gm * H) / t,
                                      dt * t * gp * H};
    };
    QuadOptions opt;
    opt.abs_tol = 1e-13;
    opt.rel_tol = 1e-11;
    std::array<Complex, 4> acc{};
    double prev = 0.0;
    for (double s0 : {0.0, 2.0, 6.0, 14.0, 30.0}) {
        const double s1 = s0 == 30.0 ? 60.0 : (s0 == 0.0 ? 2.0 : 2.0 * s0 + 2.0);
        const auto r = integrate_gk15<std::array<Complex, 4>>(f, s0, s1, opt);
        if (!r.converged) throw ConvergenceError("halfspace contour quadrature did not converge", zp, l);
        for (std::size_t k = 0; k < 4; ++k) acc[k] += r.value[k];
        prev = QuadTraits<std::array<Complex, 4>>::norm(r.value);
    }
    if (prev > 1e-9 * QuadTraits<std::array<Complex, 4>>::norm(acc))
        throw ConvergenceError("halfspace contour tail above tolerance", zp, l);
    out.Je_par = acc[0];
    out.Jm_par = acc[1];
    out.Je_perp = acc[2];
    out.Jm_perp = acc[3];
    return out;
}

}  // namespace scatdecay
