#include "scatdecay/mie.hpp"

#include <cmath>
#include <string>

#include "scatdecay/errors.hpp"
#include "scatdecay/quadrature.hpp"

namespace scatdecay {

namespace {

Complex i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

void check_l(int l) {
    if (l < 1) throw DomainError("multipole order must be >= 1, got " + std::to_string(l));
}

// Bessel data at q and q' shared by all amplitudes up to lmax.
struct SphereBessel {
    std::vector<ScaledComplex> jq, jqp, hq;

    SphereBessel(const SphereSpec& s, int lmax) {
        const auto jr = sph_bessel_j_scaled(lmax + 1, s.q);
        jq.reserve(jr.size());
        for (const auto& v : jr) jq.push_back(to_complex(v));
        jqp = sph_bessel_j_scaled(lmax + 1, s.sqrt_eps() * s.q);
        hq = sph_hankel1_scaled(lmax + 1, s.q);
    }
};

struct NumDen {
    ScaledComplex num, den;
};

NumDen numerator_denominator(const SphereSpec& s, const SphereBessel& b, int l, Pole p) {
    const double q = s.q;
    const Complex qp = s.sqrt_eps() * q;
    const auto L = static_cast<std::size_t>(l);
    const ScaledComplex f_q = b.jq[L] * Complex(l + 1.0) - b.jq[L + 1] * Complex(q);
    const ScaledComplex f_qp = b.jqp[L] * Complex(l + 1.0) - b.jqp[L + 1] * qp;
    const ScaledComplex fh_q = b.hq[L] * Complex(l + 1.0) - b.hq[L + 1] * Complex(q);
    const Complex e = (p == Pole::electric) ? s.eps : Complex(1.0);
    const ScaledComplex d1 = fh_q * b.jqp[L] * e;
    const ScaledComplex d2 = b.hq[L] * f_qp;
    NumDen nd;
    nd.num = f_q * b.jqp[L] * e - b.jq[L] * f_qp;
    nd.den = d1 - d2;
    const double scale = std::max(d1.log2_abs(), d2.log2_abs());
    if (nd.den.is_zero() || nd.den.log2_abs() < scale - 50.0)
        throw DegenerateDenominatorError("Mie denominator vanishes at l=" + std::to_string(l) +
                                         " (resonance hit)");
    return nd;
}

ScaledComplex reduced_from(const NumDen& nd, int l) {
    return nd.num / nd.den * Complex((2.0 * l + 1.0) / (l * (l + 1.0)));
}

ScaledReal C_from_reduced(const ScaledComplex& a, int l, const SphereSpec& s) {
    if (s.eps.imag() == 0.0) return {};  // lossless: zero exactly, not up to round-off
    return real_part(a) - norm(a) * (l * (l + 1.0) / (2.0 * l + 1.0));
}

}  // namespace

void SphereSpec::validate() const {
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("sphere size parameter q must be > 0");
    if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
        throw DomainError("dielectric constant must be finite");
    if (eps.imag() < 0.0) throw DomainError("Im eps must be >= 0 (passive sphere)");
}

ScaledComplex reduced_amplitude_scaled(const SphereSpec& s, int l, Pole p) {
    s.validate();
    check_l(l);
    const SphereBessel b(s, l);
    return reduced_from(numerator_denominator(s, b, l, p), l);
}

ScaledComplex amplitude_B_scaled(const SphereSpec& s, int l, Pole p) {
    return reduced_amplitude_scaled(s, l, p) * i_power(l + 1);
}

Complex amplitude_B(const SphereSpec& s, int l, Pole p) { return amplitude_B_scaled(s, l, p).value(); }

Complex amplitude_A(const SphereSpec& s, int l, Pole p) {
    s.validate();
    check_l(l);
    const SphereBessel b(s, l);
    const NumDen nd = numerator_denominator(s, b, l, p);
    const Complex c = (p == Pole::electric) ? s.sqrt_eps() : Complex(1.0);
    const ScaledComplex a = ScaledComplex(c * i_power(l + 1) * ((2.0 * l + 1.0) / (l * (l + 1.0)))) / nd.den;
    return a.value();
}

ScaledReal coeff_C_scaled(const SphereSpec& s, int l, Pole p) {
    return C_from_reduced(reduced_amplitude_scaled(s, l, p), l, s);
}

double coeff_C(const SphereSpec& s, int l, Pole p) { return coeff_C_scaled(s, l, p).value(); }

MultipoleTable::MultipoleTable(const SphereSpec& spec, int lmax) : spec_(spec), lmax_(lmax) {
    spec_.validate();
    if (lmax < 1) throw DomainError("MultipoleTable needs lmax >= 1");
    const SphereBessel b(spec_, lmax);
    const auto n = static_cast<std::size_t>(lmax) + 1;
    ae_.resize(n);
    am_.resize(n);
    ce_.resize(n);
    cm_.resize(n);
    for (int l = 1; l <= lmax; ++l) {
        const auto L = static_cast<std::size_t>(l);
        ae_[L] = reduced_from(numerator_denominator(spec_, b, l, Pole::electric), l);
        am_[L] = reduced_from(numerator_denominator(spec_, b, l, Pole::magnetic), l);
        ce_[L] = C_from_reduced(ae_[L], l, spec_);
        cm_[L] = C_from_reduced(am_[L], l, spec_);
    }
}

const ScaledComplex& MultipoleTable::reduced(int l, Pole p) const {
    if (l < 1 || l > lmax_) throw DomainError("multipole order outside table");
    return p == Pole::electric ? ae_[static_cast<std::size_t>(l)] : am_[static_cast<std::size_t>(l)];
}

const ScaledReal& MultipoleTable::C_scaled(int l, Pole p) const {
    if (l < 1 || l > lmax_) throw DomainError("multipole order outside table");
    return p == Pole::electric ? ce_[static_cast<std::size_t>(l)] : cm_[static_cast<std::size_t>(l)];
}

Complex MultipoleTable::Be(int l) const { return (reduced(l, Pole::electric) * i_power(l + 1)).value(); }
Complex MultipoleTable::Bm(int l) const { return (reduced(l, Pole::magnetic) * i_power(l + 1)).value(); }

double radial_integral_Ieps_quadrature(const SphereSpec& s, int l) {
    const Complex kp = s.sqrt_eps() * s.q;
    auto f = [&](double r) { return r * r * std::norm(sph_bessel_j(l, kp * r, 1 << 20)); };
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-13;
    const auto res = integrate_gk15<double>(f, 0.0, 1.0, opt);
    return res.value;
}

double radial_integral_Ieps(const SphereSpec& s, int l) {
    s.validate();
    if (l < 0) throw DomainError("negative order in radial integral");
    if (s.eps.imag() < 1e-14) return radial_integral_Ieps_quadrature(s, l);
    const Complex kp = s.sqrt_eps() * s.q;
    const auto j = sph_bessel_j_scaled(l + 1, kp);
    // k'^2 - k'*^2 = 2i Im(k'^2)
    const ScaledComplex x =
        j[static_cast<std::size_t>(l) + 1] * conj(j[static_cast<std::size_t>(l)]) * (kp / Complex(0.0, 2.0 * (kp * kp).imag()));
    return 2.0 * x.value().real();
}

WronskianIdentities verify_wronskian_identities(const SphereSpec& s, int l) {
    s.validate();
    check_l(l);
    if (!(s.eps.imag() > 0.0)) throw DomainError("identity check needs Im eps > 0");
    const double im = s.eps.imag();
    const double q = s.q;
    const double ll = l * (l + 1.0);
    WronskianIdentities w;
    w.lhs_m = im * radial_integral_Ieps(s, l) * std::norm(amplitude_A(s, l, Pole::magnetic));
    w.rhs_m = (2.0 * l + 1.0) / ll / q * coeff_C(s, l, Pole::magnetic);
    w.lhs_e = im * ((l + 1.0) * radial_integral_Ieps(s, l - 1) + l * radial_integral_Ieps(s, l + 1)) *
              std::norm(amplitude_A(s, l, Pole::electric));
    w.rhs_e = (2.0 * l + 1.0) * (2.0 * l + 1.0) / ll / q * coeff_C(s, l, Pole::electric);
    return w;
}

ScaledReal large_l_amplitude_asymptote_scaled(const SphereSpec& s, int l) {
    check_l(l);
    const double pref = s.eps.imag() / std::norm(1.0 + s.eps);
    if (pref == 0.0) return ScaledReal{};
    // e^{2l} q^{2l+1} / (2^{2l} l^{2l+2}), in log2
    const double lg = (2.0 * l) / std::log(2.0) + (2.0 * l + 1.0) * std::log2(s.q) - 2.0 * l -
                      (2.0 * l + 2.0) * std::log2(static_cast<double>(l));
    const double whole = std::floor(lg);
    return ScaledReal(pref * std::exp2(lg - whole), static_cast<std::int64_t>(whole));
}

double large_l_amplitude_asymptote(const SphereSpec& s, int l) {
    return large_l_amplitude_asymptote_scaled(s, l).value();
}

int multipole_lmax(const SphereSpec& s, double gap, double tol, int cap) {
    s.validate();
    if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
    if (!(gap > 0.0)) throw DomainError("gap must be > 0");
    const int top = cap + 8;
    const SphereBessel b(s, top);
    const auto h = sph_hankel1_scaled(top + 1, gap);
    std::vector<double> lg(static_cast<std::size_t>(top) + 1, -INFINITY);
    for (int l = 1; l <= top; ++l) {
        const ScaledComplex a = reduced_from(numerator_denominator(s, b, l, Pole::electric), l);
        const ScaledComplex m = reduced_from(numerator_denominator(s, b, l, Pole::magnetic), l);
        const double amp = std::max(a.log2_abs(), m.log2_abs());
        lg[static_cast<std::size_t>(l)] =
            amp + 2.0 * h[static_cast<std::size_t>(l)].log2_abs() + std::log2(l * (l + 1.0));
    }
    double running = -INFINITY;  // log2 of a lower bound on the partial sum
    for (int l = 1; l < top; ++l) {
        running = std::max(running, lg[static_cast<std::size_t>(l)]);
        const double next = lg[static_cast<std::size_t>(l) + 1];
        const double r = std::exp2(next - lg[static_cast<std::size_t>(l)]);
        if (!(r < 0.999)) continue;
        // geometric tail bound T_{l+1}/(1-r)
        const double tail = next - std::log2(1.0 - r);
        if (tail < running + std::log2(tol)) return l;
    }
    if (running == -INFINITY) return 1;  // no scattering at all
    throw OrderOverflowError("multipole series needs more than " + std::to_string(cap) +
                             " orders (gap=" + std::to_string(gap) + ")");
}

int auto_lmax(const SphereSpec& s, double zeta_max, double tol, double gap, int cap) {
    if (!(zeta_max > 0.0)) throw DomainError("zeta_max must be > 0");
    const int floor_l = static_cast<int>(std::floor(zeta_max + 8.0 * std::cbrt(zeta_max) + 10.0));
    const int tail_l = multipole_lmax(s, gap > 0.0 ? gap : zeta_max, tol, cap);
    const int l = std::max(floor_l, tail_l);
    if (l > cap)
        throw OrderOverflowError("auto_lmax result " + std::to_string(l) + " exceeds cap " + std::to_string(cap));
    return l;
}

}  // namespace scatdecay
