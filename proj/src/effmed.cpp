#include "scatdecay/effmed.hpp"

#include <algorithm>
#include <cmath>

#include "scatdecay/errors.hpp"
#include "scatdecay/kahan.hpp"

namespace scatdecay {

namespace {

constexpr int kEffLmaxCap = 400;

// (2l+1)/(l(l+1)) rho {...} from scaled j_l, j_{l+1}; the i^l is left off
ScaledReal beta(int l, double rho, const ScaledReal& jl, const ScaledReal& jl1, Pole p) {
    const double a = p == Pole::electric ? l + 1.0 : 0.0;
    const double b = l + (p == Pole::electric ? 1.5 : 0.5);
    const ScaledReal jj = jl * jl, kk = jl1 * jl1, jk = jl * jl1;
    // common exponent, then plain arithmetic
    const std::int64_t e = jj.exponent();
    const double x = jj.mantissa();
    const double y = kk.value_shifted(-e);
    const double z = jk.value_shifted(-e);
    const double brace = (a + 0.5 * rho * rho) * x + 0.5 * rho * rho * y - b * rho * z;
    return ScaledReal((2 * l + 1.0) / (l * (l + 1.0)) * rho * brace, e);
}

Complex i_pow(int l) {
    static const Complex c[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return c[((l % 4) + 4) % 4];
}

}  // namespace

bool EffMedSpec::validate() const {
    sphere.validate();
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    if (!(f >= 0.0) || f > 1.0) throw DomainError("filling fraction must lie in [0, 1]");
    return std::abs(eps_eff(*this) - 1.0) > 0.5;
}

Complex effective_dipole(const EffMedSpec& spec) {
    const double q = spec.sphere.q;
    const Complex eps = spec.sphere.eps;
    if (spec.prescription == Prescription::dipole_amplitude) return amplitude_B(spec.sphere, 1, Pole::electric);
    return Complex(0.0, q * q * q) * (eps - 1.0) / (eps + 2.0);
}

Complex eps_eff(const EffMedSpec& spec) {
    if (!(spec.f >= 0.0)) throw DomainError("filling fraction must be >= 0");
    const double q = spec.sphere.q;
    return 1.0 - Complex(0.0, 3.0 * spec.f) * effective_dipole(spec) / (q * q * q);
}

Complex reduced_B(int l, double rho, Pole p) {
    if (l < 1) throw DomainError("reduced_B needs l >= 1");
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    const auto j = sph_bessel_j_scaled(l + 1, rho);
    return i_pow(l) * beta(l, rho, j[static_cast<std::size_t>(l)], j[static_cast<std::size_t>(l + 1)], p).value();
}

CorrectionPair F_eff(const EffMedSpec& spec, double zeta, int lmax, JKind kind) {
    const double rho = spec.rho, q = spec.sphere.q;
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    if (!(zeta > rho)) throw DomainError("effective-medium correction needs zeta > rho");
    const Complex b = effective_dipole(spec);
    const int L = lmax > 0 ? lmax : kEffLmaxCap;
    const auto j = sph_bessel_j_scaled(L + 1, rho);
    const auto h = sph_hankel1_scaled(L + 1, zeta);
    const bool hot = kind == JKind::hot;
    KahanSum par, perp;
    double biggest = 0.0;
    int quiet = 0;
    for (int l = 1; l <= L; ++l) {
        const auto i = static_cast<std::size_t>(l);
        const ScaledComplex be = to_complex(beta(l, rho, j[i], j[i + 1], Pole::electric));
        const ScaledComplex bm = to_complex(beta(l, rho, j[i], j[i + 1], Pole::magnetic));
        const ScaledComplex d = h[i] * Complex(l + 1.0) - h[i + 1] * Complex(zeta);
        const ScaledComplex H = hot ? to_complex(norm(h[i])) : h[i] * h[i];
        const ScaledComplex Hb = hot ? to_complex(norm(d)) : d * d;
        const Complex w = hot ? Complex(b.real()) : b;
        const double ll = l * (l + 1.0);
        const double p = ll * ll * (be * H * w).value().real() / (zeta * zeta);
        const double t = ll * ((be * Hb * w).value().real() / (zeta * zeta) + (bm * H * w).value().real());
        par += p;
        perp += t;
        const double m = std::max(std::abs(p), std::abs(t));
        biggest = std::max(biggest, m);
        if (lmax == 0 && l > rho + 2) {
            quiet = m < 1e-17 * biggest ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
    }
    const double q3 = q * q * q, s = hot ? -1.0 : 1.0;
    return {s * 9.0 / (2 * q3) * par.value(), s * 9.0 / (4 * q3) * perp.value()};
}

double far_F_eff_cold_perp(const EffMedSpec& spec, double zeta) {
    const double rho = spec.rho, q = spec.sphere.q;
    const double m = 0.5 * std::sin(2 * rho) - rho * std::cos(2 * rho);
    return -9.0 / (8 * q * q * q) * m * std::real(effective_dipole(spec) * std::polar(1.0, 2 * zeta)) / (zeta * zeta);
}

double far_F_eff_hot_perp(const EffMedSpec& spec, double zeta) {
    const double rho = spec.rho, q = spec.sphere.q;
    return -1.5 / (q * q * q) * rho * rho * rho / (zeta * zeta) * effective_dipole(spec).real();
}

std::vector<EffMedRow> effmed_vs_discrete(const AggregateSpec& spec, const std::vector<double>& zeta_grid,
                                          Prescription prescription, int lmax) {
    const EffMedSpec em{spec.rho, spec.f, spec.sphere, prescription};
    const IntrepEvaluator ev(spec, lmax);
    std::vector<EffMedRow> rows;
    rows.reserve(zeta_grid.size());
    for (double z : zeta_grid) {
        EffMedRow r;
        r.zeta = z;
        const CorrectionPair c = F_eff(em, z, 0, JKind::cold), d = F_eff(em, z, 0, JKind::hot);
        r.eff = {z, c.par, c.perp, d.par, d.perp};
        r.discrete = ev.evaluate(z);
        const auto& e = r.eff;
        const auto& x = r.discrete;
        r.ratio_c_par = e.F_c_par / x.F_c_par;
        r.ratio_c_perp = e.F_c_perp / x.F_c_perp;
        r.ratio_d_par = e.F_d_par / x.F_d_par;
        r.ratio_d_perp = e.F_d_perp / x.F_d_perp;
        r.ratio_r_par = (e.F_c_par - e.F_d_par) / (x.F_c_par - x.F_d_par);
        r.ratio_r_perp = (e.F_c_perp - e.F_d_perp) / (x.F_c_perp - x.F_d_perp);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace scatdecay
