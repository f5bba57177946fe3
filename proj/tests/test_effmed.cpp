#include <doctest.h>

#include <cmath>
#include <numbers>

#include "scatdecay/effmed.hpp"
#include "scatdecay/errors.hpp"
#include "test_util.hpp"

using namespace scatdecay;
using testutil::rel_err;

namespace {
#include "oracles/effmed_values.inc"

EffMedSpec fig7(double f = 0.05) { return {6.0, f, {0.5, {3.0, 0.1}}, Prescription::dipole_amplitude}; }

double amplitude(const std::function<double(double)>& F, double zeta) {
    double m = 0.0;
    for (int k = -32; k <= 32; ++k) m = std::max(m, std::abs(F(zeta + k * std::numbers::pi / 64)));
    return m;
}
}  // namespace

TEST_CASE("effective dielectric constant") {
    CHECK(eps_eff(fig7(0.0)) == Complex(1.0, 0.0));
    CHECK(rel_err(eps_eff(fig7()), kEpsEff_f005_e3p01i_q05) < 1e-12);
    EffMedSpec mg = fig7();
    mg.prescription = Prescription::maxwell_garnett;
    const Complex eps = mg.sphere.eps;
    CHECK(rel_err(eps_eff(mg), 1.0 + 3 * 0.05 * (eps - 1.0) / (eps + 2.0)) < 1e-14);
    // small spheres: the dipole form reduces to Maxwell Garnett
    EffMedSpec d = fig7();
    d.sphere = {0.05, {3.0, 0.5}};
    mg.sphere = d.sphere;
    CHECK(std::abs(eps_eff(d) - eps_eff(mg)) < 0.01 * std::abs(eps_eff(mg) - 1.0));
    CHECK_FALSE(fig7().validate());
    CHECK(fig7(1.0).validate() == (std::abs(eps_eff(fig7(1.0)) - 1.0) > 0.5));
    CHECK_THROWS_AS(fig7(-0.1).validate(), DomainError);
}

TEST_CASE("reduced amplitudes") {
    for (const auto& c : kBarCases) {
        INFO("l=" << c.l << " rho=" << c.rho);
        const Complex il = std::pow(Complex(0.0, -1.0), c.l);
        CHECK(rel_err((il * reduced_B(c.l, c.rho, Pole::electric)).real(), c.be) < 1e-11);
        CHECK(rel_err((il * reduced_B(c.l, c.rho, Pole::magnetic)).real(), c.bm) < 1e-10);
    }
    for (int l = 1; l <= 30; ++l)
        for (Pole p : {Pole::electric, Pole::magnetic}) {
            const Complex b = reduced_B(l, 6.0, p);
            const Complex r = std::pow(Complex(0.0, -1.0), l) * b;
            CHECK(std::abs(r.imag()) <= 1e-13 * std::abs(b));
        }
    // first order in eps - 1 of the Mie amplitudes
    const double d = 1e-6;
    for (int l = 1; l <= 5; ++l)
        for (Pole p : {Pole::electric, Pole::magnetic}) {
            const Complex fd = amplitude_B({6.0, {1.0 + d, 0.0}}, l, p) / d;
            CHECK(rel_err(fd, reduced_B(l, 6.0, p)) < 1e-5);
        }
    // small domains
    for (int l : {1, 2, 3}) {
        const double r = std::abs(reduced_B(l, 2e-3, Pole::electric) / reduced_B(l, 1e-3, Pole::electric));
        CHECK(r == doctest::Approx(std::pow(2.0, 2 * l + 1)).epsilon(1e-4));
    }
}

TEST_CASE("sum-rule collapses of the far-field forms") {
    for (double rho : {2.0, 6.0, 10.0}) {
        Complex s1 = 0.0, s2 = 0.0;
        for (int l = 1; l <= 80; ++l) {
            const Complex il = std::pow(Complex(0.0, 1.0), l);
            const Complex e = reduced_B(l, rho, Pole::electric), m = reduced_B(l, rho, Pole::magnetic);
            s1 += l * (l + 1.0) * il * (e - m);
            s2 += l * (l + 1.0) * std::conj(il) * (e + m);
        }
        INFO("rho=" << rho);
        CHECK(std::abs(s1 + 0.5 * (0.5 * std::sin(2 * rho) - rho * std::cos(2 * rho))) < 1e-8 * (1 + std::abs(s1)));
        CHECK(std::abs(s2 - 2.0 / 3.0 * rho * rho * rho) < 1e-8 * std::abs(s2));
    }
}

TEST_CASE("effective-medium correction functions") {
    const EffMedSpec s = fig7();
    // the uniform sphere at first order in eps_eff - 1
    const double f = 1e-9;
    const EffMedSpec u = fig7(f);
    for (double z : {6.5, 10.0, 25.0}) {
        const CorrectionPair one = F_single_scatterer({6.0, eps_eff(u)}, z, 0);
        const CorrectionPair eff = F_eff(u, z, 0, JKind::cold);
        CHECK(rel_err(eff.par, one.par / f) < 1e-5);
        CHECK(rel_err(eff.perp, one.perp / f) < 1e-5);
    }
    // per unit f
    CHECK(F_eff(fig7(0.01), 12.0, 0, JKind::cold).perp == F_eff(fig7(0.2), 12.0, 0, JKind::cold).perp);
    // hot kind only sees Re(B^e_1)
    EffMedSpec t = s;
    const CorrectionPair h1 = F_eff(t, 12.0, 0, JKind::hot);
    t.sphere.eps = {3.0, 0.3};
    const double scale = effective_dipole(t).real() / effective_dipole(s).real();
    const CorrectionPair h2 = F_eff(t, 12.0, 0, JKind::hot);
    CHECK(rel_err(h2.par, scale * h1.par) < 1e-12);
    CHECK(rel_err(h2.perp, scale * h1.perp) < 1e-12);
    // sign: -Re B^e_1 > 0 for absorbers, so the hot functions are positive
    CHECK(h1.par > 0.0);
    CHECK(h1.perp > 0.0);
    CHECK_THROWS_AS(F_eff(s, 6.0, 0, JKind::cold), DomainError);
}

TEST_CASE("effective-medium far field") {
    const EffMedSpec s = fig7();
    const double a = amplitude([&](double z) { return F_eff(s, z, 0, JKind::cold).perp; }, 200.0);
    const double b = amplitude([&](double z) { return far_F_eff_cold_perp(s, z); }, 200.0);
    CHECK(a / b == doctest::Approx(1.0).epsilon(0.01));
    CHECK(F_eff(s, 200.0, 0, JKind::hot).perp / far_F_eff_hot_perp(s, 200.0) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("comparison with the discrete scatterers") {
    AggregateSpec a;
    a.rho = 6.0;
    a.sphere = {0.5, {3.0, 0.1}};
    a.f = 0.05;
    const auto rows = effmed_vs_discrete(a, {30.0, 60.0});
    const double c1 = coeff_C(a.sphere, 1, Pole::electric);
    const double b1 = -amplitude_B(a.sphere, 1, Pole::electric).real();
    double sumC = 0.0;
    for (int l = 1; l <= 8; ++l) sumC += 0.5 * l * (l + 1.0) * (coeff_C(a.sphere, l, Pole::electric) + coeff_C(a.sphere, l, Pole::magnetic));
    CHECK(b1 / c1 == doctest::Approx(2.06).epsilon(0.02 / 2.06));
    // the dielectric ratio settles on -Re B^e_1 over the full C sum, not C^e_1 alone
    CHECK(rows[1].ratio_d_perp == doctest::Approx(b1 / sumC).epsilon(2e-3));
    CHECK(rows[1].ratio_d_perp < b1 / c1 - 0.1);
    CHECK(std::abs(rows[0].ratio_d_perp - rows[1].ratio_d_perp) < 0.01);
    // cold total: adequate in the far field
    for (const auto& r : rows) {
        CHECK(std::abs(r.ratio_c_perp - 1.0) < 0.1);
    }
    const IntrepEvaluator ev(a);
    const EffMedSpec em{a.rho, a.f, a.sphere, Prescription::dipole_amplitude};
    for (double z : {18.0, 30.0, 60.0}) {
        const double ae = amplitude([&](double x) { return F_eff(em, x, 0, JKind::cold).par; }, z);
        const double ad = amplitude([&](double x) { return ev.cold(x).par; }, z);
        INFO("zeta=" << z);
        CHECK(ae / ad == doctest::Approx(1.0).epsilon(0.1));
    }
    // near the surface the two part ways
    const auto near = effmed_vs_discrete(a, {6.52});
    CHECK(std::abs(near[0].ratio_c_par - 1.0) > 0.3);
    CHECK(std::abs(near[0].ratio_d_perp - 1.0) > 0.3);
}
