#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "scatdecay/aggregate.hpp"
#include "scatdecay/errors.hpp"
#include "test_util.hpp"

using namespace scatdecay;
using testutil::rel_err;

namespace {
#include "oracles/aggregate_values.inc"

AggregateSpec fig1_domain(Complex eps = {3.0, 0.5}) {
    AggregateSpec s;
    s.rho = 6.0;
    s.sphere = {0.5, eps};
    return s;
}
}  // namespace

TEST_CASE("ball integrals") {
    for (const auto& c : kBallCases) {
        INFO("l=" << c.l << " rho=" << c.rho);
        CHECK(rel_err(I_l_of_R(c.l, c.rho), c.value) < 1e-11);
    }
    for (int l : {0, 2, 7}) {
        const double r = I_l_of_R(l, 2e-3) / I_l_of_R(l, 1e-3);
        CHECK(rel_err(r, std::pow(2.0, 2 * l + 3)) < 1e-5);
    }
    for (int l : {0, 3, 10})
        for (double rho : {0.8, 4.0, 9.5}) {
            const double h = 1e-5;
            const double fd = (I_l_of_R(l, rho + h) - I_l_of_R(l, rho - h)) / (2 * h);
            const double j = sph_bessel_j(l, rho);
            CHECK(std::abs(fd - rho * rho * j * j) < 1e-8 * std::max(1.0, fd));
        }
    // deep in the tail only the scaled form survives
    CHECK(I_l_of_R(400, 6.0) == 0.0);
    CHECK(I_l_of_R_scaled(400, 6.0).log2_abs() < -3000.0);
}

TEST_CASE("coupling coefficients") {
    CHECK(c_coeff(2, 3, 6, 6.0) == 0.0);
    CHECK(c_coeff(4, 1, 2, 6.0) == 0.0);
    for (int l = 1; l <= 5; ++l)
        for (int lp = 1; lp <= 5; ++lp)
            for (int lpp = std::abs(l - lp); lpp <= l + lp; ++lpp)
                CHECK(rel_err(c_coeff(l, lp, lpp, 6.0),
                              c_coeff(lp, l, lpp, 6.0) * (2.0 * lp + 1.0) / (2.0 * l + 1.0), 1e-300) < 1e-12);
    // small-domain limit: 3 c_{l,l',l''} / rho^3 -> delta_{l l'} delta_{l'' 0}
    const double rho = 1e-3;
    for (int l = 1; l <= 4; ++l) {
        CHECK(std::abs(3.0 * c_coeff(l, l, 0, rho) / (rho * rho * rho) - 1.0) < 1e-6);
        CHECK(3.0 * c_coeff(l, l, 2, rho) / (rho * rho * rho) < 1e-5);
        CHECK(3.0 * c_coeff(l, l + 1, 1, rho) / (rho * rho * rho) < 1e-5);
    }
}

TEST_CASE("triple sums at the reference point") {
    const auto s = fig1_domain();
    SumDiagnostics d;
    const AggregateEvaluator ev(s);
    const auto v = ev.evaluate(10.0, &d);
    CHECK(d.converged);
    CHECK(d.last_shell < 1e-12);
    CHECK(rel_err(v.F_c_par, kColdAt10[0]) < 1e-9);
    CHECK(rel_err(v.F_c_perp, kColdAt10[1]) < 1e-9);
    CHECK(rel_err(v.F_d_par, kHotAt10[0]) < 1e-9);
    CHECK(rel_err(v.F_d_perp, kHotAt10[1]) < 1e-9);
    const auto c = F_cold_sum(s, 10.0, 0);
    const auto h = F_hot_sum(s, 10.0, 0);
    CHECK(rel_err(c.par, v.F_c_par) < 1e-12);
    CHECK(rel_err(h.perp, v.F_d_perp) < 1e-12);
}

TEST_CASE("vanishing scatterers") {
    auto s = fig1_domain({1.0, 0.0});
    const auto v = AggregateEvaluator(s).evaluate(8.0);
    CHECK(v.F_c_par == 0.0);
    CHECK(v.F_c_perp == 0.0);
    s = fig1_domain({3.0, 0.0});
    const auto w = AggregateEvaluator(s).evaluate(8.0);
    CHECK(w.F_d_par == 0.0);
    CHECK(w.F_d_perp == 0.0);
    CHECK(std::abs(w.F_c_perp) > 1e-4);
}

TEST_CASE("hot corrections are positive for absorbing spheres") {
    for (Complex eps : {Complex(3.0, 0.5), Complex(3.0, 0.1), Complex(3.0, 0.01)}) {
        const AggregateEvaluator ev(fig1_domain(eps));
        for (double z : {6.6, 7.0, 8.3, 10.0, 14.0, 21.0, 30.0}) {
            const auto h = ev.hot(z);
            INFO("eps=" << eps << " zeta=" << z);
            CHECK(h.par > 0.0);
            CHECK(h.perp > 0.0);
        }
    }
}

TEST_CASE("far-field orders") {
    const AggregateEvaluator ev(fig1_domain());
    double par_max = 0.0, perp_max = 0.0;
    for (double z : {40.0, 55.0, 80.0}) {
        const auto c = ev.cold(z);
        par_max = std::max(par_max, std::abs(c.par) * std::pow(z, 4));
        perp_max = std::max(perp_max, std::abs(c.perp) * z * z);
    }
    for (double z : {120.0, 160.0, 240.0}) {
        const auto c = ev.cold(z);
        CHECK(std::abs(c.par) * std::pow(z, 4) < 2.0 * par_max);
        CHECK(std::abs(c.perp) * z * z < 2.0 * perp_max);
    }
}

TEST_CASE("single scatterer") {
    const SphereSpec sp{0.5, {3.0, 0.5}};
    const auto s = F_single_scatterer(sp, 2.0, 12);
    CHECK(rel_err(s.par, kSingleAt2[0]) < 1e-10);
    CHECK(rel_err(s.perp, kSingleAt2[1]) < 1e-10);
    const auto a = F_single_scatterer(sp, 2.0, 0);
    CHECK(rel_err(a.par, s.par) < 1e-10);

    const auto vac = F_single_scatterer({0.5, {1.0, 0.0}}, 2.0, 0);
    CHECK(vac.par == 0.0);
    CHECK(vac.perp == 0.0);

    // shrinking domain at f = (q/rho)^3
    AggregateSpec tiny;
    tiny.rho = 1e-3;
    tiny.sphere = sp;
    const auto c = AggregateEvaluator(tiny).cold(2.0);
    const double f = std::pow(sp.q / tiny.rho, 3);
    CHECK(rel_err(f * c.par, s.par) < 1e-4);
    CHECK(rel_err(f * c.perp, s.perp) < 1e-4);

    // dipole-only expansion
    const auto d = F_single_scatterer(sp, 3.0, 1);
    const auto h = sph_hankel1(1, 3.0);
    const Complex ae = reduced_amplitude_scaled(sp, 1, Pole::electric).value();
    const Complex am = reduced_amplitude_scaled(sp, 1, Pole::magnetic).value();
    const Complex dth = 2.0 * h.h_l - 3.0 * h.h_lplus1;
    CHECK(rel_err(d.par, -1.5 * 4.0 * (ae * h.h_l * h.h_l).real() / 9.0) < 1e-13);
    CHECK(rel_err(d.perp, -0.75 * 2.0 * ((ae * dth * dth).real() / 9.0 + (am * h.h_l * h.h_l).real())) < 1e-13);
}

TEST_CASE("term stream structure") {
    using Key = std::tuple<int, int, int, int, int>;
    std::map<Key, int> plain, swapped;
    int n_terms = 0;
    double c_split = 0.0, c_all = 0.0;
    for_each_term(6.0, 5, 7, [&](const AggregateTerm& t) {
        ++n_terms;
        const int n = t.l + t.lp + t.lpp;
        CHECK(parity_delta(Parity::even, n) + parity_delta(Parity::odd, n) == 1);
        CHECK(t.slot1 != t.slot2);
        c_split += t.c * parity_delta(Parity::even, n) + t.c * parity_delta(Parity::odd, n);
        c_all += t.c;
        ++plain[{t.l, t.lp, t.lpp, static_cast<int>(t.slot1), static_cast<int>(t.slot2)}];
    });
    for_each_term(6.0, 5, 7, [&](const AggregateTerm& t) {
        ++swapped[{t.l, t.lp, t.lpp, static_cast<int>(t.slot1), static_cast<int>(t.slot2)}];
    }, true);
    CHECK(n_terms > 0);
    CHECK(plain == swapped);
    CHECK(c_split == doctest::Approx(c_all).epsilon(1e-14));
}

TEST_CASE("amplitude truncation settles") {
    const AggregateEvaluator base(fig1_domain());
    const double z = 6.9;
    std::vector<double> diffs;
    double prev = AggregateEvaluator(fig1_domain(), 8).cold(z).perp;
    for (int L = 18; L <= 58; L += 10) {
        const double cur = AggregateEvaluator(fig1_domain(), L).cold(z).perp;
        diffs.push_back(std::abs(cur - prev));
        prev = cur;
    }
    for (std::size_t i = 1; i < diffs.size(); ++i)
        if (diffs[i - 1] > 1e-14 * std::abs(prev)) CHECK(diffs[i] < diffs[i - 1]);
    CHECK(rel_err(prev, base.cold(z).perp) < 1e-9);
}

TEST_CASE("shell cap and domain errors") {
    const auto s = fig1_domain();
    CHECK_THROWS_AS(AggregateEvaluator(s, 0, 40).cold(6.6), ConvergenceError);
    CHECK_THROWS_AS(AggregateEvaluator(s).cold(6.4), DomainError);
    AggregateSpec bad = s;
    bad.f = 0.3;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.f = 0.1;
    CHECK(bad.validate());
    bad.f = 0.01;
    CHECK_FALSE(bad.validate());
    bad.rho = 0.4;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}
