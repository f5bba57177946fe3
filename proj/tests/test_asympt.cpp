#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include "scatdecay/asympt.hpp"
#include "scatdecay/errors.hpp"
#include "scatdecay/intrep.hpp"
#include "test_util.hpp"

using namespace scatdecay;
using testutil::rel_err;

namespace {
#include "oracles/asympt_values.inc"

AggregateSpec fig1(double rho = 6.0, Complex eps = {3.0, 0.5}) {
    AggregateSpec s;
    s.rho = rho;
    s.sphere = {0.5, eps};
    return s;
}

// largest |F| over one period centred at zeta
double amplitude(const std::function<double(double)>& F, double zeta) {
    double m = 0.0;
    for (int k = -32; k <= 32; ++k) m = std::max(m, std::abs(F(zeta + k * std::numbers::pi / 64)));
    return m;
}

std::vector<double> upward_crossings(const std::function<double(double)>& F, double a, double b, double h) {
    std::vector<double> out;
    double pz = a, pv = F(a);
    for (double z = a + h; z <= b; z += h) {
        const double v = F(z);
        if (pv < 0 && v >= 0) out.push_back(pz + h * pv / (pv - v));
        pz = z;
        pv = v;
    }
    return out;
}
}  // namespace

TEST_CASE("far-field cold assembly") {
    const AggregateSpec s = fig1();
    const IntrepEvaluator ev(s);
    for (double zeta : {200.0, 300.0}) {
        INFO("zeta=" << zeta);
        const double ap = amplitude([&](double z) { return ev.cold(z).par; }, zeta);
        const double aq = amplitude([&](double z) { return far_F_cold(s, z).par; }, zeta);
        const double bp = amplitude([&](double z) { return ev.cold(z).perp; }, zeta);
        const double bq = amplitude([&](double z) { return far_F_cold(s, z).perp; }, zeta);
        CHECK(ap / aq == doctest::Approx(1.0).epsilon(0.01));
        CHECK(bp / bq == doctest::Approx(1.0).epsilon(0.01));
    }
    // pointwise ratios carry the O(1/zeta) phase drift
    const AsymptoteReport r = make_report(Regime::far_cold, 200.0, ev.cold(200.0).perp, far_F_cold(s, 200.0).perp);
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::isnan(make_report(Regime::far_cold, 1.0, 1.0, 0.0).ratio));

    // same-direction zeros a period apart
    const auto up = upward_crossings([&](double z) { return far_F_cold(s, z).perp; }, 100.0, 130.0, 0.05);
    REQUIRE(up.size() >= 8);
    for (std::size_t i = 1; i < up.size(); ++i) CHECK(up[i] - up[i - 1] == doctest::Approx(std::numbers::pi).epsilon(1e-3));
    CHECK_THROWS_AS(far_F_cold(s, 5.0), DomainError);
}

TEST_CASE("special radii") {
    for (int n = 1; n <= 3; ++n) {
        const double r = special_radii(n);
        CHECK(std::abs(r - kSpecialRadii[n - 1]) < 1e-12);
        CHECK(std::abs(std::tan(2 * r) - 2 * r) < 1e-10 * (1 + 2 * r));
    }
    CHECK(special_radii(1) == doctest::Approx(2.2467).epsilon(1e-4));
    CHECK_THROWS_AS(special_radii(0), DomainError);
    // the 1/zeta^2 transverse asymptote switches off there
    const double off = far_F_cold(fig1(special_radii(1)), 200.0).perp;
    const double on = amplitude([](double z) { return far_F_cold(fig1(2.0), z).perp; }, 200.0);
    CHECK(std::abs(off) < 1e-12 * on);
}

TEST_CASE("transverse modulation factorises") {
    // perp(L=6)/perp(L=1) does not depend on rho
    for (double zeta : {150.0, 151.3}) {
        const double r1 = far_F_cold(fig1(2.0), zeta, 6).perp / far_F_cold(fig1(2.0), zeta, 1).perp;
        const double r2 = far_F_cold(fig1(6.0), zeta, 6).perp / far_F_cold(fig1(6.0), zeta, 1).perp;
        const double r3 = far_F_cold(fig1(10.0), zeta, 6).perp / far_F_cold(fig1(10.0), zeta, 1).perp;
        CHECK(rel_err(r2, r1) < 1e-12);
        CHECK(rel_err(r3, r1) < 1e-12);
    }
}

TEST_CASE("far-field hot assembly") {
    const AggregateSpec s = fig1();
    const IntrepEvaluator ev(s);
    const CorrectionPair e = ev.hot(200.0), a = far_F_hot(s, 200.0);
    CHECK(e.par / a.par == doctest::Approx(1.0).epsilon(0.01));
    CHECK(e.perp / a.perp == doctest::Approx(1.0).epsilon(0.01));
    double prev_par = far_F_hot(s, 20.0).par, prev_perp = far_F_hot(s, 20.0).perp;
    for (double z = 20.5; z < 60.0; z += 0.5) {
        const CorrectionPair v = far_F_hot(s, z);
        CHECK(v.par < prev_par);
        CHECK(v.perp < prev_perp);
        prev_par = v.par;
        prev_perp = v.perp;
    }
    const CorrectionPair lossless = far_F_hot(fig1(6.0, {3.0, 0.0}), 100.0);
    CHECK(lossless.par == 0.0);
    CHECK(lossless.perp == 0.0);
}

TEST_CASE("envelope slopes") {
    const AggregateSpec s = fig1();
    const IntrepEvaluator ev(s);
    std::map<double, CorrectionValue> cache;
    auto at = [&](double z) -> const CorrectionValue& {
        auto it = cache.find(z);
        if (it == cache.end()) it = cache.emplace(z, ev.evaluate(z)).first;
        return it->second;
    };
    const double lo = 30 * s.rho, hi = 300 * s.rho;
    CHECK(envelope_slope([&](double z) { return at(z).F_c_par; }, lo, hi).slope == doctest::Approx(-4.0).epsilon(0.05 / 4));
    CHECK(envelope_slope([&](double z) { return at(z).F_c_perp; }, lo, hi).slope == doctest::Approx(-2.0).epsilon(0.05 / 2));
    CHECK(envelope_slope([&](double z) { return at(z).F_d_par; }, lo, hi).slope == doctest::Approx(-4.0).epsilon(0.05 / 4));
    CHECK(envelope_slope([&](double z) { return at(z).F_d_perp; }, lo, hi).slope == doctest::Approx(-2.0).epsilon(0.05 / 2));
    // pure power law recovers its exponent
    CHECK(envelope_slope([](double z) { return std::cos(2 * z) / (z * z * z); }, 10.0, 500.0).slope ==
          doctest::Approx(-3.0).epsilon(1e-3));
    CHECK_THROWS_AS(envelope_slope([](double z) { return z; }, 10.0, 11.0), DomainError);
}

TEST_CASE("near-surface divergence") {
    const AggregateSpec s = fig1();
    const double edge = s.rho + s.sphere.q;
    CHECK(near_F_par(s, edge + 0.1) == doctest::Approx(2.0 * near_F_par(s, edge + 0.2)).epsilon(1e-14));
    CHECK(near_F_perp(s, edge + 0.1) == doctest::Approx(0.5 * near_F_par(s, edge + 0.1)).epsilon(1e-14));
    CHECK(near_F_par(fig1(6.0, {3.0, 0.0}), edge + 0.1) == 0.0);
    CHECK_THROWS_AS(near_F_par(s, edge), DomainError);

    const IntrepEvaluator ev(s, 300);
    // subdominant logs bias the ratio at moderate closeness
    const double r05 = ev.cold(edge + 0.05).par / near_F_par(s, edge + 0.05);
    CHECK(r05 > 1.6);
    CHECK(r05 < 1.8);
    // and it closes in on 1 as the gap shrinks
    double prev = 10.0;
    for (auto [gap, L] : {std::pair{0.02, 300}, {0.01, 600}, {0.005, 1500}}) {
        const double r = IntrepEvaluator(s, L).cold(edge + gap).par / near_F_par(s, edge + gap);
        INFO("gap=" << gap);
        CHECK(r < prev);
        CHECK(r > 1.0);
        prev = r;
    }
    CHECK(prev < 1.1);
}

TEST_CASE("near-surface equivalences") {
    const AggregateSpec s = fig1();
    const double edge = s.rho + s.sphere.q;
    const NearRatios far = near_equivalences(s, edge + 0.5);
    CHECK(std::abs(far.par_perp - 2.0) > 1.0);
    CHECK(std::abs(far.dc_perp - 1.0) > 1.0);

    const NearRatios r02 = near_equivalences(s, edge + 0.02, 300);
    const NearRatios r005 = near_equivalences(s, edge + 0.005, 1500);
    // approach towards (1, 1, 2)
    CHECK(std::abs(r005.dc_par - 1.0) < std::abs(r02.dc_par - 1.0));
    CHECK(std::abs(r005.dc_perp - 1.0) < std::abs(r02.dc_perp - 1.0));
    CHECK(std::abs(r005.par_perp - 2.0) < std::abs(r02.par_perp - 2.0));
    CHECK(r005.dc_par == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r005.dc_perp == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r005.par_perp == doctest::Approx(2.0).epsilon(0.1));
    // radiative parts stay finite
    const double fr_far = std::abs(far.exact.F_c_par - far.exact.F_d_par);
    CHECK(std::abs(r005.exact.F_c_par - r005.exact.F_d_par) < 10 * fr_far);
    CHECK(std::abs(r005.exact.F_c_perp - r005.exact.F_d_perp) <
          10 * std::abs(far.exact.F_c_perp - far.exact.F_d_perp));
}

TEST_CASE("large-order Hankel form") {
    for (const auto& c : kLargeLHankel) {
        const ScaledComplex a = large_l_hankel(c.l, c.t);
        const auto e = sph_hankel1_pair_scaled(c.l, c.t);
        const double ratio = std::exp2(a.log2_abs() - std::log2(std::abs(e.h_l)) - static_cast<double>(e.exponent));
        INFO("l=" << c.l << " t=" << c.t);
        CHECK(rel_err(ratio, c.ratio) < 1e-10);
        // leading correction is 1 + t^2/(4l)
        CHECK(std::abs(1.0 / ratio - 1.0) < 0.4 * c.t * c.t / c.l + 0.1 / c.l);
    }
    const ScaledComplex h = large_l_hankel(40, 2.0);
    CHECK(h.mantissa().real() == 0.0);
    CHECK(h.mantissa().imag() < 0.0);
    for (int l : {10, 60, 300}) {
        const double d = large_l_hankel_log(l, 2.5) - large_l_hankel_log(l, 5.0);
        CHECK(d == doctest::Approx((l + 1) * std::numbers::ln2).epsilon(1e-13));
    }
    for (int l = 10; l <= 500; l += 49)
        for (double t : {0.1, 1.0, 50.0}) {
            const ScaledComplex v = large_l_hankel(l, t);
            CHECK(std::isfinite(v.log2_abs()));
            CHECK(std::isfinite(std::abs(v.mantissa())));
        }
}
