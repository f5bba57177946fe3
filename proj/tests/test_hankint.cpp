#include <doctest.h>

#include <cmath>
#include <random>

#include "scatdecay/errors.hpp"
#include "scatdecay/hankint.hpp"
#include "test_util.hpp"

using namespace scatdecay;
using testutil::rel_err;

namespace {
#include "oracles/hankint_values.inc"

Complex integrand(int l1, int l2, int n, double z, bool conj) {
    const Complex a = sph_hankel1(l1, z).h_l;
    const Complex b = sph_hankel1(l2, z).h_l;
    return std::pow(z, -n) * a * (conj ? std::conj(b) : b);
}

Complex central_diff(int l1, int l2, int n, double z, bool conj, double step = 1e-5) {
    return (antiderivative(l1, l2, n, z + step, conj).value - antiderivative(l1, l2, n, z - step, conj).value) /
           (2.0 * step);
}

}  // namespace

TEST_CASE("closed forms quoted in the text") {
    for (double z : {0.7, 2.0, 5.5}) {
        const Complex e2 = std::exp(Complex(0.0, 2.0 * z));
        const Complex E = exp_integral_E1_neg2iz(z);
        CHECK(rel_err(I_diag(0, 0, z), 2.0 * Complex(0, 1) * E + e2 / z) < 1e-12);
        CHECK(rel_err(I_diag(1, -3, z), E + (Complex(0, -0.5 * z) + 1.25) * e2) < 1e-12);
    }
}

TEST_CASE("pinned basic integrals") {
    CHECK(rel_err(I_diag(3, -2, 2.5), kIdiag_3_m2_2p5) < 1e-11);
    CHECK(rel_err(I_offdiag(0, 0, 1.0), kIoff_0_0_1) < 1e-12);
    CHECK(rel_err(Iprime_diag(4, 1, 3.0), kIprime_4_1_3.real()) < 1e-11);
    CHECK(rel_err(Iprime_offdiag(1, 0, 2.0), kIprimeOff_1_0_2) < 1e-12);
    CHECK(rel_err(definite(2, 2, 1, 4.0, 9.0, false), kDef_2_2_1_4_9) < 1e-11);
    CHECK(rel_err(definite_quadrature(2, 2, 1, 4.0, 9.0, false), kDef_2_2_1_4_9) < 1e-11);
}

TEST_CASE("antiderivatives differentiate back to the integrand") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> pick_l(0, 12);
    std::uniform_real_distribution<double> pick_z(0.8, 25.0);
    for (bool conj : {false, true}) {
        for (int trial = 0; trial < 20; ++trial) {
            const int l = pick_l(rng);
            const double z = pick_z(rng);
            for (int n : kDiagN) {
                INFO("diag conj=" << conj << " l=" << l << " n=" << n << " z=" << z);
                const Complex want = integrand(l, l, n, z, conj);
                CHECK(rel_err(central_diff(l, l, n, z, conj), want, 1e-3) < 1e-7);
            }
            for (int n : kOffdiagN) {
                INFO("offdiag conj=" << conj << " l=" << l << " n=" << n << " z=" << z);
                const Complex want = integrand(l, l + 1, n, z, conj);
                CHECK(rel_err(central_diff(l, l + 1, n, z, conj), want, 1e-3) < 1e-7);
            }
        }
    }
    CHECK(rel_err(central_diff(2, 3, -1, 3.0, false), integrand(2, 3, -1, 3.0, false)) < 1e-8);
    CHECK(rel_err(central_diff(0, 0, 0, 1.3, true), Complex(std::norm(sph_hankel1(0, 1.3).h_l))) < 1e-9);
}

TEST_CASE("conjugated diagonal family is real") {
    for (int l : {0, 1, 2, 5, 20})
        for (int n : kDiagN) {
            const auto v = antiderivative(l, l, n, 3.7, true).value;
            CHECK(v.imag() == 0.0);
        }
}

TEST_CASE("closed forms agree with quadrature") {
    // every order up to 40 and both families on [z, z + 1]
    for (double z : {1.0, 5.0, 20.0})
        for (int l = 0; l <= 40; ++l)
            for (bool conj : {false, true}) {
                for (int n : kDiagN) {
                    INFO("conj=" << conj << " l=" << l << " n=" << n << " z=" << z);
                    const Complex q = definite_quadrature(l, l, n, z, z + 1.0, conj, 1e-13);
                    CHECK(rel_err(definite(l, l, n, z, z + 1.0, conj), q) < 1e-9);
                }
                for (int n : kOffdiagN) {
                    INFO("conj=" << conj << " l=" << l << " n=" << n << " z=" << z << " off");
                    const Complex q = definite_quadrature(l, l + 1, n, z, z + 1.0, conj, 1e-13);
                    CHECK(rel_err(definite(l, l + 1, n, z, z + 1.0, conj), q) < 1e-9);
                }
            }
    // random wide intervals
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> pick_l(0, 40);
    std::uniform_real_distribution<double> pick_z(0.5, 60.0);
    for (int trial = 0; trial < 12; ++trial) {
        const int l = pick_l(rng);
        double a = pick_z(rng), b = pick_z(rng);
        if (a > b) std::swap(a, b);
        for (int n : kDiagN) {
            INFO("l=" << l << " n=" << n << " [" << a << "," << b << "]");
            CHECK(rel_err(definite(l, l, n, a, b, true), definite_quadrature(l, l, n, a, b, true, 1e-13)) < 1e-9);
        }
    }
}

TEST_CASE("two routes to the n=-2 off-diagonal integral") {
    const double a = 2.0, b = 7.5;
    CHECK(rel_err(definite(3, 4, -2, a, b, false), definite_quadrature(3, 4, -2, a, b, false)) < 1e-10);
}

TEST_CASE("closed forms obey the order recursion") {
    for (int l = 0; l < 8; ++l) {
        CHECK(rel_err(recursion_B2_step(l, 0, 2.0, I_diag(l, 0, 2.0)), I_diag(l + 1, 0, 2.0)) < 1e-11);
        CHECK(rel_err(recursion_B2_step(l, -2, 2.0, I_diag(l, -2, 2.0)), I_diag(l + 1, -2, 2.0)) < 1e-11);
    }
    CHECK_THROWS_AS(recursion_B2_step(1, -5, 2.0, Complex(1.0)), PoleError);
}

TEST_CASE("definite integral bookkeeping") {
    CHECK(definite(3, 3, -1, 2.0, 2.0, false) == Complex(0.0));
    const Complex whole = definite(5, 6, 0, 1.5, 9.0, true);
    const Complex parts = definite(5, 6, 0, 1.5, 4.0, true) + definite(5, 6, 0, 4.0, 9.0, true);
    CHECK(rel_err(parts, whole) < 1e-11);
    CHECK_THROWS_AS(definite(1, 3, 0, 1.0, 2.0, false), UnsupportedError);
    CHECK_THROWS_AS(I_diag(2, 4, 1.0), UnsupportedError);
    CHECK_THROWS_AS(I_offdiag(2, 1, 1.0), UnsupportedError);
    CHECK_THROWS_AS(definite(1, 1, 0, 2.0, 1.0, false), DomainError);
}

TEST_CASE("batched basic integrals match single evaluations") {
    const auto set = basic_integrals(6, 4.2, false);
    for (int n : kDiagN) CHECK(set.diag[static_cast<std::size_t>(diag_index(n))] == I_diag(6, n, 4.2));
    for (int n : kOffdiagN) CHECK(set.offdiag[static_cast<std::size_t>(offdiag_index(n))] == I_offdiag(6, n, 4.2));
    const auto cs = basic_integrals(6, 4.2, true);
    for (int n : kOffdiagN)
        CHECK(cs.offdiag[static_cast<std::size_t>(offdiag_index(n))] == Iprime_offdiag(6, n, 4.2));
    CHECK(set.magnitude > 0.0);
}

TEST_CASE("finite sum rules") {
    CHECK(rel_err(sumrule_check(SumRule::C1, 5, 0, 2.0).lhs, sumrule_check(SumRule::C1, 5, 0, 2.0).rhs) < 1e-11);
    for (double z : {0.5, 2.0, 10.0})
        for (int l = 0; l <= 60; ++l) {
            INFO("z=" << z << " l=" << l);
            auto close = [](SumRuleSides s) { return std::abs(s.lhs - s.rhs) <= 1e-11 * std::abs(s.rhs); };
            CHECK(close(sumrule_check(SumRule::C1, l, 0, z)));
            CHECK(close(sumrule_check(SumRule::C3, l, 0, z)));
            for (int p : {0, 1, 2, 3}) {
                INFO("p=" << p);
                CHECK(close(sumrule_check(SumRule::C2, l, p, z)));
                CHECK(close(sumrule_check(SumRule::C6, l, p, z)));
                if (l >= p) CHECK(close(sumrule_check(SumRule::C4, l, p, z)));
                // l = p leaves both sides empty
                if (p >= 1 && l > p) CHECK(close(sumrule_check(SumRule::C5, l, p, z)));
            }
        }
    CHECK(sumrule_check(SumRule::C5, 2, 2, 1.0).lhs == Complex(0.0));
    CHECK_THROWS_AS(sumrule_check(SumRule::C4, 1, 2, 1.0), DomainError);
    CHECK_THROWS_AS(sumrule_check(SumRule::C5, 2, 0, 1.0), DomainError);
}

TEST_CASE("infinite sum rules") {
    const auto c7 = sumrule_check(SumRule::C7, 0, 1, 3.0);
    CHECK(std::abs(c7.rhs - 6.0) < 1e-12);
    CHECK(std::abs(c7.lhs - c7.rhs) < 1e-8);
    const auto c10 = sumrule_check(SumRule::C10, 0, 0, 1.7);
    CHECK(std::abs(c10.rhs - sph_bessel_j(0, 3.4)) < 1e-14);
    CHECK(std::abs(c10.lhs - c10.rhs) < 1e-12);
    for (double z : {0.4, 3.0, 17.0}) {
        INFO("z=" << z);
        for (auto r : {SumRule::C8, SumRule::C9})
            CHECK(std::abs(sumrule_check(r, 0, 0, z).lhs - sumrule_check(r, 0, 0, z).rhs) < 1e-10 * (1.0 + z * z));
        for (int p : {0, 1, 3}) {
            const auto s7 = sumrule_check(SumRule::C7, 0, p, z);
            CHECK(rel_err(s7.lhs, s7.rhs) < 1e-10);
            const auto s10 = sumrule_check(SumRule::C10, 0, p, z);
            CHECK(std::abs(s10.lhs - s10.rhs) < 1e-10 * std::max(1.0, std::abs(s7.rhs)));
        }
    }
}
