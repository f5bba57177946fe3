#include "checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "config.hpp"
#include "scatdecay/asympt.hpp"
#include "scatdecay/hankint.hpp"
#include "scatdecay/intrep.hpp"
#include "scatdecay/mie.hpp"

namespace scatdecay::app {

namespace {

struct Worst {
    double v = 0.0;
    std::string at;
    bool nonfinite = false;

    void see(double d, const std::string& where) {
        if (!std::isfinite(d)) {
            if (!nonfinite) at = where + " (non-finite)";
            nonfinite = true;
            return;
        }
        if (d > v && !nonfinite) {
            v = d;
            at = where;
        }
    }
};

CheckResult finish(const std::string& id, const Worst& w, double tol) {
    return {id, !w.nonfinite && w.v <= tol, w.v, tol, w.at, 0.0};
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

std::string where(std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream o;
    bool first = true;
    for (const auto& [k, v] : kv) {
        o << (first ? "" : " ") << k << '=' << v;
        first = false;
    }
    return o.str();
}

AggregateSpec fig1(double rho = 6.0) {
    AggregateSpec s;
    s.rho = rho;
    s.sphere = {0.5, {3.0, 0.5}};
    return s;
}

}  // namespace

CheckResult check_wronskian(int lmax) {
    Worst w;
    for (Complex eps : {Complex(3.0, 0.5), Complex(3.0, 0.01), Complex(10.0, 2.0)})
        for (int l = 1; l <= lmax; ++l) {
            const auto v = verify_wronskian_identities({0.5, eps}, l);
            const std::string at = where({{"l", l}, {"eps_re", eps.real()}, {"eps_im", eps.imag()}});
            w.see(std::abs(v.lhs_m - v.rhs_m) / std::abs(v.rhs_m), at + " magnetic");
            w.see(std::abs(v.lhs_e - v.rhs_e) / std::abs(v.rhs_e), at + " electric");
        }
    return finish("A15-A16", w, 1e-10);
}

CheckResult check_finite_sumrules(const std::vector<double>& zs, int lmax, double tol) {
    Worst w;
    for (double z : zs)
        for (int l = 0; l <= lmax; ++l)
            for (int p = 0; p <= 3; ++p)
                for (int r = 0; r < 6; ++r) {
                    const auto rule = static_cast<SumRule>(r);
                    if ((rule == SumRule::C1 || rule == SumRule::C3) && p > 0) continue;
                    if (rule == SumRule::C4 && l < p) continue;
                    if (rule == SumRule::C5 && (p < 1 || l <= p)) continue;
                    const auto s = sumrule_check(rule, l, p, z);
                    w.see(rel(s.lhs, s.rhs), where({{"C", r + 1.0}, {"l", l}, {"p", p}, {"z", z}}));
                }
    return finish("C1-C6", w, tol);
}

CheckResult check_infinite_sumrules(const std::vector<double>& zs, double tol) {
    Worst w;
    for (double z : zs)
        for (int p = 0; p <= 3; ++p)
            for (auto rule : {SumRule::C7, SumRule::C8, SumRule::C9, SumRule::C10}) {
                if ((rule == SumRule::C8 || rule == SumRule::C9) && p > 0) continue;
                const auto s = sumrule_check(rule, 0, p, z);
                w.see(std::abs(s.lhs - s.rhs) / std::max(1.0, std::abs(s.rhs)),
                      where({{"C", 7.0 + static_cast<int>(rule) - static_cast<int>(SumRule::C7)}, {"p", p}, {"z", z}}));
            }
    return finish("C7-C10", w, tol);
}

CheckResult check_closed_vs_quadrature(const std::vector<double>& zs, int lmax, double tol) {
    Worst w;
    for (double z : zs)
        for (int l = 0; l <= lmax; ++l)
            for (bool conj : {false, true}) {
                for (int n : kDiagN)
                    w.see(rel(definite(l, l, n, z, z + 1.0, conj), definite_quadrature(l, l, n, z, z + 1.0, conj, 1e-13)),
                          where({{"l", l}, {"n", n}, {"z", z}, {"conj", conj}}));
                for (int n : kOffdiagN)
                    w.see(rel(definite(l, l + 1, n, z, z + 1.0, conj),
                              definite_quadrature(l, l + 1, n, z, z + 1.0, conj, 1e-13)),
                          where({{"l", l}, {"off n", n}, {"z", z}, {"conj", conj}}));
            }
    return finish("B-closed", w, tol);
}

CheckResult check_dual_path(const std::vector<int>& ls) {
    Worst w;
    for (int l : ls)
        for (double rho : {2.0, 6.0, 20.0})
            for (double ratio : {1.1, 2.0, 5.0})
                for (JKind kind : {JKind::cold, JKind::hot}) {
                    const double z = ratio * rho;
                    const auto a = J_closed(l, z, rho, kind);
                    const auto b = J_quadrature(l, z, rho, kind);
                    const double s = std::ldexp(1.0, static_cast<int>(a.exponent - b.exponent));
                    const Complex x[4] = {a.Je_par, a.Jm_par, a.Je_perp, a.Jm_perp};
                    const Complex y[4] = {b.Je_par, b.Jm_par, b.Je_perp, b.Jm_perp};
                    double big = 0.0;
                    for (const auto& v : y) big = std::max(big, std::abs(v));
                    for (int k = 0; k < 4; ++k)
                        w.see(std::abs(x[k] * s - y[k]) / big,
                              where({{"l", l}, {"rho", rho}, {"zeta", z}, {"hot", kind == JKind::hot}}));
                }
    return finish("dual-path", w, 1e-9);
}

CheckResult check_endpoints() {
    Worst w;
    for (double rho : {2.0, 6.0, 20.0})
        for (double z : {1.1 * rho, 2.0 * rho, 5.0 * rho})
            for (double t : {z - rho, z + rho}) {
                const std::string at = where({{"rho", rho}, {"zeta", z}, {"t", t}});
                w.see(std::abs(g1(t, z, rho)) / rho, at + " g1");
                w.see(std::abs(g2(t, z, rho)) / rho, at + " g2");
            }
    // the integrals vanish with the domain
    for (int l : {1, 4}) {
        const auto j = J_cold(l, 5.0, 1e-6);
        const double m = std::ldexp(std::abs(j.Je_perp), static_cast<int>(j.exponent));
        w.see(m, where({{"l", l}, {"rho", 1e-6}}));
    }
    return finish("endpoint-vanishing", w, 1e-12);
}

CheckResult check_cross_representation(const std::vector<double>& zs, bool flip) {
    const AggregateSpec s = fig1();
    const AggregateEvaluator sum(s);
    const double q3 = s.sphere.q * s.sphere.q * s.sphere.q;
    const double sign = flip ? -1.0 : 1.0;
    Worst w;
    for (double z : zs) {
        const int L = sum.amplitude_lmax(z);
        const MultipoleTable tab(s.sphere, L);
        ScaledComplex par, perp;
        for (int l = 1; l <= L; ++l) {
            const auto j = J_cold(l, z, s.rho);
            auto sc = [&](Complex v) { return ScaledComplex(v, j.exponent); };
            const ScaledComplex ae = tab.reduced(l, Pole::electric) * sign, am = tab.reduced(l, Pole::magnetic) * sign;
            const double ll = l * (l + 1.0);
            par += ll * (ae * sc(j.Je_par) + am * sc(j.Jm_par));
            perp += ll * (ae * sc(j.Je_perp) + am * sc(j.Jm_perp));
        }
        const double fp = -9.0 / (8 * q3) * par.value().real(), fq = -9.0 / (16 * q3) * perp.value().real();
        const CorrectionPair ref = sum.cold(z);
        w.see(std::abs(fp - ref.par) / std::max(std::abs(ref.par), 1e-3), where({{"zeta", z}, {"par", 1}}));
        w.see(std::abs(fq - ref.perp) / std::max(std::abs(ref.perp), 1e-3), where({{"zeta", z}, {"perp", 1}}));
    }
    return finish("cross-representation", w, 1e-6);
}

CheckResult check_slopes(double zmin, double zmax, double tol) {
    const AggregateSpec s = fig1();
    const IntrepEvaluator ev(s);
    std::map<double, CorrectionValue> cache;
    auto at = [&](double z) -> const CorrectionValue& {
        auto it = cache.find(z);
        if (it == cache.end()) it = cache.emplace(z, ev.evaluate(z)).first;
        return it->second;
    };
    Worst w;
    const std::pair<const char*, std::function<double(const CorrectionValue&)>> ch[4] = {
        {"F_c_par", [](const CorrectionValue& v) { return v.F_c_par; }},
        {"F_c_perp", [](const CorrectionValue& v) { return v.F_c_perp; }},
        {"F_d_par", [](const CorrectionValue& v) { return v.F_d_par; }},
        {"F_d_perp", [](const CorrectionValue& v) { return v.F_d_perp; }}};
    const double expect[4] = {-4.0, -2.0, -4.0, -2.0};
    for (int k = 0; k < 4; ++k) {
        const auto fit = envelope_slope([&](double z) { return ch[k].second(at(z)); }, zmin, zmax);
        w.see(std::abs(fit.slope - expect[k]), std::string(ch[k].first) + " slope=" + fmt(fit.slope));
    }
    return finish("slopes", w, tol);
}

std::vector<CheckResult> run_selfcheck(Level level, bool flip) {
    using clock = std::chrono::steady_clock;
    const bool full = level == Level::full;
    std::vector<std::pair<std::string, std::function<CheckResult()>>> suite;
    suite.emplace_back("A15-A16", [] { return check_wronskian(); });
    suite.emplace_back("C1-C6", [&] {
        return full ? check_finite_sumrules({0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) : check_finite_sumrules({0.5, 2.0, 10.0});
    });
    suite.emplace_back("C7-C10", [] { return check_infinite_sumrules({0.5, 2.0, 10.0, 20.0}); });
    suite.emplace_back("B-closed", [&] {
        return check_closed_vs_quadrature({1.0, 5.0, 20.0}, full ? 40 : 12);
    });
    suite.emplace_back("dual-path", [&] {
        return full ? check_dual_path({1, 2, 5, 9, 14, 20, 25, 30}) : check_dual_path({1, 5, 20});
    });
    suite.emplace_back("endpoint-vanishing", [] { return check_endpoints(); });
    suite.emplace_back("cross-representation", [&] {
        return full ? check_cross_representation({6.6, 7.0, 8.0, 10.0, 12.5, 18.0, 25.0, 30.0}, flip)
                    : check_cross_representation({6.6, 9.0, 20.0}, flip);
    });
    if (full) suite.emplace_back("slopes", [] { return check_slopes(); });

    std::vector<CheckResult> out;
    for (auto& [id, fn] : suite) {
        const auto t0 = clock::now();
        CheckResult r;
        try {
            r = fn();
        } catch (const std::exception& e) {
            r = {id, false, 0.0, 0.0, std::string("threw: ") + e.what(), 0.0};
        }
        r.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        out.push_back(r);
    }
    return out;
}

std::string format_check(const CheckResult& r) {
    std::ostringstream o;
    o << (r.pass ? "PASS " : "FAIL ") << r.id << " worst=" << fmt(r.worst) << " tol=" << fmt(r.tol) << " ["
      << r.detail << "] " << fmt(r.seconds) << "s";
    return o.str();
}

}  // namespace scatdecay::app
