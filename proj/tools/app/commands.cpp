#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "scatdecay/errors.hpp"

namespace scatdecay::app {

namespace {

const char* kChannel[4] = {"F_c_par", "F_c_perp", "F_d_par", "F_d_perp"};

std::array<double, 4> channels(const CorrectionValue& v) { return {v.F_c_par, v.F_c_perp, v.F_d_par, v.F_d_perp}; }

}  // namespace

std::vector<double> zeta_grid(const RunConfig& c) {
    std::vector<double> g(static_cast<std::size_t>(c.points));
    const double a = c.zeta_lo(), b = c.zeta_max;
    for (int i = 0; i < c.points; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (c.points - 1);
    g.back() = b;
    return g;
}

std::vector<CurveRow> run_curve(const RunConfig& c) {
    c.validate();
    const AggregateSpec spec = c.aggregate();
    const DipoleWeights w;
    const auto grid = zeta_grid(c);
    std::vector<CorrectionValue> F;
    if (c.representation == Representation::sum) {
        const AggregateEvaluator ev(spec, c.lmax);
        F = parallel_map(grid, [&](double z) { return ev.evaluate(z); });
    } else {
        const IntrepEvaluator ev(spec, c.lmax, c.method);
        F = parallel_map(grid, [&](double z) { return ev.evaluate(z); });
    }
    std::vector<CurveRow> rows(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) rows[i] = {F[i], rates(spec, w, F[i])};
    return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
    std::ostringstream o;
    o << "zeta,F_c_par,F_c_perp,F_d_par,F_d_perp,F_r_par,F_r_perp,F_tot_par,F_tot_perp,gamma_ratio,gamma_abs_ratio\n";
    for (const auto& r : rows) {
        const auto& v = r.F;
        const auto& t = r.rate;
        o << fmt(v.zeta) << ',' << fmt(v.F_c_par) << ',' << fmt(v.F_c_perp) << ',' << fmt(v.F_d_par) << ','
          << fmt(v.F_d_perp) << ',' << fmt(t.F_r_par) << ',' << fmt(t.F_r_perp) << ',' << fmt(t.F_total_par) << ','
          << fmt(t.F_total_perp) << ',' << fmt(t.gamma_over_gamma0) << ',' << fmt(t.gamma_abs_over_gamma0) << '\n';
    }
    return o.str();
}

int CompareReport::worst_channel() const {
    int k = 0;
    for (int i = 1; i < 4; ++i)
        if (channel[static_cast<std::size_t>(i)].max_rel > channel[static_cast<std::size_t>(k)].max_rel) k = i;
    return k;
}

CompareReport run_compare(const RunConfig& c) {
    c.validate();
    const AggregateSpec spec = c.aggregate();
    const auto grid = zeta_grid(c);
    const AggregateEvaluator sum(spec, c.lmax);
    const IntrepEvaluator integral(spec, 0, c.method);
    const auto pairs = parallel_map(grid, [&](double z) { return std::pair{sum.evaluate(z), integral.evaluate(z)}; });
    CompareReport r;
    r.points = static_cast<int>(grid.size());
    for (const auto& [s, i] : pairs) {
        const auto a = channels(s), b = channels(i);
        for (std::size_t k = 0; k < 4; ++k) {
            const double d = std::abs(a[k] - b[k]) / std::max(std::abs(b[k]), kCompareFloor);
            if (!(d <= r.channel[k].max_rel)) r.channel[k] = {d, s.zeta, a[k], b[k]};
        }
    }
    return r;
}

std::string format_report(const CompareReport& r) {
    std::ostringstream o;
    o << "points: " << r.points << '\n';
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& d = r.channel[k];
        o << kChannel[k] << ": max_rel=" << fmt(d.max_rel) << " at zeta=" << fmt(d.zeta) << " (sum " << fmt(d.sum)
          << ", integral " << fmt(d.integral) << ")\n";
    }
    o << "worst: " << kChannel[r.worst_channel()] << ' ' << fmt(r.worst()) << (r.ok() ? " < " : " >= ")
      << fmt(kCompareTol) << '\n';
    return o.str();
}

std::vector<EffMedRow> run_effmed(const RunConfig& c) {
    c.validate();
    const AggregateSpec spec = c.aggregate();
    const auto grid = zeta_grid(c);
    return parallel_map(grid, [&](double z) { return effmed_vs_discrete(spec, {z}, Prescription::dipole_amplitude, c.lmax)[0]; });
}

std::string effmed_csv(const RunConfig& c, const std::vector<EffMedRow>& rows) {
    const AggregateSpec spec = c.aggregate();
    const Complex ee = eps_eff({spec.rho, spec.f, spec.sphere, Prescription::dipole_amplitude});
    std::ostringstream o;
    o << "zeta,eps_eff_re,eps_eff_im,"
         "F_eff_c_par,F_eff_c_perp,F_eff_d_par,F_eff_d_perp,F_eff_r_par,F_eff_r_perp,"
         "F_c_par,F_c_perp,F_d_par,F_d_perp,F_r_par,F_r_perp,"
         "ratio_c_par,ratio_c_perp,ratio_d_par,ratio_d_perp,ratio_r_par,ratio_r_perp\n";
    for (const auto& r : rows) {
        const auto& e = r.eff;
        const auto& d = r.discrete;
        o << fmt(r.zeta) << ',' << fmt(ee.real()) << ',' << fmt(ee.imag()) << ',' << fmt(e.F_c_par) << ','
          << fmt(e.F_c_perp) << ',' << fmt(e.F_d_par) << ',' << fmt(e.F_d_perp) << ',' << fmt(e.F_c_par - e.F_d_par)
          << ',' << fmt(e.F_c_perp - e.F_d_perp) << ',' << fmt(d.F_c_par) << ',' << fmt(d.F_c_perp) << ','
          << fmt(d.F_d_par) << ',' << fmt(d.F_d_perp) << ',' << fmt(d.F_c_par - d.F_d_par) << ','
          << fmt(d.F_c_perp - d.F_d_perp) << ',' << fmt(r.ratio_c_par) << ',' << fmt(r.ratio_c_perp) << ','
          << fmt(r.ratio_d_par) << ',' << fmt(r.ratio_d_perp) << ',' << fmt(r.ratio_r_par) << ','
          << fmt(r.ratio_r_perp) << '\n';
    }
    return o.str();
}

}  // namespace scatdecay::app
