#include "scatdecay/asympt.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "scatdecay/errors.hpp"
#include "scatdecay/intrep.hpp"
#include "scatdecay/kahan.hpp"

namespace scatdecay {

namespace {

int far_order(const AggregateSpec& spec, double zeta, int lmax) {
    if (lmax > 0) return lmax;
    return std::max(1, multipole_lmax(spec.sphere, zeta - spec.rho, 1e-13));
}

void check_far(const AggregateSpec& spec, double zeta) {
    if (!(spec.rho > 0.0) || !(zeta > spec.rho)) throw DomainError("far-field forms need zeta > rho > 0");
}

}  // namespace

AsymptoteReport make_report(Regime regime, double zeta, double exact, double asymptotic) {
    AsymptoteReport r;
    r.zeta = zeta;
    r.exact = exact;
    r.asymptotic = asymptotic;
    r.regime = regime;
    r.ratio = asymptotic != 0.0 ? exact / asymptotic : std::numeric_limits<double>::quiet_NaN();
    return r;
}

CorrectionPair far_F_cold(const AggregateSpec& spec, double zeta, int lmax) {
    check_far(spec, zeta);
    const int L = far_order(spec, zeta, lmax);
    const MultipoleTable tab(spec.sphere, L);
    const double rho = spec.rho, q = spec.sphere.q;
    const double s2 = std::sin(2 * rho), c2 = std::cos(2 * rho);
    const double P = (-0.5 * rho * rho + 0.375) * s2 - 0.75 * rho * c2;
    const double Q = 0.25 * s2 - 0.5 * rho * c2;
    const double S = 0.5 * s2 - rho * c2;
    const Complex ph = std::polar(1.0, 2 * zeta);
    const double z2 = zeta * zeta, z4 = z2 * z2;
    KahanSum par, perp;
    for (int l = 1; l <= L; ++l) {
        const double ll = l * (l + 1.0);
        const Complex ae = tab.reduced(l, Pole::electric).value();
        const Complex am = tab.reduced(l, Pole::magnetic).value();
        const Complex e = (l % 2 ? -ph : ph);
        par += ll * std::real(ae * e * (P - 2 * ll * Q) / z4 - am * e * P / z4);
        perp += ll * std::real((ae - am) * e * S / z2);
    }
    const double q3 = q * q * q;
    return {-9.0 / (8 * q3) * par.value(), -9.0 / (16 * q3) * perp.value()};
}

CorrectionPair far_F_hot(const AggregateSpec& spec, double zeta, int lmax) {
    check_far(spec, zeta);
    const int L = far_order(spec, zeta, lmax);
    const MultipoleTable tab(spec.sphere, L);
    const double rho = spec.rho, q = spec.sphere.q;
    const double r3 = rho * rho * rho, r5 = r3 * rho * rho;
    KahanSum par, perp;
    for (int l = 1; l <= L; ++l) {
        const double ll = l * (l + 1.0);
        const double ce = tab.Ce(l), cm = tab.Cm(l);
        par += ll * (ce * (4.0 / 15 * r5 + 4.0 / 3 * ll * r3) + cm * 4.0 / 15 * r5);
        perp += ll * (ce + cm);
    }
    const double q3 = q * q * q, z2 = zeta * zeta;
    return {9.0 / (8 * q3) * par.value() / (z2 * z2), 9.0 / (16 * q3) * (4.0 / 3) * r3 / z2 * perp.value()};
}

double near_F_par(const AggregateSpec& spec, double zeta) {
    const double rho = spec.rho, q = spec.sphere.q;
    if (!(zeta > rho + q)) throw DomainError("near-surface form needs zeta > rho + q");
    const Complex eps = spec.sphere.eps;
    const double w = eps.imag() / std::norm(1.0 + eps);
    return 9.0 / (16 * q * q) * w * rho / ((rho + q) * (zeta - rho - q));
}

double near_F_perp(const AggregateSpec& spec, double zeta) { return 0.5 * near_F_par(spec, zeta); }

NearRatios near_equivalences(const AggregateSpec& spec, double zeta, int lmax) {
    NearRatios r;
    r.exact = IntrepEvaluator(spec, lmax).evaluate(zeta);
    r.dc_par = r.exact.F_d_par / r.exact.F_c_par;
    r.dc_perp = r.exact.F_d_perp / r.exact.F_c_perp;
    r.par_perp = r.exact.F_c_par / r.exact.F_c_perp;
    return r;
}

double special_radii(int n) {
    if (n < 1) throw DomainError("special_radii needs n >= 1");
    // tan x = x  <=>  sin x - x cos x = 0, which has one root in (n pi, n pi + pi/2)
    const double pi = std::numbers::pi;
    auto f = [](double x) { return std::sin(x) - x * std::cos(x); };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(f, n * pi, n * pi + 0.5 * pi, tol, it);
    return 0.25 * (a + b);
}

double large_l_hankel_log(int l, double t) {
    if (l < 1 || !(t > 0.0)) throw DomainError("large_l_hankel needs l >= 1, t > 0");
    const double L = l;
    return (L + 0.5) * std::numbers::ln2 + L * std::log(L) - L - (L + 1) * std::log(t);
}

ScaledComplex large_l_hankel(int l, double t) {
    const double lg2 = large_l_hankel_log(l, t) / std::numbers::ln2;
    const double whole = std::floor(lg2);
    return ScaledComplex(Complex(0.0, -std::exp2(lg2 - whole)), static_cast<std::int64_t>(whole));
}

EnvelopeFit envelope_slope(const std::function<double(double)>& F, double zeta_min, double zeta_max) {
    const double step = 0.5 * std::numbers::pi;
    if (!(zeta_max > zeta_min + 8 * step)) throw DomainError("envelope_slope needs a range of several periods");
    double start = zeta_min, best = -1.0;
    for (int k = 0; k < 32; ++k) {
        const double z = zeta_min + step * k / 32.0;
        const double v = std::abs(F(z));
        if (v > best) {
            best = v;
            start = z;
        }
    }
    std::vector<double> zs, vs;
    for (double z = start; z <= zeta_max; z += step) {
        zs.push_back(z);
        vs.push_back(std::abs(F(z)));
    }
    EnvelopeFit fit;
    for (std::size_t i = 0; i + 4 <= zs.size(); ++i) {
        std::size_t k = i;
        for (std::size_t j = i + 1; j < i + 4; ++j)
            if (vs[j] > vs[k]) k = j;
        fit.zeta.push_back(zs[k]);
        fit.envelope.push_back(vs[k]);
    }
    // least squares in log-log
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(fit.zeta.size());
    for (std::size_t i = 0; i < fit.zeta.size(); ++i) {
        const double x = std::log(fit.zeta[i]), y = std::log(fit.envelope[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace scatdecay
