#include "scatdecay/physics.hpp"

#include <cmath>

#include "scatdecay/errors.hpp"
#include "scatdecay/intrep.hpp"

namespace scatdecay {

void DipoleWeights::validate() const {
    if (!(w_par >= 0.0 && w_par <= 1.0 && w_perp >= 0.0 && w_perp <= 1.0))
        throw DomainError("dipole weights must lie in [0, 1]");
    if (std::abs(w_par + w_perp - 1.0) > 1e-12) throw DomainError("dipole weights must add up to 1");
}

double stimulated_factor(double beta_hw) {
    if (!(beta_hw > 0.0)) throw DomainError("beta_hw must be positive");
    if (std::isinf(beta_hw)) return 1.0;
    return 1.0 / -std::expm1(-beta_hw);
}

double bose_factor(double beta_hw) {
    if (!(beta_hw > 0.0)) throw DomainError("beta_hw must be positive");
    if (std::isinf(beta_hw)) return 0.0;
    return 1.0 / std::expm1(beta_hw);
}

CorrectionPair F_total(const CorrectionPair& F_c, const CorrectionPair& F_d, double beta_hw) {
    if (std::isinf(beta_hw) && beta_hw > 0.0) return F_c;
    const double s = stimulated_factor(beta_hw);
    return {F_c.par - F_d.par + s * F_d.par, F_c.perp - F_d.perp + s * F_d.perp};
}

RateResult rates(const AggregateSpec& spec, const DipoleWeights& w, const CorrectionValue& v) {
    w.validate();
    RateResult r;
    r.zeta = v.zeta;
    r.F_r_par = v.F_c_par - v.F_d_par;
    r.F_r_perp = v.F_c_perp - v.F_d_perp;
    const CorrectionPair t = F_total({v.F_c_par, v.F_c_perp}, {v.F_d_par, v.F_d_perp}, spec.beta_hw);
    r.F_total_par = t.par;
    r.F_total_perp = t.perp;
    r.gamma_over_gamma0 = 1.0 + spec.f * (w.w_par * t.par + w.w_perp * t.perp);
    if (!std::isinf(spec.beta_hw))
        r.gamma_abs_over_gamma0 = spec.f * bose_factor(spec.beta_hw) * (w.w_par * v.F_d_par + w.w_perp * v.F_d_perp);
    return r;
}

namespace {

CorrectionValue evaluate(const AggregateSpec& spec, double zeta) {
    if (!(zeta > spec.rho + spec.sphere.q)) throw DomainError("rates need zeta > rho + q");
    const IntrepEvaluator ev(spec);
    if (std::isinf(spec.beta_hw)) {
        // the cold rate never needs the C coefficients
        const CorrectionPair c = ev.cold(zeta);
        return {zeta, c.par, c.perp, 0.0, 0.0};
    }
    return ev.evaluate(zeta);
}

void require_hot(const AggregateSpec& spec) {
    if (std::isinf(spec.beta_hw)) throw DomainError("absorption needs a finite beta_hw");
}

}  // namespace

double emission_rate(const AggregateSpec& spec, const DipoleWeights& w, double zeta) {
    return rates(spec, w, evaluate(spec, zeta)).gamma_over_gamma0;
}

double absorption_rate(const AggregateSpec& spec, const DipoleWeights& w, double zeta) {
    require_hot(spec);
    return rates(spec, w, evaluate(spec, zeta)).gamma_abs_over_gamma0;
}

double population_ratio(const AggregateSpec& spec, const DipoleWeights& w, double zeta) {
    require_hot(spec);
    const RateResult r = rates(spec, w, evaluate(spec, zeta));
    return r.gamma_abs_over_gamma0 / r.gamma_over_gamma0;
}

}  // namespace scatdecay
