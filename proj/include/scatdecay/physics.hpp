#pragma once

#include "scatdecay/aggregate.hpp"

namespace scatdecay {

// Orientation split of the vacuum rate; w_par + w_perp = 1.
struct DipoleWeights {
    double w_par = 1.0 / 3.0;
    double w_perp = 2.0 / 3.0;

    void validate() const;  // throws DomainError
};

struct RateResult {
    double zeta = 0.0;
    double gamma_over_gamma0 = 1.0;
    double gamma_abs_over_gamma0 = 0.0;
    double F_total_par = 0.0;
    double F_total_perp = 0.0;
    double F_r_par = 0.0;
    double F_r_perp = 0.0;
};

// e^x / (e^x - 1); 1 for x = +inf.
double stimulated_factor(double beta_hw);
// 1 / (e^x - 1); 0 for x = +inf.
double bose_factor(double beta_hw);

// F_r + e^x/(e^x - 1) F_d, with F_r = F_c - F_d.
CorrectionPair F_total(const CorrectionPair& F_c, const CorrectionPair& F_d, double beta_hw);

// Rates from already evaluated correction functions. The absorption rate is
// zero for cold scatterers here; absorption_rate() below refuses them instead.
RateResult rates(const AggregateSpec& spec, const DipoleWeights& w, const CorrectionValue& v);

// These evaluate F through the integral representation.
double emission_rate(const AggregateSpec& spec, const DipoleWeights& w, double zeta);
double absorption_rate(const AggregateSpec& spec, const DipoleWeights& w, double zeta);
// n_e / n_g from n_e <Gamma> = n_g <Gamma_a>.
double population_ratio(const AggregateSpec& spec, const DipoleWeights& w, double zeta);

}  // namespace scatdecay
