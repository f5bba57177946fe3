#pragma once

#include <functional>
#include <vector>

#include "scatdecay/aggregate.hpp"
#include "scatdecay/scaled.hpp"

namespace scatdecay {

enum class Regime { far_cold, far_hot, near_surface, effmed_far };

struct AsymptoteReport {
    double zeta = 0.0;
    double exact = 0.0;
    double asymptotic = 0.0;
    double ratio = 0.0;  // NaN when the asymptote vanishes
    Regime regime = Regime::far_cold;
};

AsymptoteReport make_report(Regime regime, double zeta, double exact, double asymptotic);

// Leading large-zeta forms; lmax = 0 picks the order from the amplitudes.
CorrectionPair far_F_cold(const AggregateSpec& spec, double zeta, int lmax = 0);
CorrectionPair far_F_hot(const AggregateSpec& spec, double zeta, int lmax = 0);

// Electric-multipole divergence at zeta -> rho + q.
double near_F_par(const AggregateSpec& spec, double zeta);
double near_F_perp(const AggregateSpec& spec, double zeta);

struct NearRatios {
    double dc_par = 0.0;    // F_d_par / F_c_par
    double dc_perp = 0.0;   // F_d_perp / F_c_perp
    double par_perp = 0.0;  // F_c_par / F_c_perp
    CorrectionValue exact;
};

NearRatios near_equivalences(const AggregateSpec& spec, double zeta, int lmax = 300);

// n-th positive root of tan(2 rho) = 2 rho.
double special_radii(int n);

// h_l(t) ~ -i 2^{l+1/2} l^l / (e^l t^{l+1}), kept in scaled form.
ScaledComplex large_l_hankel(int l, double t);
double large_l_hankel_log(int l, double t);  // natural log of the modulus

// Log-log slope of the envelope of |F| on [zeta_min, zeta_max]. Samples sit
// a quarter wavelength apart, starting where |F| peaks in the first period;
// the envelope is the running max over 4 samples.
struct EnvelopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> zeta, envelope;
};

EnvelopeFit envelope_slope(const std::function<double(double)>& F, double zeta_min, double zeta_max);

}  // namespace scatdecay
