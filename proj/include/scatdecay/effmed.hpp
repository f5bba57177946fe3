#pragma once

#include <vector>

#include "scatdecay/aggregate.hpp"
#include "scatdecay/intrep.hpp"

namespace scatdecay {

enum class Prescription { maxwell_garnett, dipole_amplitude };

struct EffMedSpec {
    double rho = 6.0;
    double f = 0.01;
    SphereSpec sphere;
    Prescription prescription = Prescription::dipole_amplitude;

    // Throws on bad input; true when |eps_eff - 1| > 0.5 (outside the
    // weak-contrast expansion).
    bool validate() const;
};

Complex eps_eff(const EffMedSpec& spec);

// Stand-in for B^e_1 per unit filling fraction: eps_eff - 1 = -3 i f b / q^3.
// The dipole prescription gives b = B^e_1 itself.
Complex effective_dipole(const EffMedSpec& spec);

// B^p_l(eps_eff, rho) / (eps_eff - 1) to first order; (-i)^l times it is real.
Complex reduced_B(int l, double rho, Pole p);

// Per unit f. lmax = 0 sums until the terms die out.
CorrectionPair F_eff(const EffMedSpec& spec, double zeta, int lmax, JKind kind);

// Large-zeta transverse forms.
double far_F_eff_cold_perp(const EffMedSpec& spec, double zeta);
double far_F_eff_hot_perp(const EffMedSpec& spec, double zeta);

struct EffMedRow {
    double zeta = 0.0;
    CorrectionValue eff;       // F_c and F_d of the uniform medium
    CorrectionValue discrete;  // F_c and F_d of the scatterers
    // effective / discrete, per part: cold total, dielectric, radiative
    double ratio_c_par = 0.0, ratio_c_perp = 0.0;
    double ratio_d_par = 0.0, ratio_d_perp = 0.0;
    double ratio_r_par = 0.0, ratio_r_perp = 0.0;
};

std::vector<EffMedRow> effmed_vs_discrete(const AggregateSpec& spec, const std::vector<double>& zeta_grid,
                                          Prescription prescription = Prescription::dipole_amplitude, int lmax = 0);

}  // namespace scatdecay
