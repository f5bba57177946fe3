#pragma once

#include <complex>
#include <vector>

#include "scatdecay/scaled.hpp"
#include "scatdecay/specfun.hpp"

namespace scatdecay {

enum class Pole { electric, magnetic };

struct SphereSpec {
    double q = 0.5;                // ka
    Complex eps{3.0, 0.5};         // relative dielectric constant

    void validate() const;
    // sqrt(eps) on the principal branch, Im >= 0 for Im eps >= 0.
    Complex sqrt_eps() const { return std::sqrt(eps); }
};

// Amplitudes in the combination (-i)^{l+1} B^p_l, which is what every
// correction function consumes. B itself is i^{l+1} times this.
ScaledComplex reduced_amplitude_scaled(const SphereSpec& s, int l, Pole p);

Complex amplitude_B(const SphereSpec& s, int l, Pole p);
ScaledComplex amplitude_B_scaled(const SphereSpec& s, int l, Pole p);
Complex amplitude_A(const SphereSpec& s, int l, Pole p);
double coeff_C(const SphereSpec& s, int l, Pole p);
ScaledReal coeff_C_scaled(const SphereSpec& s, int l, Pole p);

class MultipoleTable {
public:
    MultipoleTable(const SphereSpec& spec, int lmax);

    const SphereSpec& spec() const noexcept { return spec_; }
    int lmax() const noexcept { return lmax_; }

    // (-i)^{l+1} B^p_l
    const ScaledComplex& reduced(int l, Pole p) const;
    const ScaledReal& C_scaled(int l, Pole p) const;

    Complex Be(int l) const;
    Complex Bm(int l) const;
    double Ce(int l) const { return C_scaled(l, Pole::electric).value(); }
    double Cm(int l) const { return C_scaled(l, Pole::magnetic).value(); }

private:
    SphereSpec spec_;
    int lmax_;
    std::vector<ScaledComplex> ae_, am_;
    std::vector<ScaledReal> ce_, cm_;
};

// Integral of r^2 |j_l(k' r)|^2 over the unit ball radius, k' = sqrt(eps) q
// (the a^3 factor of the dimensional integral removed).
double radial_integral_Ieps(const SphereSpec& s, int l);
double radial_integral_Ieps_quadrature(const SphereSpec& s, int l);

struct WronskianIdentities {
    double lhs_m = 0.0;
    double rhs_m = 0.0;
    double lhs_e = 0.0;
    double rhs_e = 0.0;
};

WronskianIdentities verify_wronskian_identities(const SphereSpec& s, int l);

// Large-l form of Re[(-i)^{l+1} B^e_l].
double large_l_amplitude_asymptote(const SphereSpec& s, int l);
ScaledReal large_l_amplitude_asymptote_scaled(const SphereSpec& s, int l);

inline constexpr int kAutoLmaxCap = 500;

// Smallest order beyond which the multipole terms l(l+1)|B_l||h_l(gap)|^2
// add less than tol relative to the running sum; gap is the distance from
// the atom to the closest possible scatterer centre.
int multipole_lmax(const SphereSpec& s, double gap, double tol, int cap = kAutoLmaxCap);

// max(floor(zeta_max + 8 zeta_max^{1/3} + 10), multipole_lmax); gap
// defaults to zeta_max. Throws OrderOverflowError above the cap.
int auto_lmax(const SphereSpec& s, double zeta_max, double tol, double gap = 0.0, int cap = kAutoLmaxCap);

}  // namespace scatdecay
