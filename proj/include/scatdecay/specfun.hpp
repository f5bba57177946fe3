#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "scatdecay/scaled.hpp"

namespace scatdecay {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxOrder = 500;

struct HankelPair {
    Complex h_l;
    Complex h_lplus1;
    int order = 0;
    double argument = 0.0;

    // h_{l+2} from the three-term recurrence.
    Complex extend_up() const {
        return (2.0 * order + 3.0) / argument * h_lplus1 - h_l;
    }
    // h_{l-1}; requires order >= 1.
    Complex extend_down() const {
        return (2.0 * order + 1.0) / argument * h_l - h_lplus1;
    }
};

// h_l and h_{l+1} sharing one binary exponent: h = mantissa * 2^exponent.
struct ScaledHankelPair {
    Complex h_l;
    Complex h_lplus1;
    std::int64_t exponent = 0;
};

Complex sph_bessel_j(int l, Complex z, int max_order = kDefaultMaxOrder);
double sph_bessel_j(int l, double x, int max_order = kDefaultMaxOrder);

// j_0..j_lmax by normalised downward recurrence.
std::vector<ScaledComplex> sph_bessel_j_scaled(int lmax, Complex z);
std::vector<ScaledReal> sph_bessel_j_scaled(int lmax, double x);

// y_0..y_lmax by upward recurrence (x > 0).
std::vector<ScaledReal> sph_bessel_y_scaled(int lmax, double x);

HankelPair sph_hankel1(int l, double x, int max_order = kDefaultMaxOrder);
std::vector<ScaledComplex> sph_hankel1_scaled(int lmax, double x);
ScaledHankelPair sph_hankel1_pair_scaled(int l, double x);

// d[x h_l(x)]/dx = (l+1) h_l(x) - x h_{l+1}(x)
Complex riccati_h_derivative(int l, double x);

struct SiCi {
    double si = 0.0;
    double ci = 0.0;
};

SiCi sin_cos_integrals(double x);

// E1(-2iz) = -Ci(2z) - i Si(2z) + i pi/2
Complex exp_integral_E1_neg2iz(double z);

// Rising factorial; for n < 0, (a)_n = 1/((a+n)(a+n+1)...(a-1)).
double pochhammer(double a, int n);

// 3j symbol (l lp lpp; 1 -1 0).
double wigner3j_110(int l, int lp, int lpp);
// All lpp = |l-lp| .. l+lp for fixed (l, lp); index lpp - |l-lp|.
std::vector<double> wigner3j_110_family(int l, int lp);
// Racah single-sum formula with log-factorials. Reference only: loses
// accuracy once the orders reach a few dozen.
double wigner3j_110_racah(int l, int lp, int lpp);

enum class Parity { even, odd };
int parity_delta(Parity kind, int n);

}  // namespace scatdecay
