#pragma once

#include <array>
#include <complex>

#include "scatdecay/specfun.hpp"

namespace scatdecay {

// Antiderivatives of z^{-n} h_{l1}(z) h_{l2}(z) (plain family) and of
// z^{-n} h_{l1}(z) h_{l2}(z)^* (conjugated family), for l2 - l1 in {0, 1}.
// Additive constants are those of the closed forms as written; only
// differences (see definite) carry meaning.

inline constexpr std::array<int, 7> kDiagN = {3, 1, 0, -1, -2, -3, -5};
inline constexpr std::array<int, 5> kOffdiagN = {2, 0, -1, -2, -4};

struct AntiderivativeValue {
    int l1 = 0;
    int l2 = 0;
    int n = 0;
    double z = 0.0;
    Complex value;
    bool conjugated = false;
};

Complex I_diag(int l, int n, double z);
Complex I_offdiag(int l, int n, double z);

// I_{l+1,l+1,n} from I_{l,l,n}
Complex recursion_B2_step(int l, int n, double z, Complex I_ll);

double Iprime_diag(int l, int n, double z);
Complex Iprime_offdiag(int l, int n, double z);

AntiderivativeValue antiderivative(int l1, int l2, int n, double z, bool conjugated);

Complex definite(int l1, int l2, int n, double lower, double upper, bool conjugated);
Complex definite_quadrature(int l1, int l2, int n, double lower, double upper, bool conjugated,
                            double tol = 1e-12);

// Every diagonal and off-diagonal antiderivative at one (l, z), sharing the
// Hankel values and the core sum. Index order follows kDiagN / kOffdiagN.
struct BasicIntegralSet {
    std::array<Complex, 7> diag;
    std::array<Complex, 5> offdiag;
    double magnitude = 0.0;  // largest |term| met while assembling, for conditioning
};

BasicIntegralSet basic_integrals(int l, double z, bool conjugated);

int diag_index(int n);
int offdiag_index(int n);

enum class SumRule { C1, C2, C3, C4, C5, C6, C7, C8, C9, C10 };

struct SumRuleSides {
    Complex lhs;
    Complex rhs;
};

// Infinite sums (C7-C10) are truncated at k = z + 60.
SumRuleSides sumrule_check(SumRule rule, int l, int p, double z);

}  // namespace scatdecay
