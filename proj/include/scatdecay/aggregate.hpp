#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "scatdecay/mie.hpp"
#include "scatdecay/scaled.hpp"

namespace scatdecay {

struct AggregateSpec {
    double rho = 6.0;  // kR
    SphereSpec sphere;
    double f = 0.01;  // filling fraction
    double beta_hw = std::numeric_limits<double>::infinity();  // infinite: cold

    // Throws DomainError; returns true when f is above the dilute range
    // (0.05) so callers can warn.
    bool validate() const;
};

struct CorrectionPair {
    double par = 0.0;
    double perp = 0.0;
};

struct CorrectionValue {
    double zeta = 0.0;
    double F_c_par = 0.0;
    double F_c_perp = 0.0;
    double F_d_par = 0.0;
    double F_d_perp = 0.0;
};

struct SumDiagnostics {
    int lmax = 0;          // amplitude order
    int lp_used = 0;       // last observation shell summed
    double last_shell = 0.0;  // largest relative size of the final shells
    bool converged = false;
};

// k^3 times the integral of r^2 j_l(kr)^2 over a ball of radius R (rho = kR).
double I_l_of_R(int l, double rho);
ScaledReal I_l_of_R_scaled(int l, double rho);
// Same, for l = 0..lmax in one pass.
std::vector<ScaledReal> ball_integrals(int lmax, double rho);

double c_coeff(int l, int lp, int lpp, double rho);

inline constexpr int kShellCap = 6000;
inline constexpr double kShellTol = 1e-13;
// Above this last-shell size a capped sum is an error rather than a warning.
inline constexpr double kShellHardTol = 1e-8;

// Triple sums for one domain, reusable across zeta. Immutable after
// construction, so one instance can serve several threads.
class AggregateEvaluator {
public:
    // lmax <= 0 picks the amplitude order per zeta from the multipole tail.
    AggregateEvaluator(const AggregateSpec& spec, int lmax = 0, int shell_cap = kShellCap);

    const AggregateSpec& spec() const noexcept { return spec_; }

    CorrectionValue evaluate(double zeta, SumDiagnostics* diag = nullptr) const;
    CorrectionPair cold(double zeta, SumDiagnostics* diag = nullptr) const;
    CorrectionPair hot(double zeta, SumDiagnostics* diag = nullptr) const;

    int amplitude_lmax(double zeta) const;

private:
    AggregateSpec spec_;
    int lmax_fixed_;
    int table_lmax_;
    int shell_cap_;
    MultipoleTable table_;
    std::vector<double> ball_m_;
    std::vector<std::int64_t> ball_e_;

    CorrectionValue run(double zeta, bool want_cold, bool want_hot, SumDiagnostics* diag) const;
};

CorrectionPair F_cold_sum(const AggregateSpec& spec, double zeta, int lmax, SumDiagnostics* diag = nullptr);
CorrectionPair F_hot_sum(const AggregateSpec& spec, double zeta, int lmax, SumDiagnostics* diag = nullptr);

// f * F in the limit of one sphere at the origin.
CorrectionPair F_single_scatterer(const SphereSpec& sphere, double zeta, int lmax);

// One summand of (l, lp, lpp): which amplitude sits in the slot multiplying
// H/zeta^2 (and Hbar/zeta^2 for perp), and which multiplies H in perp.
struct AggregateTerm {
    int l = 0;
    int lp = 0;
    int lpp = 0;
    double c = 0.0;
    bool even = false;
    Pole slot1 = Pole::electric;
    Pole slot2 = Pole::magnetic;
};

// Walks the triangle-restricted terms in the summation order: outer l, middle
// lp, inner lpp. swap_poles exchanges e and m together with the parity labels.
void for_each_term(double rho, int lmax, int lpmax, const std::function<void(const AggregateTerm&)>& fn,
                   bool swap_poles = false);

}  // namespace scatdecay
