#pragma once

#include <cstdint>

#include "scatdecay/aggregate.hpp"

namespace scatdecay {

enum class JKind { cold, hot };
// automatic: closed forms up to kClosedLmax (and while their cancellation
// estimate stays acceptable), quadrature beyond.
enum class JMethod { automatic, closed, quadrature };

inline constexpr int kClosedLmax = 40;

double g1(double t, double zeta, double rho);
double g2(double t, double zeta, double rho);
// g1 - g2 and g1 + g2 without the cancellation of the printed forms.
double g_minus(double t, double zeta, double rho);
double g_plus(double t, double zeta, double rho);

// True integrals are the stored values times 2^exponent; exponent is 0
// unless the values leave the binary64 range (high l close to the domain).
struct JIntegralSet {
    int l = 0;
    double zeta = 0.0;
    double rho = 0.0;
    Complex Je_par, Jm_par, Je_perp, Jm_perp;
    JKind kind = JKind::cold;
    std::int64_t exponent = 0;
    JMethod method = JMethod::quadrature;  // path actually taken
};

JIntegralSet J_cold(int l, double zeta, double rho, JMethod method = JMethod::automatic);
JIntegralSet J_hot(int l, double zeta, double rho, JMethod method = JMethod::automatic);

// Closed path with its cancellation estimate: largest |term| over |result|.
JIntegralSet J_closed(int l, double zeta, double rho, JKind kind, double* condition = nullptr);
JIntegralSet J_quadrature(int l, double zeta, double rho, JKind kind, double tol = 1e-11);

class IntrepEvaluator {
public:
    IntrepEvaluator(const AggregateSpec& spec, int lmax = 0, JMethod method = JMethod::automatic);

    const AggregateSpec& spec() const noexcept { return spec_; }
    CorrectionValue evaluate(double zeta, SumDiagnostics* diag = nullptr) const;
    CorrectionPair cold(double zeta, SumDiagnostics* diag = nullptr) const;
    CorrectionPair hot(double zeta, SumDiagnostics* diag = nullptr) const;
    int amplitude_lmax(double zeta) const;

private:
    AggregateSpec spec_;
    int lmax_fixed_;
    JMethod method_;
    MultipoleTable table_;

    CorrectionValue run(double zeta, bool want_cold, bool want_hot, SumDiagnostics* diag) const;
};

CorrectionPair F_cold_int(const AggregateSpec& spec, double zeta, int lmax, JMethod method = JMethod::automatic);
CorrectionPair F_hot_int(const AggregateSpec& spec, double zeta, int lmax, JMethod method = JMethod::automatic);

// rho -> infinity at fixed zeta' = zeta - rho. The cold integrals converge
// only in the Abel sense and are taken along t = zeta' + i s; the hot ones
// grow linearly with the upper limit and raise ConvergenceError.
JIntegralSet halfspace_J(int l, double zeta_prime, JKind kind);

}  // namespace scatdecay
