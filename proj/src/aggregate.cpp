#include "scatdecay/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scatdecay/errors.hpp"
#include "scatdecay/kahan.hpp"
#include "scatdecay/specfun.hpp"

namespace scatdecay {

bool AggregateSpec::validate() const {
    sphere.validate();
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("rho must be > 0");
    if (!(rho > sphere.q)) throw DomainError("domain radius rho must exceed the sphere size q");
    if (!(f >= 0.0) || f > 0.2) throw DomainError("filling fraction must lie in [0, 0.2]");
    if (!(beta_hw >= 0.0)) throw DomainError("beta_hw must be >= 0");
    return f > 0.05;
}

namespace {

ScaledReal ball_from(const ScaledReal& jl, const ScaledReal& jl1, int l, double rho) {
    const double r2 = rho * rho;
    ScaledReal v = jl * jl * (0.5 * r2 * rho);
    v += jl1 * jl1 * (0.5 * r2 * rho);
    v += jl * jl1 * (-0.5 * (2.0 * l + 1.0) * r2);
    return v;
}

}  // namespace

std::vector<ScaledReal> ball_integrals(int lmax, double rho) {
    if (!(rho > 0.0)) throw DomainError("rho must be > 0");
    if (lmax < 0) throw DomainError("negative order");
    const auto j = sph_bessel_j_scaled(lmax + 1, rho);
    std::vector<ScaledReal> out(static_cast<std::size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l) {
        const auto L = static_cast<std::size_t>(l);
        out[L] = ball_from(j[L], j[L + 1], l, rho);
    }
    return out;
}

ScaledReal I_l_of_R_scaled(int l, double rho) { return ball_integrals(l, rho).back(); }

double I_l_of_R(int l, double rho) { return I_l_of_R_scaled(l, rho).value(); }

double c_coeff(int l, int lp, int lpp, double rho) {
    if (l < 1 || lp < 1 || lpp < std::abs(l - lp) || lpp > l + lp) return 0.0;
    const double w = wigner3j_110(l, lp, lpp);
    return (2.0 * lp + 1.0) * (2.0 * lpp + 1.0) * I_l_of_R(lpp, rho) * w * w;
}

AggregateEvaluator::AggregateEvaluator(const AggregateSpec& spec, int lmax, int shell_cap)
    : spec_(spec),
      lmax_fixed_(lmax),
      table_lmax_(lmax > 0 ? lmax : kAutoLmaxCap),
      shell_cap_(shell_cap),
      table_(spec.sphere, lmax > 0 ? lmax : kAutoLmaxCap) {
    if (!(spec_.rho > 0.0)) throw DomainError("rho must be > 0");
    if (shell_cap_ < 1) throw DomainError("shell cap must be >= 1");
    const auto ball = ball_integrals(shell_cap_ + table_lmax_ + 1, spec_.rho);
    ball_m_.reserve(ball.size());
    ball_e_.reserve(ball.size());
    for (const auto& b : ball) {
        ball_m_.push_back(b.mantissa());
        ball_e_.push_back(b.exponent());
    }
}

int AggregateEvaluator::amplitude_lmax(double zeta) const {
    if (lmax_fixed_ > 0) return lmax_fixed_;
    return std::max(1, multipole_lmax(spec_.sphere, zeta - spec_.rho, 1e-13, table_lmax_));
}

CorrectionValue AggregateEvaluator::run(double zeta, bool want_cold, bool want_hot, SumDiagnostics* diag) const {
    const double q = spec_.sphere.q;
    if (!(zeta > spec_.rho + q)) throw DomainError("zeta must exceed rho + q");
    const int L = amplitude_lmax(zeta);
    const double z2 = zeta * zeta;

    auto pair = sph_hankel1_pair_scaled(1, zeta);
    Complex h = pair.h_l, h1 = pair.h_lplus1;
    std::int64_t eh = pair.exponent;

    // [cold par, cold perp, hot par, hot perp]
    std::array<KahanSum, 4> F;
    std::array<double, 4> abs_sum{};
    std::array<double, 4> shell{};
    const int lp_min = static_cast<int>(std::ceil(zeta)) + L + 10;
    int quiet = 0;
    int lp = 1;
    double last = 0.0;
    bool converged = false;

    std::vector<double> w;
    for (; lp <= shell_cap_; ++lp) {
        const Complex dth = (lp + 1.0) * h - zeta * h1;
        const ScaledComplex H(h * h, 2 * eh), Hb(dth * dth, 2 * eh);
        const ScaledReal Hd(std::norm(h), 2 * eh), Hbd(std::norm(dth), 2 * eh);

        ScaledSum<Complex> q1c, q2c;
        ScaledSum<double> q1h, q2h;
        for (int l = 1; l <= L; ++l) {
            w = wigner3j_110_family(l, lp);
            const int jmin = std::abs(l - lp);
            const int jmax = l + lp;
            std::int64_t eref = ball_e_[static_cast<std::size_t>(jmin)];
            for (int j = jmin + 1; j <= jmax; ++j) eref = std::max(eref, ball_e_[static_cast<std::size_t>(j)]);
            double se = 0.0, so = 0.0;
            for (int j = jmin; j <= jmax; ++j) {
                const auto J = static_cast<std::size_t>(j);
                const double wj = w[static_cast<std::size_t>(j - jmin)];
                const double t = (2.0 * j + 1.0) * std::ldexp(ball_m_[J], static_cast<int>(ball_e_[J] - eref)) * wj * wj;
                if ((l + lp + j) % 2 == 0)
                    se += t;
                else
                    so += t;
            }
            const double pre = l * (l + 1.0) * (2.0 * lp + 1.0);
            const ScaledReal Se(pre * se, eref), So(pre * so, eref);
            if (want_cold) {
                const ScaledComplex ae = table_.reduced(l, Pole::electric);
                const ScaledComplex am = table_.reduced(l, Pole::magnetic);
                q1c += to_complex(Se) * ae + to_complex(So) * am;
                q2c += to_complex(Se) * am + to_complex(So) * ae;
            }
            if (want_hot) {
                const ScaledReal& ce = table_.C_scaled(l, Pole::electric);
                const ScaledReal& cm = table_.C_scaled(l, Pole::magnetic);
                q1h += -(Se * ce + So * cm);
                q2h += -(Se * cm + So * ce);
            }
        }
        const double lpl = lp * (lp + 1.0);
        if (want_cold) {
            const ScaledComplex Q1 = q1c.value(), Q2 = q2c.value();
            shell[0] = lpl * (Q1 * H).value().real() / z2;
            shell[1] = (Q1 * Hb).value().real() / z2 + (Q2 * H).value().real();
        }
        if (want_hot) {
            const ScaledReal Q1 = q1h.value(), Q2 = q2h.value();
            shell[2] = lpl * (Q1 * Hd).value() / z2;
            shell[3] = (Q1 * Hbd).value() / z2 + (Q2 * Hd).value();
        }
        bool small = true;
        last = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            F[k].add(shell[k]);
            abs_sum[k] += std::abs(shell[k]);
            if (abs_sum[k] > 0.0) {
                const double r = std::abs(shell[k]) / abs_sum[k];
                last = std::max(last, r);
                if (r > kShellTol) small = false;
            }
        }
        if (lp >= lp_min) {
            quiet = small ? quiet + 1 : 0;
            if (quiet >= 3) {
                converged = true;
                break;
            }
        }

        const Complex h2 = (2.0 * lp + 3.0) / zeta * h1 - h;
        h = h1;
        h1 = h2;
        const double big = std::max(std::abs(h), std::abs(h1));
        if (big > 0x1p400) {
            int k = 0;
            std::frexp(big, &k);
            h = std::ldexp(h.real(), -k) + Complex(0.0, std::ldexp(h.imag(), -k));
            h1 = std::ldexp(h1.real(), -k) + Complex(0.0, std::ldexp(h1.imag(), -k));
            eh += k;
        }
    }
    const int lp_used = std::min(lp, shell_cap_);
    if (!converged && last > kShellHardTol)
        throw ConvergenceError("observation-shell sum did not converge by l'=" + std::to_string(shell_cap_), zeta,
                               shell_cap_);
    if (diag) *diag = SumDiagnostics{L, lp_used, last, converged};

    const double q3 = q * q * q;
    CorrectionValue out;
    out.zeta = zeta;
    out.F_c_par = -4.5 / q3 * F[0].value();
    out.F_c_perp = -2.25 / q3 * F[1].value();
    out.F_d_par = -4.5 / q3 * F[2].value();
    out.F_d_perp = -2.25 / q3 * F[3].value();
    return out;
}

CorrectionValue AggregateEvaluator::evaluate(double zeta, SumDiagnostics* diag) const {
    return run(zeta, true, true, diag);
}

CorrectionPair AggregateEvaluator::cold(double zeta, SumDiagnostics* diag) const {
    const auto v = run(zeta, true, false, diag);
    return {v.F_c_par, v.F_c_perp};
}

CorrectionPair AggregateEvaluator::hot(double zeta, SumDiagnostics* diag) const {
    const auto v = run(zeta, false, true, diag);
    return {v.F_d_par, v.F_d_perp};
}

CorrectionPair F_cold_sum(const AggregateSpec& spec, double zeta, int lmax, SumDiagnostics* diag) {
    return AggregateEvaluator(spec, lmax).cold(zeta, diag);
}

CorrectionPair F_hot_sum(const AggregateSpec& spec, double zeta, int lmax, SumDiagnostics* diag) {
    return AggregateEvaluator(spec, lmax).hot(zeta, diag);
}

CorrectionPair F_single_scatterer(const SphereSpec& sphere, double zeta, int lmax) {
    sphere.validate();
    if (!(zeta > sphere.q)) throw DomainError("zeta must exceed q");
    const int L = lmax > 0 ? lmax : std::max(1, multipole_lmax(sphere, zeta, 1e-13));
    const MultipoleTable t(sphere, L);
    const auto h = sph_hankel1_scaled(L + 1, zeta);
    KahanSum par, perp;
    for (int l = 1; l <= L; ++l) {
        const auto i = static_cast<std::size_t>(l);
        const ScaledComplex H = h[i] * h[i];
        const ScaledComplex d = h[i] * Complex(l + 1.0) - h[i + 1] * Complex(zeta);
        const ScaledComplex Hb = d * d;
        const double ll = l * (l + 1.0);
        const ScaledComplex& ae = t.reduced(l, Pole::electric);
        const ScaledComplex& am = t.reduced(l, Pole::magnetic);
        par.add(ll * ll * (ae * H).value().real() / (zeta * zeta));
        perp.add(ll * ((ae * Hb).value().real() / (zeta * zeta) + (am * H).value().real()));
    }
    return {-1.5 * par.value(), -0.75 * perp.value()};
}

void for_each_term(double rho, int lmax, int lpmax, const std::function<void(const AggregateTerm&)>& fn,
                   bool swap_poles) {
    const auto other = [](Pole p) { return p == Pole::electric ? Pole::magnetic : Pole::electric; };
    for (int l = 1; l <= lmax; ++l)
        for (int lp = 1; lp <= lpmax; ++lp)
            for (int lpp = std::abs(l - lp); lpp <= l + lp; ++lpp) {
                const int n = l + lp + lpp;
                const bool de = parity_delta(swap_poles ? Parity::odd : Parity::even, n) == 1;
                const bool d_o = parity_delta(swap_poles ? Parity::even : Parity::odd, n) == 1;
                const Pole Pe = swap_poles ? other(Pole::electric) : Pole::electric;
                const Pole Pm = swap_poles ? other(Pole::magnetic) : Pole::magnetic;
                AggregateTerm t;
                t.l = l;
                t.lp = lp;
                t.lpp = lpp;
                t.c = c_coeff(l, lp, lpp, rho);
                t.even = n % 2 == 0;
                // (B^e d^e + B^m d^o) and (B^e d^o + B^m d^e) after the optional relabelling
                t.slot1 = de ? Pe : Pm;
                t.slot2 = d_o ? Pe : Pm;
                fn(t);
            }
}

}  // namespace scatdecay
