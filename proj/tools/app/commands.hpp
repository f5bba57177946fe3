#pragma once

#include <array>
#include <string>
#include <vector>

#include "config.hpp"
#include "scatdecay/effmed.hpp"
#include "scatdecay/physics.hpp"

namespace scatdecay::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitConvergence = 3;
inline constexpr int kExitMismatch = 4;
inline constexpr int kExitSelfcheck = 5;

inline constexpr double kCompareTol = 1e-6;
inline constexpr double kCompareFloor = 1e-3;

std::vector<double> zeta_grid(const RunConfig& c);

struct CurveRow {
    CorrectionValue F;
    RateResult rate;
};

std::vector<CurveRow> run_curve(const RunConfig& c);
std::string curve_csv(const std::vector<CurveRow>& rows);

struct Deviation {
    double max_rel = 0.0;
    double zeta = 0.0;
    double sum = 0.0;
    double integral = 0.0;
};

// Channels in the order F_c_par, F_c_perp, F_d_par, F_d_perp. The sum
// representation runs at the configured lmax; the integral one is the
// reference at the automatic order.
struct CompareReport {
    std::array<Deviation, 4> channel;
    int points = 0;
    int worst_channel() const;
    double worst() const { return channel[static_cast<std::size_t>(worst_channel())].max_rel; }
    bool ok() const { return worst() < kCompareTol; }
};

CompareReport run_compare(const RunConfig& c);
std::string format_report(const CompareReport& r);

std::vector<EffMedRow> run_effmed(const RunConfig& c);
std::string effmed_csv(const RunConfig& c, const std::vector<EffMedRow>& rows);

}  // namespace scatdecay::app
