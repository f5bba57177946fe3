#pragma once

#include <string>
#include <vector>

#include "scatdecay/aggregate.hpp"

namespace scatdecay::app {

struct CheckResult {
    std::string id;
    bool pass = false;
    double worst = 0.0;  // largest deviation met, in the check's own measure
    double tol = 0.0;
    std::string detail;  // where the worst case sits
    double seconds = 0.0;
};

CheckResult check_wronskian(int lmax = 20);
CheckResult check_finite_sumrules(const std::vector<double>& zs, int lmax = 60, double tol = 1e-11);
CheckResult check_infinite_sumrules(const std::vector<double>& zs, double tol = 1e-8);
CheckResult check_closed_vs_quadrature(const std::vector<double>& zs, int lmax = 40, double tol = 1e-9);
CheckResult check_dual_path(const std::vector<int>& ls);
CheckResult check_endpoints();
// Sum representation against F assembled here from the J-integrals; a sign
// flip of the amplitudes in that assembly must break it.
CheckResult check_cross_representation(const std::vector<double>& zs, bool flip_amplitude_sign = false);
CheckResult check_slopes(double zmin = 100.0, double zmax = 1000.0, double tol = 0.05);

enum class Level { quick, full };

std::vector<CheckResult> run_selfcheck(Level level, bool flip_amplitude_sign = false);
std::string format_check(const CheckResult& r);

}  // namespace scatdecay::app
