#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "scatdecay/aggregate.hpp"
#include "scatdecay/intrep.hpp"

namespace scatdecay::app {

enum class Representation { sum, integral, both };

struct RunConfig {
    double rho = 6.0;
    double q = 0.5;
    double eps_re = 3.0;
    double eps_im = 0.5;
    double f = 0.01;
    double beta_hw = std::numeric_limits<double>::infinity();
    double zeta_min = std::numeric_limits<double>::quiet_NaN();  // NaN: rho + q + 0.1
    double zeta_max = 30.0;
    int points = 400;
    int lmax = 0;  // 0: automatic
    Representation representation = Representation::integral;
    JMethod method = JMethod::automatic;
    std::string output_path;  // empty: stdout

    double zeta_lo() const { return std::isnan(zeta_min) ? rho + q + 0.1 : zeta_min; }
    AggregateSpec aggregate() const;
    // Throws DomainError with a message naming the offending key.
    void validate() const;
};

// Caption parameters of the figures; throws DomainError for unknown names.
RunConfig preset(const std::string& name);

// `key = value` lines, `#` starts a comment. Unknown keys are errors.
void apply_config_text(RunConfig& c, const std::string& text);
void set_key(RunConfig& c, const std::string& key, const std::string& value);
std::string serialize(const RunConfig& c);

std::string to_string(Representation r);
std::string to_string(JMethod m);
Representation parse_representation(const std::string& s);
JMethod parse_method(const std::string& s);

// Fixed 12-significant-digit formatting used by every CSV writer.
std::string fmt(double v);

}  // namespace scatdecay::app
