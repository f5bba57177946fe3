#include "config.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "scatdecay/errors.hpp"

namespace scatdecay::app {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw DomainError("bad number for " + key + ": '" + v + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    int x = 0;
    try {
        x = std::stoi(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw DomainError("bad integer for " + key + ": '" + v + "'");
    return x;
}

std::string num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

AggregateSpec RunConfig::aggregate() const {
    AggregateSpec s;
    s.rho = rho;
    s.sphere = {q, {eps_re, eps_im}};
    s.f = f;
    s.beta_hw = beta_hw;
    return s;
}

void RunConfig::validate() const {
    if (!(rho > 0.0)) throw DomainError("rho must be positive");
    if (!(q > 0.0)) throw DomainError("q must be positive");
    if (!(q < rho)) throw DomainError("q must be smaller than rho");
    if (!(eps_im >= 0.0)) throw DomainError("eps_im must be >= 0");
    if (!std::isfinite(eps_re)) throw DomainError("eps_re must be finite");
    if (!(f >= 0.0 && f <= 0.2)) throw DomainError("f must lie in [0, 0.2]");
    if (!(beta_hw > 0.0)) throw DomainError("beta_hw must be positive (inf for cold)");
    if (!(zeta_lo() > rho + q)) throw DomainError("zeta_min must exceed rho + q");
    if (!(zeta_max >= zeta_lo())) throw DomainError("zeta_max must be >= zeta_min");
    if (points < 2) throw DomainError("points must be >= 2");
    if (lmax < 0) throw DomainError("lmax must be >= 0");
    if (method == JMethod::closed && lmax > kClosedLmax)
        throw DomainError("method=closed supports lmax <= " + std::to_string(kClosedLmax));
}

RunConfig preset(const std::string& name) {
    RunConfig c;
    if (name == "fig1" || name == "fig5") {
        c.eps_im = 0.5;
    } else if (name == "fig2" || name == "fig7") {
        c.eps_im = 0.1;
    } else if (name == "fig3") {
        c.eps_im = 0.01;
    } else if (name == "fig4" || name == "fig6") {
        c.eps_im = 0.5;
        c.beta_hw = 1.0;
    } else {
        throw DomainError("unknown preset '" + name + "' (fig1..fig7)");
    }
    c.rho = 6.0;
    c.q = 0.5;
    c.eps_re = 3.0;
    return c;
}

std::string to_string(Representation r) {
    switch (r) {
        case Representation::sum: return "sum";
        case Representation::integral: return "integral";
        default: return "both";
    }
}

std::string to_string(JMethod m) {
    switch (m) {
        case JMethod::closed: return "closed";
        case JMethod::quadrature: return "quadrature";
        default: return "auto";
    }
}

Representation parse_representation(const std::string& s) {
    if (s == "sum") return Representation::sum;
    if (s == "integral") return Representation::integral;
    if (s == "both") return Representation::both;
    throw DomainError("representation must be sum, integral or both");
}

JMethod parse_method(const std::string& s) {
    if (s == "closed") return JMethod::closed;
    if (s == "quadrature") return JMethod::quadrature;
    if (s == "auto") return JMethod::automatic;
    throw DomainError("method must be closed, quadrature or auto");
}

void set_key(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "rho") c.rho = parse_double(key, value);
    else if (key == "q") c.q = parse_double(key, value);
    else if (key == "eps_re") c.eps_re = parse_double(key, value);
    else if (key == "eps_im") c.eps_im = parse_double(key, value);
    else if (key == "f") c.f = parse_double(key, value);
    else if (key == "beta_hw") c.beta_hw = parse_double(key, value);
    else if (key == "zeta_min") c.zeta_min = value == "auto" ? std::numeric_limits<double>::quiet_NaN() : parse_double(key, value);
    else if (key == "zeta_max") c.zeta_max = parse_double(key, value);
    else if (key == "points") c.points = parse_int(key, value);
    else if (key == "lmax") c.lmax = parse_int(key, value);
    else if (key == "representation") c.representation = parse_representation(value);
    else if (key == "method") c.method = parse_method(value);
    else if (key == "output_path") c.output_path = value;
    else if (key == "preset") {
        RunConfig p = preset(value);
        p.zeta_min = c.zeta_min;
        p.zeta_max = c.zeta_max;
        p.points = c.points;
        p.lmax = c.lmax;
        p.representation = c.representation;
        p.method = c.method;
        p.output_path = c.output_path;
        p.f = c.f;
        c = p;
    } else
        throw DomainError("unknown config key '" + key + "'");
}

void apply_config_text(RunConfig& c, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw DomainError("config line " + std::to_string(n) + ": expected key = value");
        set_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

std::string serialize(const RunConfig& c) {
    std::ostringstream o;
    o << "rho = " << num(c.rho) << '\n'
      << "q = " << num(c.q) << '\n'
      << "eps_re = " << num(c.eps_re) << '\n'
      << "eps_im = " << num(c.eps_im) << '\n'
      << "f = " << num(c.f) << '\n'
      << "beta_hw = " << num(c.beta_hw) << '\n'
      << "zeta_min = " << (std::isnan(c.zeta_min) ? std::string("auto") : num(c.zeta_min)) << '\n'
      << "zeta_max = " << num(c.zeta_max) << '\n'
      << "points = " << c.points << '\n'
      << "lmax = " << c.lmax << '\n'
      << "representation = " << to_string(c.representation) << '\n'
      << "method = " << to_string(c.method) << '\n';
    if (!c.output_path.empty()) o << "output_path = " << c.output_path << '\n';
    return o.str();
}

}  // namespace scatdecay::app
