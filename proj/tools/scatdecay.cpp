// Command-line driver: curve | compare | effmed | selfcheck.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "app/checks.hpp"
#include "app/commands.hpp"
#include "app/config.hpp"
#include "scatdecay/errors.hpp"

using namespace scatdecay;
using namespace scatdecay::app;

namespace {

struct Flags {
    std::string preset, config_path, out, rep, method, level = "quick";
    double rho = 0, q = 0, eps_re = 0, eps_im = 0, f = 0, beta_hw = 0, zeta_min = 0, zeta_max = 0;
    int points = 0, lmax = 0;
    bool inject_sign_flip = false;
};

void add_run_flags(CLI::App* c, Flags& fl) {
    c->add_option("--preset", fl.preset, "figure preset fig1..fig7");
    c->add_option("--config", fl.config_path, "key = value config file");
    c->add_option("--rho", fl.rho, "kR of the domain");
    c->add_option("--q", fl.q, "ka of one scatterer");
    c->add_option("--eps-re", fl.eps_re);
    c->add_option("--eps-im", fl.eps_im);
    c->add_option("--f", fl.f, "filling fraction");
    c->add_option("--beta-hw", fl.beta_hw, "beta hbar omega; inf for cold");
    c->add_option("--zeta-min", fl.zeta_min);
    c->add_option("--zeta-max", fl.zeta_max);
    c->add_option("--points", fl.points);
    c->add_option("--lmax", fl.lmax, "amplitude order, 0 = automatic");
    c->add_option("--rep", fl.rep, "sum | integral | both");
    c->add_option("--method", fl.method, "closed | quadrature | auto");
    c->add_option("--out", fl.out, "output file (default stdout)");
}

// preset, then config file, then explicit flags
RunConfig build_config(const CLI::App* c, const Flags& fl) {
    RunConfig cfg;
    if (!fl.preset.empty()) cfg = preset(fl.preset);
    if (!fl.config_path.empty()) {
        std::ifstream in(fl.config_path);
        if (!in) throw DomainError("cannot read config file " + fl.config_path);
        std::stringstream ss;
        ss << in.rdbuf();
        apply_config_text(cfg, ss.str());
    }
    auto given = [&](const char* name) { return c->count(name) > 0; };
    if (given("--rho")) cfg.rho = fl.rho;
    if (given("--q")) cfg.q = fl.q;
    if (given("--eps-re")) cfg.eps_re = fl.eps_re;
    if (given("--eps-im")) cfg.eps_im = fl.eps_im;
    if (given("--f")) cfg.f = fl.f;
    if (given("--beta-hw")) cfg.beta_hw = fl.beta_hw;
    if (given("--zeta-min")) cfg.zeta_min = fl.zeta_min;
    if (given("--zeta-max")) cfg.zeta_max = fl.zeta_max;
    if (given("--points")) cfg.points = fl.points;
    if (given("--lmax")) cfg.lmax = fl.lmax;
    if (given("--rep")) cfg.representation = parse_representation(fl.rep);
    if (given("--method")) cfg.method = parse_method(fl.method);
    if (given("--out")) cfg.output_path = fl.out;
    cfg.validate();
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream o(cfg.output_path, std::ios::binary);
    if (!o) throw DomainError("cannot write " + cfg.output_path);
    o << text;
}

int run(const std::string& cmd, const CLI::App* sub, const Flags& fl) {
    if (cmd == "selfcheck") {
        if (fl.level != "quick" && fl.level != "full") throw DomainError("level must be quick or full");
        const auto results = run_selfcheck(fl.level == "full" ? Level::full : Level::quick, fl.inject_sign_flip);
        std::string failed;
        for (const auto& r : results) {
            std::cout << format_check(r) << '\n';
            if (!r.pass) failed += (failed.empty() ? "" : ",") + r.id;
        }
        if (!failed.empty()) {
            std::cerr << "selfcheck failed: " << failed << '\n';
            return kExitSelfcheck;
        }
        return kExitOk;
    }
    RunConfig cfg = build_config(sub, fl);
    if (cmd == "curve") {
        emit(cfg, curve_csv(run_curve(cfg)));
        if (cfg.representation == Representation::both) {
            // rows come from the integral representation; the sum one vouches for them
            const CompareReport r = run_compare(cfg);
            std::cerr << format_report(r);
            if (!r.ok()) return kExitMismatch;
        }
        return kExitOk;
    }
    if (cmd == "compare") {
        if (sub->count("--rep") && cfg.representation != Representation::both)
            throw DomainError("compare needs --rep both");
        cfg.representation = Representation::both;
        const CompareReport r = run_compare(cfg);
        emit(cfg, format_report(r));
        if (!r.ok()) {
            std::cerr << "representations disagree: worst " << fmt(r.worst()) << " at zeta="
                      << fmt(r.channel[static_cast<std::size_t>(r.worst_channel())].zeta) << '\n';
            return kExitMismatch;
        }
        return kExitOk;
    }
    emit(cfg, effmed_csv(cfg, run_effmed(cfg)));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decay-rate correction functions near a domain of random scatterers"};
    app.require_subcommand(1);
    Flags fl;
    std::map<std::string, CLI::App*> subs;
    subs["curve"] = app.add_subcommand("curve", "F functions and rates on a zeta grid (CSV)");
    subs["compare"] = app.add_subcommand("compare", "sum vs integral representation");
    subs["effmed"] = app.add_subcommand("effmed", "effective medium vs discrete scatterers (CSV)");
    for (auto& [name, c] : subs) add_run_flags(c, fl);
    auto* sc = app.add_subcommand("selfcheck", "identity suites");
    sc->add_option("--level", fl.level, "quick | full");
    sc->add_flag("--inject-sign-flip", fl.inject_sign_flip, "mutation test: flip the amplitude signs");
    subs["selfcheck"] = sc;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }
    std::string cmd;
    for (auto& [name, c] : subs)
        if (c->parsed()) cmd = name;
    try {
        return run(cmd, subs[cmd], fl);
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure at zeta=" << e.zeta() << " lmax=" << e.lmax() << ": " << e.what() << '\n';
        return kExitConvergence;
    } catch (const OrderOverflowError& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
