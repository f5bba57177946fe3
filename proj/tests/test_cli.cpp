#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "app/parallel.hpp"
#include "scatdecay/errors.hpp"

using namespace scatdecay;
using namespace scatdecay::app;

TEST_CASE("config text") {
    RunConfig c;
    apply_config_text(c, "# domain\nrho = 8\n  q=0.25  # small\n\neps_im = 0.1\nbeta_hw = inf\nrepresentation = both\n");
    CHECK(c.rho == 8.0);
    CHECK(c.q == 0.25);
    CHECK(c.eps_im == 0.1);
    CHECK(std::isinf(c.beta_hw));
    CHECK(c.representation == Representation::both);
    CHECK_THROWS_AS(apply_config_text(c, "rho 8\n"), DomainError);
    CHECK_THROWS_AS(apply_config_text(c, "colour = red\n"), DomainError);
    CHECK_THROWS_AS(apply_config_text(c, "points = 3.5\n"), DomainError);
    CHECK_THROWS_AS(apply_config_text(c, "method = simpson\n"), DomainError);
}

TEST_CASE("config round trip") {
    for (const char* name : {"fig1", "fig3", "fig4", "fig7"}) {
        RunConfig c = preset(name);
        c.zeta_max = 17.125;
        c.lmax = 12;
        c.method = JMethod::quadrature;
        const std::string once = serialize(c);
        RunConfig back;
        apply_config_text(back, once);
        CHECK(serialize(back) == once);
    }
    RunConfig odd;
    odd.rho = 0.1 + 0.2;
    odd.zeta_min = 1.0 / 3.0 + 7;
    RunConfig back;
    apply_config_text(back, serialize(odd));
    CHECK(back.rho == odd.rho);
    CHECK(back.zeta_min == odd.zeta_min);
}

TEST_CASE("presets carry the caption parameters") {
    const RunConfig f1 = preset("fig1");
    CHECK(f1.rho == 6.0);
    CHECK(f1.q == 0.5);
    CHECK(f1.eps_re == 3.0);
    CHECK(f1.eps_im == 0.5);
    CHECK(std::isinf(f1.beta_hw));
    CHECK(preset("fig2").eps_im == 0.1);
    CHECK(preset("fig3").eps_im == 0.01);
    CHECK(preset("fig4").beta_hw == 1.0);
    CHECK(preset("fig6").beta_hw == 1.0);
    CHECK(preset("fig7").eps_im == 0.1);
    CHECK_THROWS_AS(preset("fig8"), DomainError);
    // a preset line in a file keeps grid settings made before it
    RunConfig c;
    apply_config_text(c, "points = 7\npreset = fig4\n");
    CHECK(c.points == 7);
    CHECK(c.beta_hw == 1.0);
}

TEST_CASE("validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.zeta_lo() == doctest::Approx(6.6));
    const auto g = zeta_grid(c);
    CHECK(g.size() == 400);
    CHECK(g.front() == doctest::Approx(6.6));
    CHECK(g.back() == 30.0);
    c.zeta_min = 6.5;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = RunConfig{};
    c.points = 1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = RunConfig{};
    c.eps_im = -0.1;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = RunConfig{};
    c.method = JMethod::closed;
    c.lmax = 80;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("parallel map keeps order") {
    std::vector<int> in(200);
    for (int i = 0; i < 200; ++i) in[static_cast<std::size_t>(i)] = i;
    const auto out = parallel_map(in, [](int i) { return i * i; }, 7);
    for (int i = 0; i < 200; ++i) CHECK(out[static_cast<std::size_t>(i)] == i * i);
    CHECK_THROWS_WITH(parallel_map(in, [](int i) {
        if (i == 13 || i == 150) throw std::runtime_error("bad " + std::to_string(i));
        return i;
    }, 4), "bad 13");
}

TEST_CASE("curve csv is deterministic") {
    RunConfig c = preset("fig4");
    c.points = 9;
    const std::string a = curve_csv(run_curve(c));
    setenv("SCATDECAY_THREADS", "1", 1);
    const std::string b = curve_csv(run_curve(c));
    unsetenv("SCATDECAY_THREADS");
    CHECK(a == b);
    CHECK(a.rfind("zeta,F_c_par,F_c_perp,F_d_par,F_d_perp,F_r_par,F_r_perp,F_tot_par,F_tot_perp,gamma_ratio,gamma_abs_ratio\n", 0) == 0);
    CHECK(a.find('\r') == std::string::npos);
    CHECK(std::count(a.begin(), a.end(), '\n') == 10);
    CHECK(fmt(1.0 / 3.0) == "0.333333333333");
    CHECK(fmt(-2.5e-7) == "-2.5e-07");
    // the sum representation writes the same numbers to ~11 digits
    c.representation = Representation::sum;
    const auto rs = run_curve(c);
    c.representation = Representation::integral;
    const auto ri = run_curve(c);
    for (std::size_t i = 0; i < rs.size(); ++i) CHECK(rs[i].F.F_c_perp == doctest::Approx(ri[i].F.F_c_perp).epsilon(1e-9));
}

TEST_CASE("compare and its negative control") {
    RunConfig c = preset("fig1");
    c.points = 12;
    const CompareReport ok = run_compare(c);
    CHECK(ok.ok());
    CHECK(ok.points == 12);
    c.lmax = 2;
    const CompareReport bad = run_compare(c);
    CHECK_FALSE(bad.ok());
    const std::string text = format_report(bad);
    for (const char* ch : {"F_c_par", "F_c_perp", "F_d_par", "F_d_perp"}) CHECK(text.find(ch) != std::string::npos);
}

TEST_CASE("effmed csv") {
    RunConfig c = preset("fig7");
    c.points = 3;
    c.zeta_min = 20.0;
    c.f = 0.0;
    const std::string csv = effmed_csv(c, run_effmed(c));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("zeta,eps_eff_re,eps_eff_im,", 0) == 0);
    while (std::getline(in, line)) CHECK(line.find(",1,0,") != std::string::npos);
}
