#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nfield/kernel.hpp"
#include "nfield/numerics.hpp"
#include "nfield/pulse.hpp"
#include "nfield/pulse_stability.hpp"

#include <cmath>

using namespace nfield;

namespace {

PulseParams model_i(double I0) {
    PulseParams p;
    p.kernel = {1.3, 4.0, 1.1, 2.0, 1};
    p.theta = 0.3;
    p.input = InputProfile::gaussian(I0, 1.5);
    return p;
}

PulseParams model_ii(double I0) {
    PulseParams p;
    p.kernel = {1.0, 1.5, 1.5, 1.0, 1};
    p.theta = 0.2;
    p.input = InputProfile::gaussian(I0, 1.0);
    return p;
}

PulseParams bump2d(double I0) {
    PulseParams p;
    p.kernel = {2.0, 1.0, 2.5, 0.5, 2};
    p.theta = 0.3;
    p.input = InputProfile::gaussian(I0, 0.5);
    return p;
}

PulseParams sloshers2d(double I0) {
    PulseParams p;
    p.kernel = {2.4, 1.0, 2.0, 0.5, 2};
    p.theta = 0.2;
    p.input = InputProfile::gaussian(I0, 0.5);
    return p;
}

PulseSolution solved(const PulseParams& p) {
    auto s = solve_pulse(p);
    REQUIRE(s.has_value());
    return *s;
}

}  // namespace

TEST_CASE("constant-delay ratios, inverse mexican hat") {
    PulseParams p = model_i(0.4);
    PulseSolution sol = solved(p);
    CHECK(constant_delay_ratio_1d(p, sol, +1) == doctest::Approx(-2.6072).epsilon(2e-4));
    CHECK(constant_delay_ratio_1d(p, sol, -1) == doctest::Approx(-0.334).epsilon(2e-3));
}

TEST_CASE("breathing onset of the reference pulse") {
    PulseParams p = model_i(0.4);
    PulseSolution sol = solved(p);
    auto h = hopf_constant_delay_1d(p, sol, +1);
    REQUIRE(h.has_value());
    CHECK(h->omega == doctest::Approx(2.407798).epsilon(2e-5));
    CHECK(h->tau_D == doctest::Approx(0.815864).epsilon(2e-5));
    CHECK(h->mode == HopfMode::sym_plus);
    CHECK(h->residual < 1e-9);
    // characteristic equation holds at the crossing
    const cplx res = dispersion_residual_1d(p, sol, DelayModel{h->tau_D}, cplx(0.0, h->omega), +1);
    CHECK(std::abs(res) < 1e-9);
    // omega ties to the modulus condition omega = sqrt(R^2 - 1)
    const double R = constant_delay_ratio_1d(p, sol, +1);
    CHECK(h->omega == doctest::Approx(std::sqrt(R * R - 1.0)).epsilon(1e-12));
    // the antisymmetric mode stays subcritical here
    CHECK_FALSE(hopf_constant_delay_1d(p, sol, -1).has_value());
}

TEST_CASE("no breathing once the ratio is tame") {
    PulseParams p = model_i(0.65);
    PulseSolution sol = solved(p);
    CHECK(constant_delay_ratio_1d(p, sol, +1) == doctest::Approx(-0.4709).epsilon(2e-3));
    CHECK_FALSE(hopf_constant_delay_1d(p, sol, +1).has_value());
}

TEST_CASE("mexican hat onsets across the drive range") {
    struct Row {
        double I0, tau_sym;
        double tau_asym;  // < 0 means none
    };
    const Row rows[] = {
        {0.3, 0.058428, -1.0},
        {0.75, 0.681747, 0.654560},
        {0.82, 1.039481, 0.833508},
        {1.2, 8.584889, 2.848803},
    };
    for (const Row& r : rows) {
        PulseParams p = model_ii(r.I0);
        PulseSolution sol = solved(p);
        auto hs = hopf_constant_delay_1d(p, sol, +1);
        REQUIRE(hs.has_value());
        CHECK(hs->tau_D == doctest::Approx(r.tau_sym).epsilon(5e-5));
        auto ha = hopf_constant_delay_1d(p, sol, -1);
        if (r.tau_asym < 0.0) {
            CHECK_FALSE(ha.has_value());
        } else {
            REQUIRE(ha.has_value());
            CHECK(ha->tau_D == doctest::Approx(r.tau_asym).epsilon(5e-5));
            CHECK(ha->mode == HopfMode::asym_minus);
        }
    }
    // omega = 27.506058 at the weakest drive
    PulseParams p = model_ii(0.3);
    PulseSolution sol = solved(p);
    CHECK(hopf_constant_delay_1d(p, sol, +1)->omega == doctest::Approx(27.506058).epsilon(2e-5));
}

TEST_CASE("later branches add a full period") {
    PulseParams p = model_i(0.4);
    PulseSolution sol = solved(p);
    auto h0 = hopf_constant_delay_1d(p, sol, +1, 0);
    auto h1 = hopf_constant_delay_1d(p, sol, +1, 1);
    REQUIRE(h0.has_value());
    REQUIRE(h1.has_value());
    CHECK(h1->omega == doctest::Approx(h0->omega).epsilon(1e-12));
    CHECK(h1->tau_D - h0->tau_D ==
          doctest::Approx(2.0 * 3.14159265358979323846 / h0->omega).epsilon(1e-10));
}

TEST_CASE("region boundaries, inverse mexican hat") {
    HopfRegion1d reg = hopf_region_boundaries_1d(model_i(0.4));
    REQUIRE(reg.I0_star.has_value());
    REQUIRE(reg.a_star.has_value());
    CHECK(*reg.a_star == doctest::Approx(0.672808).epsilon(2e-5));
    CHECK(*reg.I0_star == doctest::Approx(0.519127).epsilon(2e-5));
    // R_+ crosses -1 exactly at the divergence point
    {
        PulseParams lo = model_i(*reg.I0_star - 1e-3);
        PulseParams hi = model_i(*reg.I0_star + 1e-3);
        CHECK(constant_delay_ratio_1d(lo, solved(lo), +1) < -1.0);
        CHECK(constant_delay_ratio_1d(hi, solved(hi), +1) > -1.0);
    }
    CHECK_FALSE(reg.asym_interval.has_value());  // sloshing needs the mexican hat
}

TEST_CASE("region boundaries, mexican hat sloshing window") {
    HopfRegion1d reg = hopf_region_boundaries_1d(model_ii(0.75));
    REQUIRE(reg.asym_interval.has_value());
    REQUIRE(reg.asym_a_interval.has_value());
    CHECK(reg.asym_interval->first == doctest::Approx(0.31084).epsilon(5e-5));
    CHECK(reg.asym_interval->second == doctest::Approx(1.52318).epsilon(5e-5));
    CHECK(reg.asym_a_interval->first == doctest::Approx(0.11641).epsilon(5e-4));
    CHECK(reg.asym_a_interval->second == doctest::Approx(1.08561).epsilon(5e-4));
    // R_- straddles -1 across each endpoint
    for (double I0 : {reg.asym_interval->first, reg.asym_interval->second}) {
        PulseParams in = model_ii(I0 + (I0 < 1.0 ? 1e-3 : -1e-3));
        PulseParams out = model_ii(I0 + (I0 < 1.0 ? -1e-3 : 1e-3));
        CHECK(constant_delay_ratio_1d(in, solved(in), -1) < -1.0);
        CHECK(constant_delay_ratio_1d(out, solved(out), -1) > -1.0);
    }
}

TEST_CASE("constant-delay sweep keeps gaps explicit") {
    BifurcationCurve cur = constant_delay_curve_1d(model_i(0.4), 0.35, 0.6, 26, +1);
    REQUIRE(cur.points.size() == 26);
    int with = 0, without = 0;
    double prev = -1.0;
    for (const auto& cp : cur.points) {
        CHECK(cp.sweep_value > prev);
        prev = cp.sweep_value;
        if (cp.point.has_value()) {
            ++with;
            CHECK(cp.point->residual < 1e-9);
        } else {
            ++without;
        }
    }
    // the sweep crosses I0* ~ 0.519: both sides populated
    CHECK(with > 0);
    CHECK(without > 0);
    // tau_D diverges approaching the boundary from below
    double tau_last = 0.0;
    for (const auto& cp : cur.points)
        if (cp.point && cp.sweep_value < 0.519) tau_last = std::max(tau_last, cp.point->tau_D);
    CHECK(tau_last > 2.0);
}

TEST_CASE("propagation delay locus, breathing mode") {
    PulseParams p = model_i(0.4);
    PulseSolution sol = solved(p);
    BifurcationCurve cur = propagation_curve_1d(p, sol, +1);
    REQUIRE(cur.points.size() > 100);
    int n_inf = 0, solved = 0;
    double tau_min = 1e30;
    for (const auto& cp : cur.points) {
        if (!cp.point) continue;  // omegas outside the admissible window
        ++solved;
        const HopfPoint& h = *cp.point;
        CHECK(h.tau_D >= 0.0);
        CHECK(h.omega > 0.0);
        if (std::isinf(h.c)) {
            ++n_inf;
            // the c -> inf asymptote reproduces the constant-delay onset
            CHECK(h.tau_D == doctest::Approx(0.815864).epsilon(1e-3));
        } else {
            CHECK(h.c > 0.0);
            CHECK(h.residual < 1e-9);
            tau_min = std::min(tau_min, h.tau_D);
        }
    }
    CHECK(solved > 50);
    CHECK(n_inf >= 1);
    // propagation lag brings the onset forward
    CHECK(tau_min < 0.815864);
}

TEST_CASE("finite-speed points satisfy the full dispersion relation") {
    PulseParams p = model_ii(0.75);
    PulseSolution sol = solved(p);
    for (int sign : {+1, -1}) {
        BifurcationCurve cur = propagation_curve_1d(p, sol, sign);
        int checked = 0;
        for (const auto& cp : cur.points) {
            if (!cp.point || std::isinf(cp.point->c)) continue;
            const DelayModel dm{cp.point->tau_D, cp.point->c};
            const cplx res =
                dispersion_residual_1d(p, sol, dm, cplx(0.0, cp.point->omega), sign);
            CHECK(std::abs(res) < 1e-9);
            if (++checked > 40) break;
        }
        CHECK(checked > 10);
    }
}

TEST_CASE("radial coefficient reduces to R_+ in 1d") {
    PulseParams p = model_i(0.4);
    PulseSolution sol = solved(p);
    CHECK(phi_radial(p, sol) ==
          doctest::Approx(constant_delay_ratio_1d(p, sol, +1)).epsilon(1e-12));
}

TEST_CASE("2d breathing bump") {
    PulseParams p = bump2d(1.0);
    PulseSolution sol = solved(p);
    CHECK(phi_radial(p, sol) == doctest::Approx(-3.5403).epsilon(2e-3));
    auto h = hopf_radial(p, sol);
    REQUIRE(h.has_value());
    CHECK(h->omega == doctest::Approx(3.3961).epsilon(2e-3));
    CHECK(h->tau_D == doctest::Approx(0.5468).epsilon(2e-3));
    CHECK(h->mode == HopfMode::radial);
}

TEST_CASE("2d angular spectrum") {
    PulseParams p = sloshers2d(3.0);
    PulseSolution sol = solved(p);
    // n = 0 must coincide with the radial coefficient by construction
    CHECK(angular_mode_coefficient_2d(p, sol, 0) == doctest::Approx(phi_radial(p, sol)).epsilon(1e-13));
    CHECK(angular_mode_coefficient_2d(p, sol, 1) == doctest::Approx(-1.883).epsilon(2e-3));
    CHECK(angular_mode_coefficient_2d(p, sol, 2) == doctest::Approx(-1.756).epsilon(2e-3));
    CHECK(angular_mode_coefficient_2d(p, sol, 3) == doctest::Approx(-1.072).epsilon(3e-3));
    // coefficients decay with the mode index
    CHECK(std::abs(angular_mode_coefficient_2d(p, sol, 10)) <
          std::abs(angular_mode_coefficient_2d(p, sol, 1)));

    auto h0 = hopf_radial(p, sol);
    auto h1 = hopf_angular_2d(p, sol, 1);
    auto h2 = hopf_angular_2d(p, sol, 2);
    auto h3 = hopf_angular_2d(p, sol, 3);
    REQUIRE(h0.has_value());
    REQUIRE(h1.has_value());
    REQUIRE(h2.has_value());
    REQUIRE(h3.has_value());
    CHECK(h0->tau_D == doctest::Approx(5.5909).epsilon(3e-3));
    CHECK(h1->tau_D == doctest::Approx(1.3349).epsilon(3e-3));
    CHECK(h2->tau_D == doctest::Approx(1.5084).epsilon(3e-3));
    CHECK(h3->tau_D == doctest::Approx(7.1785).epsilon(3e-3));
    // rotational sloshing comes first here
    CHECK(h1->tau_D < h0->tau_D);
    CHECK(h1->tau_D < h2->tau_D);
}

TEST_CASE("weak 2d drive breathes first") {
    PulseParams p = sloshers2d(0.5);
    PulseSolution sol = solved(p);
    auto h0 = hopf_radial(p, sol);
    auto h1 = hopf_angular_2d(p, sol, 1);
    REQUIRE(h0.has_value());
    REQUIRE(h1.has_value());
    CHECK(h0->tau_D == doctest::Approx(0.3094).epsilon(3e-3));
    CHECK(h1->tau_D == doctest::Approx(1.4070).epsilon(3e-3));
    CHECK(h0->tau_D < h1->tau_D);
}

TEST_CASE("2d sweep covers both radial and first angular mode") {
    BifurcationCurve c0 = mode_curve_2d(sloshers2d(0.0), 0, 0.5, 3.0, 12);
    BifurcationCurve c1 = mode_curve_2d(sloshers2d(0.0), 1, 0.5, 3.0, 12);
    REQUIRE(c0.points.size() == 12);
    REQUIRE(c1.points.size() == 12);
    CHECK(c0.points.front().point.has_value());
    CHECK(c1.points.back().point.has_value());
}

TEST_CASE("eigenmodes carry the right parity") {
    PulseParams p = model_ii(0.82);
    PulseSolution sol = solved(p);
    std::vector<double> xs;
    for (int i = -40; i <= 40; ++i) xs.push_back(0.05 * i);
    for (int sign : {+1, -1}) {
        auto h = hopf_constant_delay_1d(p, sol, sign);
        REQUIRE(h.has_value());
        auto mode = eigenmode_1d(p, sol, *h, xs);
        REQUIRE(mode.size() == xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::size_t j = xs.size() - 1 - i;  // mirror index
            const cplx want = sign > 0 ? mode[j] : -mode[j];
            CHECK(std::abs(mode[i] - want) < 1e-9);
        }
    }
    // normalization pins the threshold point
    auto h = hopf_constant_delay_1d(p, sol, +1);
    auto mode = eigenmode_1d(p, sol, *h, {sol.a});
    CHECK(std::abs(mode[0] - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("discretized operator confirms the point spectrum") {
    PulseParams p = model_i(0.4);
    PulseSolution sol = solved(p);
    // grid spacing divides the half-width so +-a are collocation points
    const double h = sol.a / 40.0;
    const int K = int(std::ceil(4.0 / h));
    std::vector<double> xs;
    for (int i = -K; i <= K; ++i) xs.push_back(i * h);
    bool coarse = true;
    auto eig = linearized_operator_eigenvalues_1d(p, sol, xs, &coarse);
    CHECK_FALSE(coarse);
    REQUIRE(!eig.empty());
    // instantaneous spectrum: lambda = R_+- - 1 plus the -1 bulk
    const double lp = constant_delay_ratio_1d(p, sol, +1) - 1.0;
    const double lm = constant_delay_ratio_1d(p, sol, -1) - 1.0;
    double best_p = 1e30, best_m = 1e30;
    for (double l : eig) {
        best_p = std::min(best_p, std::abs(l - lp));
        best_m = std::min(best_m, std::abs(l - lm));
    }
    CHECK(best_p < 1e-8);
    CHECK(best_m < 1e-8);
}
