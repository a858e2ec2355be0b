#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nfield/front.hpp"
#include "nfield/kernel.hpp"
#include "nfield/numerics.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace nfield;

namespace {

const double kPi = 3.14159265358979323846;

KernelParams mono_kernel() { return {1.7, 4.0, 1.2, 2.0, 1}; }        // J(0) < 0
KernelParams cross_kernel() { return {1.7, 3.0, 1.2, 2.0, 1}; }       // three crossings
KernelParams planar_kernel(double si) { return {15.0, 1.5, 12.5, si, 2}; }

FrontSolution mono_front(double I0, double s = 0.79) {
    return build_monotonous_front(mono_kernel(), InputProfile::logistic(I0, s));
}

}  // namespace

TEST_CASE("threshold tuning centers the interface") {
    KernelParams k = mono_kernel();
    const double I0 = 0.7;
    CHECK(front_threshold(k, I0) ==
          doctest::Approx(0.5 * (k.w_e - k.w_i) + 0.5 * I0).epsilon(1e-15));
    FrontSolution f = mono_front(I0);
    REQUIRE(f.crossings.size() == 1);
    CHECK(f.crossings[0] == 0.0);
    CHECK(front_profile_value(f, 0.0) == doctest::Approx(f.theta).epsilon(1e-12));
    // profile limits: active plateau left, rest right
    CHECK(front_profile_value(f, -40.0) == doctest::Approx(k.w_e - k.w_i + I0).epsilon(1e-9));
    CHECK(front_profile_value(f, 40.0) == doctest::Approx(0.0).epsilon(1e-9));
    // stored gradient matches the closed-form derivative and a finite difference
    CHECK(f.gradients.size() == 1);
    CHECK(f.gradients[0] == doctest::Approx(front_profile_derivative(f, 0.0)).epsilon(1e-12));
    const double fd = derivative_5pt([&](double x) { return front_profile_value(f, x); }, 0.0, 1e-5);
    CHECK(f.gradients[0] == doctest::Approx(fd).epsilon(1e-8));
    CHECK(f.gradients[0] < 0.0);
    // supplying the matching threshold is accepted, a wrong one is not
    CHECK_NOTHROW(build_monotonous_front(k, InputProfile::logistic(I0, 0.79), f.theta));
    CHECK_THROWS_AS(build_monotonous_front(k, InputProfile::logistic(I0, 0.79), f.theta + 0.01),
                    std::invalid_argument);
}

TEST_CASE("interface mode onset and its input window") {
    FrontSolution f = mono_front(0.7);
    auto h = front_hopf_1d(f);
    REQUIRE(h.has_value());
    CHECK(h->omega == doctest::Approx(2.2897).epsilon(2e-3));
    CHECK(h->tau_D == doctest::Approx(0.8659).epsilon(2e-3));
    CHECK(h->mode == HopfMode::front_input);
    // strong drive overwhelms the negative core: stable again
    CHECK_FALSE(front_hopf_1d(mono_front(1.2)).has_value());

    auto win = front_hopf_input_window(mono_kernel(), 0.79);
    REQUIRE(win.has_value());
    const double J0 = connectivity_value_dim(mono_kernel(), 1, 0.0);
    CHECK(J0 == doctest::Approx(-0.098733).epsilon(2e-4));
    CHECK(win->first == doctest::Approx(-4.0 * J0 / 0.79).epsilon(1e-12));
    CHECK(win->second == doctest::Approx(-8.0 * J0 / 0.79).epsilon(1e-12));
    CHECK(win->first == doctest::Approx(0.4999).epsilon(2e-4));
    CHECK(win->second == doctest::Approx(0.9998).epsilon(2e-4));
    // below the window the front itself fails to stay monotone
    CHECK_THROWS_AS(mono_front(win->first - 1e-3), std::domain_error);
    // inside: Hopf present; above: gone
    CHECK(front_hopf_1d(mono_front(win->first + 1e-3)).has_value());
    CHECK_FALSE(front_hopf_1d(mono_front(win->second + 1e-3)).has_value());
    // positive-core kernels never open a window
    CHECK_FALSE(front_hopf_input_window(KernelParams{2.0, 1.0, 1.0, 2.0, 1}, 0.79).has_value());
}

TEST_CASE("input-free fronts sit at the translation margin") {
    // pure excitation: J >= 0, V decreasing, and the interface mode is marginal
    KernelParams k{1.0, 1.0, 0.0, 1.0, 1};
    FrontSolution f = build_monotonous_front(k, InputProfile::none_input());
    CHECK(f.theta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(front_hopf_1d(f).has_value());  // R = 1: no delay destabilizes
    // negative-core kernel without input is not monotone at all
    CHECK_THROWS_AS(build_monotonous_front(mono_kernel(), InputProfile::none_input()),
                    std::domain_error);
}

TEST_CASE("three-crossing front geometry") {
    FrontSolution f = build_three_crossing_front(cross_kernel());
    CHECK(f.kind == FrontKind::three_crossing);
    CHECK(f.a == doctest::Approx(0.422167).epsilon(2e-5));
    REQUIRE(f.crossings.size() == 3);
    CHECK(f.crossings[0] == doctest::Approx(-f.a).epsilon(1e-12));
    CHECK(f.crossings[1] == 0.0);
    CHECK(f.crossings[2] == doctest::Approx(f.a).epsilon(1e-12));
    // outer crossing solves the window condition int_a^{2a} J = 0
    CHECK(interval_integral_1d(cross_kernel(), f.a, 2.0 * f.a) == doctest::Approx(0.0).epsilon(1e-10));
    // slopes alternate: down, up, down
    CHECK(f.gradients[0] < 0.0);
    CHECK(f.gradients[1] > 0.0);
    CHECK(f.gradients[2] < 0.0);
    for (int i = 0; i < 3; ++i)
        CHECK(front_profile_value(f, f.crossings[i]) == doctest::Approx(f.theta).epsilon(1e-10));
    CHECK(f.gamma1 == doctest::Approx(275.915).epsilon(1e-3));
    CHECK(f.gamma2 == doctest::Approx(543.386).epsilon(1e-3));
    // gamma identities against kernel samples
    const double J0 = connectivity_value_dim(cross_kernel(), 1, 0.0);
    const double Ja = connectivity_value_dim(cross_kernel(), 1, f.a);
    const double J2a = connectivity_value_dim(cross_kernel(), 1, 2.0 * f.a);
    CHECK(1.0 / f.gamma1 == doctest::Approx(J0 + J2a - Ja).epsilon(1e-12));
    CHECK(1.0 / f.gamma2 == doctest::Approx(J0 - 2.0 * Ja).epsilon(1e-12));
    // the monotone builder redirects here
    try {
        build_monotonous_front(cross_kernel(), InputProfile::none_input());
        CHECK(false);
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("three") != std::string::npos);
    }
}

TEST_CASE("crossing-system constants") {
    FrontSolution f = build_three_crossing_front(cross_kernel());
    FrontSystemConstants c = three_crossing_constants(f);
    CHECK(c.J0 == doctest::Approx(-0.018806).epsilon(2e-4));
    CHECK(c.Ja == doctest::Approx(-0.010323).epsilon(2e-4));
    CHECK(c.J2a == doctest::Approx(0.012107).epsilon(2e-4));
    CHECK(c.asym_target == doctest::Approx(-8.52954).epsilon(2e-4));
    CHECK(c.beta_inf == doctest::Approx(-13.067456).epsilon(2e-4));
    // translation root: 1 - alpha + beta = 0 identically, Theta_+ = 1
    CHECK(1.0 - c.alpha_inf + c.beta_inf == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(c.theta_plus - cplx(1.0, 0.0)) < 1e-10);
    CHECK(std::abs(c.theta_minus - cplx(c.beta_inf, 0.0)) < 1e-8);
}

TEST_CASE("constant-delay onsets of the crossing system") {
    FrontSolution f = build_three_crossing_front(cross_kernel());
    auto pts = three_crossing_hopf_constant(f);
    REQUIRE(pts.size() == 2);
    bool saw_asym = false, saw_sym = false;
    for (const auto& h : pts) {
        CHECK(h.residual < 1e-9);
        CHECK(std::isinf(h.c));
        if (h.mode == HopfMode::front_asym) {
            saw_asym = true;
            CHECK(h.omega == doctest::Approx(8.470720).epsilon(2e-5));
            CHECK(h.tau_D == doctest::Approx(0.199311).epsilon(2e-5));
        } else {
            saw_sym = true;
            CHECK(h.mode == HopfMode::front_sym_minus);
            CHECK(h.omega == doctest::Approx(13.029136).epsilon(2e-5));
            CHECK(h.tau_D == doctest::Approx(0.126439).epsilon(2e-5));
        }
    }
    CHECK(saw_asym);
    CHECK(saw_sym);
    // both relations vanish at each crossing
    for (const auto& h : pts) {
        auto [r1, r2] = three_crossing_dispersion(f, DelayModel{h.tau_D}, cplx(0.0, h.omega));
        if (h.mode == HopfMode::front_asym)
            CHECK(std::abs(r1) < 1e-9);
        else
            CHECK(std::abs(r2) < 1e-9);
    }
}

TEST_CASE("matrix determinant factorizes") {
    FrontSolution f = build_three_crossing_front(cross_kernel());
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const cplx lam(u(rng), 2.0 * u(rng));
        const DelayModel dm{0.3, trial % 2 ? 5.0 : std::numeric_limits<double>::infinity()};
        auto m = three_crossing_matrix_entries(f, dm, lam);
        // direct 3x3 determinant of [[m1,m2,m3],[m4,m5,m4],[m3,m2,m1]]
        const cplx det = m[0] * (m[4] * m[0] - m[1] * m[3]) -
                         m[1] * (m[3] * m[0] - m[3] * m[2]) +
                         m[2] * (m[1] * m[3] - m[4] * m[2]);
        const cplx fact = (m[0] - m[2]) * (m[4] * (m[0] + m[2]) - 2.0 * m[1] * m[3]);
        CHECK(std::abs(det - fact) < 1e-12);
    }
}

TEST_CASE("operator oracle recovers translation and both branches") {
    FrontSolution f = build_three_crossing_front(cross_kernel());
    FrontSystemConstants c = three_crossing_constants(f);
    auto eig = three_crossing_operator_eigenvalues(f);
    REQUIRE(eig.size() == 3);
    // sorted by real part: beta_inf - 1 < asym target - 1 < 0
    CHECK(std::abs(eig[0] - cplx(c.beta_inf - 1.0, 0.0)) < 1e-8);
    CHECK(std::abs(eig[1] - cplx(c.asym_target - 1.0, 0.0)) < 1e-8);
    CHECK(std::abs(eig[2]) < 1e-8);  // exact translation zero
}

TEST_CASE("propagation traces of the crossing system") {
    FrontSolution f = build_three_crossing_front(cross_kernel());
    auto [asym, sym] = three_crossing_hopf_propagation(f);
    REQUIRE(asym.points.size() > 30);
    REQUIRE(sym.points.size() > 30);
    double tau_asym_inf = -1.0, tau_sym_inf = -1.0;
    int solved_asym = 0, solved_sym = 0;
    for (const auto& cp : asym.points) {
        if (!cp.point) continue;  // out-of-window omegas stay as gaps
        ++solved_asym;
        CHECK(cp.point->residual < 1e-9);
        if (std::isinf(cp.point->c)) tau_asym_inf = cp.point->tau_D;
    }
    for (const auto& cp : sym.points) {
        if (!cp.point) continue;
        ++solved_sym;
        CHECK(cp.point->residual < 1e-9);
        if (std::isinf(cp.point->c)) tau_sym_inf = cp.point->tau_D;
    }
    CHECK(solved_asym > 30);
    CHECK(solved_sym > 30);
    CHECK(tau_asym_inf == doctest::Approx(0.199311).epsilon(1e-4));
    CHECK(tau_sym_inf == doctest::Approx(0.126439).epsilon(1e-4));
    // the symmetric mode leads at the constant-delay end
    CHECK(tau_sym_inf < tau_asym_inf);
    // sweep ordering survives the anchor insertion
    for (const auto* cur : {&asym, &sym}) {
        double prev = -1e30;
        for (const auto& cp : cur->points) {
            CHECK(cp.sweep_value >= prev);
            prev = cp.sweep_value;
        }
    }
}

TEST_CASE("eigenvector structure at the anchors") {
    FrontSolution f = build_three_crossing_front(cross_kernel());
    FrontSystemConstants c = three_crossing_constants(f);
    auto pts = three_crossing_hopf_constant(f);
    const std::vector<double> xs = {f.crossings[0], f.crossings[1], f.crossings[2]};
    for (const auto& h : pts) {
        auto mode = front_eigenmode(f, h, xs);
        REQUIRE(mode.size() == 3);
        if (h.mode == HopfMode::front_asym) {
            // (1, 0, -1) exactly, any speed
            CHECK(std::abs(mode[1]) < 1e-9);
            CHECK(std::abs(mode[0] + mode[2]) < 1e-9);
        } else {
            // symmetric, center amplitude fixed by the quadratic root
            CHECK(std::abs(mode[0] - mode[2]) < 1e-9);
            const cplx rq = 2.0 * f.gamma1 * c.Ja / (c.beta_inf - f.gamma2 * c.J0);
            CHECK(std::abs(mode[1] / mode[0] - rq) < 1e-8);
        }
    }
}

TEST_CASE("transverse spectrum of the planar front") {
    KernelParams k = planar_kernel(1.3);
    FrontSolution f = build_monotonous_front(k, InputProfile::none_input());
    // Psi(0) = 1 bit for bit: translation invariance is built in
    CHECK(front_transverse_psi(f, 0.0) == 1.0);
    // quadrature oracle at a few wavenumbers
    for (double l : {0.5, 1.5246, 2.5}) {
        const double ref = integrate_adaptive(
            [&](double y) { return connectivity_value_dim(k, 2, std::abs(y)) * std::cos(l * y); },
            -18.0, 18.0, 1e-13);
        const double J10 = connectivity_value_dim(k, 1, 0.0);
        CHECK(front_transverse_psi(f, l) == doctest::Approx(ref / J10).epsilon(1e-9));
    }
    TransverseMinimum m = front_transverse_minimum(f);
    CHECK(m.l0 == doctest::Approx(1.5246).epsilon(2e-3));
    CHECK(m.psi_min == doctest::Approx(-2.33042).epsilon(2e-4));
    // interior minimum: flat to first order
    const double dpsi =
        derivative_5pt([&](double l) { return front_transverse_psi(f, l); }, m.l0, 1e-4);
    CHECK(std::abs(dpsi) < 1e-6);

    auto h = front_transverse_hopf(f);
    REQUIRE(h.has_value());
    CHECK(h->mode == HopfMode::transverse);
    CHECK(h->l0 == doctest::Approx(1.5246).epsilon(2e-3));
    CHECK(h->omega == doctest::Approx(2.10496).epsilon(2e-4));
    CHECK(h->tau_D == doctest::Approx(0.95693).epsilon(2e-4));
}

TEST_CASE("transverse window in the inhibition width") {
    // close to the lower edge the onset delay is tiny
    auto h_lo = front_transverse_hopf(
        build_monotonous_front(planar_kernel(1.2505), InputProfile::none_input()));
    REQUIRE(h_lo.has_value());
    CHECK(h_lo->tau_D == doctest::Approx(0.00473).epsilon(2e-2));
    // below the edge the cross-section core goes negative: no monotone front at all
    CHECK_THROWS_AS(build_monotonous_front(planar_kernel(1.2), InputProfile::none_input()),
                    std::domain_error);
    // well above the divergence the spectrum stays inside the stable band
    CHECK_FALSE(front_transverse_hopf(
                    build_monotonous_front(planar_kernel(1.45), InputProfile::none_input()))
                    .has_value());
    // the delay diverges at the upper edge
    CHECK(transverse_divergence_sigma(planar_kernel(1.3), 1.26, 1.4) ==
          doctest::Approx(1.334077).epsilon(2e-4));
    auto h_hi = front_transverse_hopf(
        build_monotonous_front(planar_kernel(1.334), InputProfile::none_input()));
    REQUIRE(h_hi.has_value());
    CHECK(h_hi->tau_D > 50.0);

    BifurcationCurve cur = transverse_curve_sigma_i(planar_kernel(1.3), 1.2505, 1.333, 40);
    REQUIRE(cur.points.size() == 40);
    REQUIRE(cur.points.front().point.has_value());
    REQUIRE(cur.points.back().point.has_value());
    CHECK(cur.points.front().point->tau_D < cur.points.back().point->tau_D);
}

TEST_CASE("pure excitation never destabilizes transversely") {
    std::mt19937_64 rng(4021);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        KernelParams k{0.5 + 2.0 * u(rng), 0.5 + 1.5 * u(rng), 0.0, 1.0, 2};
        FrontSolution f = build_monotonous_front(k, InputProfile::none_input());
        CHECK_FALSE(front_transverse_hopf(f).has_value());
        // spectrum stays in (0, 1]
        for (double l : {0.3, 1.0, 3.0, 8.0}) {
            const double psi = front_transverse_psi(f, l);
            CHECK(psi > 0.0);
            CHECK(psi <= 1.0);
        }
    }
}
