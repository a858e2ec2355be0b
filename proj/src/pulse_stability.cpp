#include "nfield/pulse_stability.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfield {

namespace {

void require_nondegenerate(const PulseSolution& sol) {
    if (sol.u_prime_a < 1e-10)
        throw std::domain_error("pulse tangency: |U'(a)| ~ 0, dispersion undefined");
}

double sweep_value_at(double lo, double hi, int i, int n) {
    return n > 1 ? lo + (hi - lo) * double(i) / (n - 1) : lo;
}

}  // namespace

cplx dispersion_residual_1d(const PulseParams& p, const PulseSolution& sol,
                            const DelayModel& delays, cplx lambda, int sign) {
    require_nondegenerate(sol);
    const double J0 = connectivity_value_dim(p.kernel, 1, 0.0);
    const double J2a = connectivity_value_dim(p.kernel, 1, 2.0 * sol.a);
    const cplx prop =
        delays.finite_speed() ? std::exp(-2.0 * lambda * sol.a / delays.c) : cplx(1.0);
    const cplx rhs = (J0 + double(sign) * J2a * prop) / sol.u_prime_a;
    return characteristic_value(lambda, delays.tau_D) - rhs;
}

double constant_delay_ratio_1d(const PulseParams& p, const PulseSolution& sol, int sign) {
    require_nondegenerate(sol);
    const double J0 = connectivity_value_dim(p.kernel, 1, 0.0);
    const double J2a = connectivity_value_dim(p.kernel, 1, 2.0 * sol.a);
    return (J0 + double(sign) * J2a) / sol.u_prime_a;
}

std::optional<HopfPoint> hopf_constant_delay_1d(const PulseParams& p, const PulseSolution& sol,
                                                int sign, int branch) {
    const double R = constant_delay_ratio_1d(p, sol, sign);
    auto h = hopf_from_target(cplx(R, 0.0), sign > 0 ? HopfMode::sym_plus : HopfMode::asym_minus,
                              branch);
    if (!h) return std::nullopt;
    const DelayModel dm{h->tau_D, std::numeric_limits<double>::infinity()};
    h->residual = std::abs(dispersion_residual_1d(p, sol, dm, cplx(0.0, h->omega), sign));
    return h;
}

HopfRegion1d hopf_region_boundaries_1d(const PulseParams& p) {
    if (p.kernel.d != 1)
        throw std::invalid_argument("hopf_region_boundaries_1d: 1d only");
    const KernelParams& k = p.kernel;
    const double sig = p.input.sigma;
    const double J0 = connectivity_value_dim(k, 1, 0.0);
    const double a_max = 10.0 * std::max({k.sigma_e, k.sigma_i, sig});
    HopfRegion1d reg;
    reg.I0_left = p.theta;

    // Symmetric curve divergence: along the existence curve, R_+ = -1 reads
    // |I'(a)| = -2 J(0), i.e. theta - H(2a) + J(0) sigma^2/a = 0; the matching
    // input amplitude is I0* = -J(0) (sigma^2/a) e^{(a/sigma)^2}.
    if (J0 < 0.0) {
        auto F = [&](double a) {
            return p.theta - antiderivative_1d(k, 2.0 * a) + J0 * sig * sig / a;
        };
        SignScan scan = scan_sign_changes(F, a_max / 4000.0, a_max, 4000);
        if (!scan.brackets.empty()) {
            const int i = scan.brackets.front();
            const double a_star = brent_root(F, scan.grid[i], scan.grid[i + 1]);
            reg.a_star = a_star;
            reg.I0_star = input_amplitude_for_halfwidth(p, a_star);
        }
    }

    // Antisymmetric window: R_- < -1 reads 2 (J(2a) - J(0)) > |I'(a)| along the
    // existence curve.
    auto G = [&](double a) {
        return 2.0 * (connectivity_value_dim(k, 1, 2.0 * a) - J0) -
               (2.0 * a / (sig * sig)) * (p.theta - antiderivative_1d(k, 2.0 * a));
    };
    SignScan scan = scan_sign_changes(G, a_max / 4000.0, a_max, 4000);
    std::vector<double> roots;
    for (int i : scan.brackets) roots.push_back(brent_root(G, scan.grid[i], scan.grid[i + 1]));
    if (roots.size() >= 2) {
        const double a_m = roots.front(), a_M = roots.back();
        if (G(0.5 * (a_m + a_M)) > 0.0) {
            reg.asym_a_interval = {a_m, a_M};
            reg.asym_interval = {input_amplitude_for_halfwidth(p, a_m),
                                 input_amplitude_for_halfwidth(p, a_M)};
        }
    }
    return reg;
}

std::vector<cplx> eigenmode_1d(const PulseParams& p, const PulseSolution& sol, const HopfPoint& h,
                               const std::vector<double>& xs) {
    const double s = h.mode == HopfMode::asym_minus ? -1.0 : 1.0;
    const cplx lambda(0.0, h.omega);
    auto term = [&](double y) {
        const double r = std::abs(y);
        const cplx e = std::isfinite(h.c) ? std::exp(-lambda * r / h.c) : cplx(1.0);
        return connectivity_value_dim(p.kernel, 1, r) * e;
    };
    const cplx norm = term(0.0) + s * term(2.0 * sol.a);
    std::vector<cplx> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        out[i] = (term(xs[i] - sol.a) + s * term(xs[i] + sol.a)) / norm;
    return out;
}

BifurcationCurve constant_delay_curve_1d(PulseParams p, double I0_lo, double I0_hi, int n,
                                         int sign) {
    BifurcationCurve curve;
    curve.sweep_parameter = "I0";
    curve.points.resize(n);
    parallel_for(n, [&](std::size_t i) {
        PulseParams q = p;
        q.input.I0 = sweep_value_at(I0_lo, I0_hi, int(i), n);
        CurvePoint cp;
        cp.sweep_value = q.input.I0;
        auto sol = solve_pulse(q);
        if (sol && !sol->degenerate) {
            if (auto h = hopf_constant_delay_1d(q, *sol, sign)) cp.point = *h;
        }
        curve.points[i] = cp;
    });
    return curve;
}

BifurcationCurve propagation_curve_1d(const PulseParams& p, const PulseSolution& sol, int sign,
                                      double omega_lo, double omega_hi, int n_sweep) {
    require_nondegenerate(sol);
    TwoPointDispersion td;
    td.a = sol.a;
    td.m = sol.u_prime_a;
    td.P = connectivity_value_dim(p.kernel, 1, 0.0);
    td.Q = connectivity_value_dim(p.kernel, 1, 2.0 * sol.a);
    td.s = sign;
    return trace_two_point_curve(td, sign > 0 ? HopfMode::sym_plus : HopfMode::asym_minus,
                                 omega_lo, omega_hi, n_sweep);
}

double angular_mode_coefficient_2d(const PulseParams& p, const PulseSolution& sol, int n) {
    require_nondegenerate(sol);
    if (p.kernel.d != 2)
        throw std::invalid_argument("angular_mode_coefficient_2d: d = 2 only");
    const double a = sol.a;
    auto f = [&](double phi) {
        return connectivity_value_dim(p.kernel, 2, 2.0 * a * std::abs(std::sin(0.5 * phi))) *
               std::cos(n * phi);
    };
    return a * integrate_adaptive(f, 0.0, 2.0 * M_PI, 1e-12) / sol.u_prime_a;
}

double phi_radial(const PulseParams& p, const PulseSolution& sol) {
    if (p.kernel.d == 1) return constant_delay_ratio_1d(p, sol, +1);
    if (p.kernel.d == 2) return angular_mode_coefficient_2d(p, sol, 0);
    throw std::invalid_argument("phi_radial: d = 1, 2 only");
}

namespace {

std::optional<HopfPoint> hopf_from_real_target(double target, HopfMode mode, int n, int branch) {
    auto h = hopf_from_target(cplx(target, 0.0), mode, branch);
    if (!h) return std::nullopt;
    h->n = n;
    h->residual =
        std::abs(characteristic_value(cplx(0.0, h->omega), h->tau_D) - cplx(target, 0.0));
    return h;
}

}  // namespace

std::optional<HopfPoint> hopf_radial(const PulseParams& p, const PulseSolution& sol, int branch) {
    return hopf_from_real_target(phi_radial(p, sol), HopfMode::radial, 0, branch);
}

std::optional<HopfPoint> hopf_angular_2d(const PulseParams& p, const PulseSolution& sol, int n,
                                         int branch) {
    return hopf_from_real_target(angular_mode_coefficient_2d(p, sol, n), HopfMode::angular, n,
                                 branch);
}

BifurcationCurve mode_curve_2d(PulseParams p, int mode_n, double I0_lo, double I0_hi, int n) {
    if (p.kernel.d != 2) throw std::invalid_argument("mode_curve_2d: d = 2 only");
    BifurcationCurve curve;
    curve.sweep_parameter = "I0";
    curve.points.resize(n);
    // M(a,a) does not depend on I0: scan it once and reuse across the sweep
    const int scan_points = 2000;
    const double a_max =
        10.0 * std::max({p.kernel.sigma_e, p.kernel.sigma_i, p.input.sigma});
    const double a_lo = a_max / scan_points;
    std::vector<double> agrid(scan_points), Ma(scan_points);
    parallel_for(scan_points, [&](std::size_t i) {
        agrid[i] = a_lo + (a_max - a_lo) * double(i) / (scan_points - 1);
        Ma[i] = ball_overlap(p.kernel, agrid[i], agrid[i]);
    });
    const double sig = p.input.sigma;
    parallel_for(n, [&](std::size_t i) {
        PulseParams q = p;
        q.input.I0 = sweep_value_at(I0_lo, I0_hi, int(i), n);
        CurvePoint cp;
        cp.sweep_value = q.input.I0;
        auto g = [&](double a) { return pulse_profile_value(q, a, a) - q.theta; };
        // widest downward crossing from the cached scan
        double prev = Ma[0] + q.input.I0 * std::exp(-agrid[0] * agrid[0] / (sig * sig)) - q.theta;
        int bracket = -1;
        for (int j = 1; j < scan_points; ++j) {
            const double cur =
                Ma[j] + q.input.I0 * std::exp(-agrid[j] * agrid[j] / (sig * sig)) - q.theta;
            if (prev > 0.0 && cur < 0.0) bracket = j - 1;
            prev = cur;
        }
        if (bracket >= 0) {
            const double a = brent_root(g, agrid[bracket], agrid[bracket + 1]);
            PulseSolution sol = solution_at(q, a);
            if (!sol.degenerate && sol.u_prime_a_signed < 0.0) {
                auto h = mode_n == 0 ? hopf_radial(q, sol) : hopf_angular_2d(q, sol, mode_n);
                if (h) cp.point = *h;
            }
        }
        curve.points[i] = cp;
    });
    return curve;
}

std::vector<double> linearized_operator_eigenvalues_1d(const PulseParams& p,
                                                       const PulseSolution& sol,
                                                       const std::vector<double>& xs,
                                                       bool* coarse_warning) {
    require_nondegenerate(sol);
    const int N = int(xs.size());
    if (N < 3) throw std::invalid_argument("oracle grid too small");
    int ip = 0, im = 0;
    for (int i = 1; i < N; ++i) {
        if (std::abs(xs[i] - sol.a) < std::abs(xs[ip] - sol.a)) ip = i;
        if (std::abs(xs[i] + sol.a) < std::abs(xs[im] + sol.a)) im = i;
    }
    const double dx = (xs.back() - xs.front()) / (N - 1);
    if (coarse_warning)
        *coarse_warning = dx > sol.a / 20.0 || std::abs(xs[ip] - sol.a) > 1e-9 ||
                          std::abs(xs[im] + sol.a) > 1e-9;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        M(i, i) = -1.0;
        M(i, ip) += connectivity_value_dim(p.kernel, 1, std::abs(xs[i] - sol.a)) / sol.u_prime_a;
        M(i, im) += connectivity_value_dim(p.kernel, 1, std::abs(xs[i] + sol.a)) / sol.u_prime_a;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
    std::vector<double> ev(N);
    for (int i = 0; i < N; ++i) ev[i] = es.eigenvalues()[i].real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace nfield
