#include "nfield/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nfield/numerics.hpp"

namespace nfield {

namespace {

double disk_overlap_fixed(const KernelParams& k, double r, double a, int nr, int nphi) {
    const GaussRule& R = gauss_legendre(nr);
    const GaussRule& P = gauss_legendre(nphi);
    // polar integral over the disk; phi restricted to [0, pi] by symmetry
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double rho = 0.5 * a * (R.x[i] + 1.0);
        const double wr = 0.5 * a * R.w[i] * rho;
        double ang = 0.0;
        for (int j = 0; j < nphi; ++j) {
            const double phi = 0.5 * M_PI * (P.x[j] + 1.0);
            const double d2 = r * r + rho * rho - 2.0 * r * rho * std::cos(phi);
            ang += P.w[j] * connectivity_value_dim(k, 2, std::sqrt(std::max(0.0, d2)));
        }
        total += wr * ang * 0.5 * M_PI;
    }
    return 2.0 * total;
}

double disk_overlap(const KernelParams& k, double r, double a) {
    double prev = disk_overlap_fixed(k, r, a, 32, 64);
    for (int nr = 64; nr <= 512; nr *= 2) {
        const double cur = disk_overlap_fixed(k, r, a, nr, 2 * nr);
        if (std::abs(cur - prev) < 1e-9) return cur;
        prev = cur;
    }
    return prev;
}

double default_a_max(const PulseParams& p) {
    double w = std::max(p.kernel.sigma_e, p.kernel.sigma_i);
    if (p.input.kind == InputKind::gaussian_bump) w = std::max(w, p.input.sigma);
    return 10.0 * w;
}

}  // namespace

double ball_overlap(const KernelParams& k, double r, double a) {
    if (a < 0.0) throw std::invalid_argument("ball_overlap: a must be >= 0");
    if (a == 0.0) return 0.0;
    if (k.d == 1) return interval_integral_1d(k, r - a, r + a);
    if (k.d == 2) return disk_overlap(k, r, a);
    throw std::invalid_argument("ball_overlap: only d = 1, 2 supported");
}

double pulse_profile_value(const PulseParams& p, double a, double r) {
    return ball_overlap(p.kernel, r, a) + p.input.value(r);
}

double pulse_boundary_slope(const PulseParams& p, double a) {
    const KernelParams& k = p.kernel;
    if (k.d == 1) {
        return connectivity_value_dim(k, 1, 2.0 * a) - connectivity_value_dim(k, 1, 0.0) +
               p.input.derivative(a);
    }
    const double h = std::max(1e-4 * a, 1e-7);
    const double dM =
        derivative_5pt([&](double r) { return ball_overlap(k, r, a); }, a, h);
    return dM + p.input.derivative(a);
}

double input_amplitude_for_halfwidth(const PulseParams& p, double a) {
    const double s = p.input.sigma;
    return std::exp(a * a / (s * s)) * (p.theta - ball_overlap(p.kernel, a, a));
}

double static_stability_derivative(const PulseParams& p, double a) {
    const double h = std::max(1e-5 * a, 1e-8);
    return (input_amplitude_for_halfwidth(p, a + h) - input_amplitude_for_halfwidth(p, a - h)) /
           (2.0 * h);
}

PulseSolution solution_at(const PulseParams& p, double a) {
    PulseSolution s;
    s.a = a;
    s.u_prime_a_signed = pulse_boundary_slope(p, a);
    s.u_prime_a = std::abs(s.u_prime_a_signed);
    s.degenerate = s.u_prime_a < 1e-10;
    s.stable_static = static_stability_derivative(p, a) > 0.0;
    return s;
}

std::vector<PulseSolution> solve_halfwidths(const PulseParams& p, double a_max, int scan_points) {
    validate_kernel(p.kernel);
    if (a_max <= 0.0) a_max = default_a_max(p);
    auto g = [&](double a) { return pulse_profile_value(p, a, a) - p.theta; };
    const double a_lo = a_max / scan_points;
    SignScan scan = scan_sign_changes(g, a_lo, a_max, scan_points);
    std::vector<PulseSolution> out;
    for (int idx : scan.brackets) {
        const double a = brent_root(g, scan.grid[idx], scan.grid[idx + 1]);
        out.push_back(solution_at(p, a));
    }
    return out;
}

std::optional<PulseSolution> solve_pulse(const PulseParams& p, double a_max) {
    auto all = solve_halfwidths(p, a_max);
    for (auto it = all.rbegin(); it != all.rend(); ++it)
        if (it->u_prime_a_signed < 0.0) return *it;
    return std::nullopt;
}

std::vector<ExistencePoint> existence_curve(const PulseParams& p, double a_lo, double a_hi,
                                            int n) {
    std::vector<ExistencePoint> pts(n);
    parallel_for(n, [&](std::size_t i) {
        const double a = a_lo + (a_hi - a_lo) * double(i) / (n - 1);
        ExistencePoint e;
        e.a = a;
        e.I0 = input_amplitude_for_halfwidth(p, a);
        const double der = static_stability_derivative(p, a);
        e.stability_sign = std::abs(der) < 1e-9 ? 0 : (der > 0.0 ? 1 : -1);
        pts[i] = e;
    });
    return pts;
}

bool single_crossing(const PulseParams& p, double a, double r_max, int samples) {
    int crossings = 0;
    double prev = pulse_profile_value(p, a, r_max / samples) - p.theta;
    for (int i = 2; i <= samples; ++i) {
        const double cur = pulse_profile_value(p, a, r_max * i / samples) - p.theta;
        if (prev > 0.0 && cur < 0.0) ++crossings;
        if (prev < 0.0 && cur > 0.0) ++crossings;
        prev = cur;
    }
    return crossings == 1;
}

}  // namespace nfield
