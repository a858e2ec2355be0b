#pragma once

#include <optional>
#include <vector>

#include "nfield/kernel.hpp"

namespace nfield {

// Stationary radially symmetric pulses: U(r) = M(r,a) + I(r) with U(a) = theta,
// U > theta inside the ball of radius a and U < theta outside.

struct PulseParams {
    KernelParams kernel;        // carries the dimension
    double theta = 0.3;
    InputProfile input;         // gaussian_bump or none
};

struct PulseSolution {
    double a = 0.0;             // half-width (1d) / radius (2d)
    double u_prime_a = 0.0;     // |U'(a)| > 0
    double u_prime_a_signed = 0.0;  // dU/dr at r = a (negative for a genuine pulse)
    bool degenerate = false;    // |U'(a)| below tangency tolerance
    bool stable_static = false; // dI0/da > 0 along the existence curve
};

// M(r,a) = integral of J_d(|x - r e1|) over the ball of radius a.
// d=1: closed form via erf; d=2: tensorized Gauss-Legendre, refined to ~1e-9 abs.
double ball_overlap(const KernelParams& k, double r, double a);

// U(r) for given half-width and input
double pulse_profile_value(const PulseParams& p, double a, double r);

// signed dU/dr at r=a.  d=1 closed form J(2a) - J(0) + I'(a); d=2 five-point
// central differences with Richardson step on the quadrature profile.
double pulse_boundary_slope(const PulseParams& p, double a);

// I0 making a the half-width: I0(a) = e^{a^2/sigma^2} (theta - M(a,a))
double input_amplitude_for_halfwidth(const PulseParams& p, double a);

// sign of d/da input_amplitude_for_halfwidth (central difference). > 0 means the
// pulse is stable for the non-delayed equation.
double static_stability_derivative(const PulseParams& p, double a);

// package a known half-width with its slope / degeneracy / stability fields
PulseSolution solution_at(const PulseParams& p, double a);

// all half-widths a in (0, a_max] with U(a) = theta at the input carried by p,
// found by a uniform sign-scan followed by root polishing; ascending in a.
std::vector<PulseSolution> solve_halfwidths(const PulseParams& p, double a_max = 0.0,
                                            int scan_points = 2000);
// widest solution, if any
std::optional<PulseSolution> solve_pulse(const PulseParams& p, double a_max = 0.0);

struct ExistencePoint {
    double a = 0.0;
    double I0 = 0.0;
    int stability_sign = 0;  // sign of dI0/da; 0 flags a fold
};

// existence curve a -> I0(a) on a uniform grid (drives the I0-curve figures)
std::vector<ExistencePoint> existence_curve(const PulseParams& p, double a_lo, double a_hi, int n);

// true if the sampled profile crosses theta exactly once on (0, r_max]
bool single_crossing(const PulseParams& p, double a, double r_max, int samples = 800);

}  // namespace nfield
