#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nfield/hopf.hpp"
#include "nfield/pulse.hpp"

namespace nfield {

// Linear stability of stationary pulses.  Point spectrum comes from perturbations
// supported on the threshold set; the characteristic equation in 1d reads
//   (1 + lambda) e^{lambda tau_D} = (J(0) +/- J(2a) e^{-2 lambda a / c}) / |U'(a)|
// with + the symmetric (breathing) and - the antisymmetric (sloshing) mode.

// residual of the relation above at a given lambda; sign = +1 or -1
cplx dispersion_residual_1d(const PulseParams& p, const PulseSolution& sol,
                            const DelayModel& delays, cplx lambda, int sign);

// R_+/- = (J(0) +/- J(2a)) / |U'(a)|  (constant-delay targets)
double constant_delay_ratio_1d(const PulseParams& p, const PulseSolution& sol, int sign);

// Hopf point of the constant-delay problem (c = inf); none when |R| <= 1
std::optional<HopfPoint> hopf_constant_delay_1d(const PulseParams& p, const PulseSolution& sol,
                                                int sign, int branch = 0);

// Region boundaries of the 1d symmetric/asymmetric Hopf sets in the I0 direction
struct HopfRegion1d {
    double I0_left = 0.0;  // theta: below it no pulse exists (inverse Mexican hat)
    std::optional<double> a_star;   // where the sym curve diverges (omega -> 0)
    std::optional<double> I0_star;
    std::optional<std::pair<double, double>> asym_interval;    // [I_m, I_M]
    std::optional<std::pair<double, double>> asym_a_interval;  // [a_m, a_M]
};
HopfRegion1d hopf_region_boundaries_1d(const PulseParams& p);

// complex eigenmode samples p_+/-(x) at lambda = i omega, normalized p(a) = 1
std::vector<cplx> eigenmode_1d(const PulseParams& p, const PulseSolution& sol, const HopfPoint& h,
                               const std::vector<double>& xs);

// constant-delay Hopf curve over an I0 sweep (c = inf); gaps kept explicit
BifurcationCurve constant_delay_curve_1d(PulseParams p, double I0_lo, double I0_hi, int n,
                                         int sign);

// Propagation-delay Hopf locus: for each omega in a log-spaced sweep solve the
// modulus condition for tau_D (closed form through a cos equation), then recover c
// from the phase wound across the pulse width.  Emits all branch points, ordered by
// omega; c = inf rows mark the constant-delay asymptote (refined by bisection).
BifurcationCurve propagation_curve_1d(const PulseParams& p, const PulseSolution& sol, int sign,
                                      double omega_lo = 1e-3, double omega_hi = 1e2,
                                      int n_sweep = 2000);

// --- radially symmetric and angular modes, c = inf --------------------------

// Phi_d(a) = a^{d-1}/|U'(a)| int_{S^{d-1}} J_d(a |e1 - psi|) dpsi.
// S^0 carries counting measure (two atoms), so d=1 reduces to R_+.
double phi_radial(const PulseParams& p, const PulseSolution& sol);
std::optional<HopfPoint> hopf_radial(const PulseParams& p, const PulseSolution& sol,
                                     int branch = 0);

// J_n(a) = a/|U'(a)| int_0^{2pi} J_2(2a|sin(phi/2)|) cos(n phi) dphi; J_0 = Phi_2
double angular_mode_coefficient_2d(const PulseParams& p, const PulseSolution& sol, int n);
std::optional<HopfPoint> hopf_angular_2d(const PulseParams& p, const PulseSolution& sol, int n,
                                         int branch = 0);

// 2d Hopf curves over an I0 sweep; mode_n = 0 is the radial curve
BifurcationCurve mode_curve_2d(PulseParams p, int mode_n, double I0_lo, double I0_hi, int n);

// --- discretized-operator oracle (tau_D = 0, c = inf) ------------------------
// Builds the collocation matrix of the linearized operator on the given grid
// (rank-2 update of -I using the threshold-point masses) and returns its
// eigenvalues (real).  Sets *coarse_warning when dx > a/20 or the grid misses +-a.
std::vector<double> linearized_operator_eigenvalues_1d(const PulseParams& p,
                                                       const PulseSolution& sol,
                                                       const std::vector<double>& xs,
                                                       bool* coarse_warning = nullptr);

}  // namespace nfield
