#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "nfield/hopf.hpp"
#include "nfield/kernel.hpp"

namespace nfield {

enum class FrontKind { monotonous, three_crossing };

// Stationary planar front joining the active plateau w_e - w_i + I0 (left) to the
// rest state 0 (right).  The monotonous kind crosses theta once at x = 0; the
// three-crossing kind (input-free) re-crosses at -a and +a, carrying a bump of
// activity attached to the interface.
struct FrontSolution {
    FrontKind kind = FrontKind::monotonous;
    KernelParams kernel;
    InputProfile input;
    double theta = 0.0;
    double a = 0.0;                 // outer crossing (three_crossing only)
    std::vector<double> crossings;  // ascending threshold crossings
    std::vector<double> gradients;  // signed V'(xi) at each crossing
    double gamma1 = 0.0;            // 1/(J(0)+J(2a)-J(a)), three_crossing
    double gamma2 = 0.0;            // 1/(J(0)-2J(a)),  three_crossing
};

// Threshold tuned so the interface sits exactly at x = 0: theta = (w_e - w_i)/2 + I0/2.
double front_threshold(const KernelParams& k, double I0);

// V(x) (and V'(x)) of a stored front, in erf closed forms.
double front_profile_value(const FrontSolution& f, double x);
double front_profile_derivative(const FrontSolution& f, double x);

// Monotone front under a logistic ramp (or no input).  theta, when supplied, must
// match the tuned threshold to 1e-12.  Throws std::domain_error with a hint at the
// three-crossing builder when V' > 0 somewhere on the check grid.
FrontSolution build_monotonous_front(const KernelParams& k, const InputProfile& input,
                                     std::optional<double> theta = std::nullopt);

// Input-free front crossing theta = (w_e - w_i)/2 three times; the outer crossing a
// solves int_a^{2a} J_1 = 0.  Throws when no crossing exists, when the slope signs
// reject the configuration, or when the profile fails the dense crossing count.
FrontSolution build_three_crossing_front(const KernelParams& k,
                                         std::optional<double> theta = std::nullopt);

// --- monotonous interface -------------------------------------------------------

// Constant-delay Hopf of the single-interface mode: target R = J(0)/(J(0) - I'(0)),
// independent of c.  none when R >= -1.
std::optional<HopfPoint> front_hopf_1d(const FrontSolution& f);

// I0 window (-4 J(0)/s, -8 J(0)/s) in which the monotone front both exists and
// destabilizes; empty when J(0) >= 0.
std::optional<std::pair<double, double>> front_hopf_input_window(const KernelParams& k,
                                                                double s);

// Psi(l) = transverse transform / |V'(0)|; Psi(0) == 1 identically.
double front_transverse_psi(const FrontSolution& f, double ell);

// Interior minimizer of Psi over l > 0 (bracketing scan + golden section).
struct TransverseMinimum {
    double l0 = 0.0;
    double psi_min = 1.0;
};
TransverseMinimum front_transverse_minimum(const FrontSolution& f);

// Transverse Hopf of an input-free planar front in d >= 2: the most unstable
// wavenumber l0 destabilizes first, at the constant delay given by min Psi < -1.
std::optional<HopfPoint> front_transverse_hopf(const FrontSolution& f);

// sigma_i sweep of the transverse Hopf delay at fixed (w_e, sigma_e, w_i); gaps
// where the monotone front fails or min Psi >= -1.
BifurcationCurve transverse_curve_sigma_i(const KernelParams& base, double sigma_i_lo,
                                          double sigma_i_hi, int n);

// sigma_i at which the transverse Hopf delay diverges (min Psi = -1), bracketed in
// [sigma_lo, sigma_hi].
double transverse_divergence_sigma(const KernelParams& base, double sigma_lo,
                                   double sigma_hi);

// --- three-crossing system ------------------------------------------------------

// Constants of the crossing-interaction system at c = inf.  The quadratic for the
// symmetric branch always carries the translation root 1; the other root beta_inf
// is the physical one.  Theta_pm use the principal complex square root.
struct FrontSystemConstants {
    double J0 = 0.0, Ja = 0.0, J2a = 0.0;
    double asym_target = 0.0;     // gamma1 (J0 - J2a)
    double alpha_inf = 0.0;       // (gamma1+gamma2) J0 + gamma1 J2a
    double beta_inf = 0.0;        // gamma1 gamma2 [J0^2 + J0 J2a - 2 Ja^2]
    cplx theta_plus, theta_minus; // roots of T^2 - alpha_inf T + beta_inf
};
FrontSystemConstants three_crossing_constants(const FrontSolution& f);

// Residuals of the two closed relations at lambda:
//   first:  G - gamma1 (J0 - J2a E^2)
//   second: G^2 - alpha(E) G + beta(E),  E = e^{-lambda a / c}
std::pair<cplx, cplx> three_crossing_dispersion(const FrontSolution& f,
                                                const DelayModel& delays, cplx lambda);

// Distinct entries {m1..m5} of the 3x3 crossing matrix [[m1,m2,m3],[m4,m5,m4],
// [m3,m2,m1]]; det = (m1 - m3)(m5 (m1 + m3) - 2 m2 m4).
std::array<cplx, 5> three_crossing_matrix_entries(const FrontSolution& f,
                                                  const DelayModel& delays, cplx lambda);

// Constant-delay Hopf points: antisymmetric branch when gamma1(J0 - J2a) < -1, then
// the symmetric Theta roots with |Theta| > 1 (the translation root drops out on its
// own).  Residuals are re-evaluated through the dispersion relations.
std::vector<HopfPoint> three_crossing_hopf_constant(const FrontSolution& f);

// Propagation-delay Hopf curves in (c, tau_D): first the antisymmetric trace, then
// the symmetric one obtained from |Z(i w, tau_D)| = 1 with Z the modulus of
// e^{-2 lambda a/c} implied by the quadratic relation.  Both curves carry explicit
// c = inf anchor rows at the constant-delay limits.
std::pair<BifurcationCurve, BifurcationCurve> three_crossing_hopf_propagation(
    const FrontSolution& f, double omega_lo = 1e-3, double omega_hi = 1e2,
    int n_sweep = 2000);

// Critical eigenmode sampled on a grid, max modulus normalized to one.  Monotonous
// fronts: J(|x|) e^{-lambda |x|/c} (even).  Three-crossing: odd difference for the
// antisymmetric branch, gamma-weighted even combination for the symmetric one.
std::vector<cplx> front_eigenmode(const FrontSolution& f, const HopfPoint& h,
                                  const std::vector<double>& xs);

// Oracle: eigenvalues lambda = mu - 1 of the 3x3 crossing matrix at tau_D = 0,
// c = inf, sorted by real part.  Contains the exact translation zero.
std::vector<cplx> three_crossing_operator_eigenvalues(const FrontSolution& f);

}  // namespace nfield
