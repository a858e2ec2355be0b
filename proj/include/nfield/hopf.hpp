#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nfield/numerics.hpp"

namespace nfield {

enum class HopfMode {
    sym_plus,        // pulse breathing mode p_+
    asym_minus,      // pulse sloshing mode p_-
    radial,          // radially symmetric mode, d >= 2
    angular,         // angular mode e^{in phi}, d = 2
    transverse,      // planar-front transverse mode, wavenumber l0
    front_input,     // monotonous input-driven front mode
    front_asym,      // three-crossing antisymmetric mode
    front_sym_plus,  // three-crossing symmetric mode, Theta_+ root
    front_sym_minus, // three-crossing symmetric mode, Theta_- root
};

const char* mode_name(HopfMode m);

struct HopfPoint {
    double omega = 0.0;
    double tau_D = 0.0;
    double c = std::numeric_limits<double>::infinity();
    HopfMode mode = HopfMode::sym_plus;
    int n = 0;        // angular index / propagation-branch integer
    int branch = 0;   // index of the mod-2pi/omega representative (0 = smallest)
    double l0 = 0.0;  // transverse wavenumber at criticality
    double residual = 0.0;  // |(1+i w)e^{i w tau_D} - target|
};

// G(lambda) = (1 + lambda) e^{lambda tau}
cplx characteristic_value(cplx lambda, double tau);

// Solve (1 + i w) e^{i w tau} = T for w > 0 and tau >= 0.  No solution when
// |T| <= 1 (a small guard above 1 rejects tangent targets whose w ~ 0 would be
// pure roundoff).  branch > 0 selects later representatives tau + branch 2pi/w.
std::optional<HopfPoint> hopf_from_target(cplx target, HopfMode mode, int branch = 0);

struct CurvePoint {
    double sweep_value = 0.0;
    std::optional<HopfPoint> point;  // nullopt marks an explicit gap
};

struct BifurcationCurve {
    std::string sweep_parameter;
    std::vector<CurvePoint> points;  // sorted by sweep value
};

// Shared tracer for dispersion relations of the form
//   (1 + lambda) e^{lambda tau_D} = (P + s Q e^{-2 lambda a / c}) / m
// (1d pulse modes and the three-crossing asymmetric front relation).  For each
// omega of a log-spaced sweep the modulus condition pins cos(psi) with
// psi = omega tau_D + atan(omega); both acos branches are kept, tau_D is reduced
// to its first non-negative representative, and the leftover unit factor
// e^{-2 i omega a / c} yields c on the smallest winding with c > 0.  Zeros of
// that factor's argument are refined by bisection and emitted as c = inf rows
// (the constant-delay asymptote).
struct TwoPointDispersion {
    double a = 1.0;   // crossing half-separation
    double m = 1.0;   // gradient modulus (or 1/gamma1)
    double P = 0.0;   // self coupling
    double Q = 0.0;   // cross coupling
    int s = +1;       // +1 symmetric, -1 antisymmetric
};

BifurcationCurve trace_two_point_curve(const TwoPointDispersion& td, HopfMode mode,
                                       double omega_lo, double omega_hi, int n_sweep);

}  // namespace nfield
