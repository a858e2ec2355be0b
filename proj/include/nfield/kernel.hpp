#pragma once

#include <cmath>
#include <limits>

namespace nfield {

// Difference-of-Gaussians lateral coupling, J_d(r) = w_e G_d(r,s_e) - w_i G_d(r,s_i),
// where each G_d integrates to one over R^d.  Marginalizing G_d over one axis gives
// G_{d-1} with the same width, so the erf antiderivative below also serves as the
// cross-section of any planar problem in higher dimension.
struct KernelParams {
    double w_e = 1.0;
    double sigma_e = 1.0;
    double w_i = 0.0;
    double sigma_i = 1.0;
    int d = 1;
};

// throws std::invalid_argument on non-positive widths / amplitudes < 0 / d < 1
void validate_kernel(const KernelParams& k);

enum class KernelShape {
    excitatory,          // J >= 0 everywhere
    inhibitory,          // J <= 0 everywhere
    lateral_inhibition,  // positive core, negative surround (Mexican hat)
    lateral_excitation,  // negative core, positive surround (inverse Mexican hat)
};

const char* kernel_shape_name(KernelShape s);

// mass-one Gaussian: exp(-r^2/sigma^2) / (sigma^d pi^{d/2})
double gaussian_value(int d, double r, double sigma);

// J_d(r) in the dimension carried by k
double connectivity_value(const KernelParams& k, double r);
// J at a given dimension regardless of k.d (marginalized views)
double connectivity_value_dim(const KernelParams& k, int d, double r);

// H(x) = int_0^x J_1, odd in x; H(inf) = (w_e - w_i)/2
double antiderivative_1d(const KernelParams& k, double x);
// int_a^b J_1(|x|) dx = H(b) - H(a)
double interval_integral_1d(const KernelParams& k, double a, double b);
// C(x) = int_x^inf J_1(|y|) dy
double tail_integral_1d(const KernelParams& k, double x);
// integral of J_d over all of R^d (independent of d)
double total_mass(const KernelParams& k);

KernelShape classify_kernel(const KernelParams& k);

// radius beyond which |J_d| < tol relative to its peak; used for truncation
double kernel_support_radius(const KernelParams& k, double tol = 1e-12);

// y-Fourier transform of J_2 evaluated on the interface (x = 0):
// w_e G_1(0,s_e) e^{-s_e^2 l^2/4} - w_i G_1(0,s_i) e^{-s_i^2 l^2/4}; equals J_1(0) at l = 0.
double transverse_transform(const KernelParams& k, double l);
// the same normalized by its l = 0 value; Psi(0) == 1 identically
double transverse_spectrum_value(const KernelParams& k, double l);

// Space-dependent transmission delay tau(r) = tau_D + r/c; c = inf keeps only the
// constant part.
struct DelayModel {
    double tau_D = 0.0;
    double c = std::numeric_limits<double>::infinity();

    bool finite_speed() const { return std::isfinite(c); }
    double delay(double r) const { return finite_speed() ? tau_D + r / c : tau_D; }
};

void validate_delays(const DelayModel& dm);

// External drive.  Pulses use a radial Gaussian bump I0 exp(-r^2/sigma^2); fronts a
// logistic ramp I0 / (1 + exp(s x)) saturating to I0 on the left, 0 on the right.
enum class InputKind { none, gaussian_bump, logistic_ramp };

struct InputProfile {
    InputKind kind = InputKind::none;
    double I0 = 0.0;
    double sigma = 1.0;  // gaussian_bump width
    double s = 1.0;      // logistic_ramp stiffness

    double value(double x) const;
    double derivative(double x) const;  // d/dx, signed

    static InputProfile none_input() { return {}; }
    static InputProfile gaussian(double I0, double sigma);
    static InputProfile logistic(double I0, double s);
};

}  // namespace nfield
