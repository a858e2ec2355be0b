#include "nfield/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nfield {

void validate_kernel(const KernelParams& k) {
    if (!(k.sigma_e > 0.0) || !(k.sigma_i > 0.0))
        throw std::invalid_argument("kernel widths must be positive");
    if (k.w_e < 0.0 || k.w_i < 0.0)
        throw std::invalid_argument("kernel amplitudes must be non-negative");
    if (k.d < 1) throw std::invalid_argument("dimension must be >= 1");
}

void validate_delays(const DelayModel& dm) {
    if (dm.tau_D < 0.0) throw std::invalid_argument("tau_D must be >= 0");
    if (!(dm.c > 0.0)) throw std::invalid_argument("propagation speed must be positive");
}

const char* kernel_shape_name(KernelShape s) {
    switch (s) {
        case KernelShape::excitatory: return "excitatory";
        case KernelShape::inhibitory: return "inhibitory";
        case KernelShape::lateral_inhibition: return "lateral_inhibition";
        case KernelShape::lateral_excitation: return "lateral_excitation";
    }
    return "?";
}

double gaussian_value(int d, double r, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_value: sigma must be positive");
    const double norm = std::pow(sigma, d) * std::pow(M_PI, 0.5 * d);
    return std::exp(-r * r / (sigma * sigma)) / norm;
}

double connectivity_value_dim(const KernelParams& k, int d, double r) {
    return k.w_e * gaussian_value(d, r, k.sigma_e) - k.w_i * gaussian_value(d, r, k.sigma_i);
}

double connectivity_value(const KernelParams& k, double r) {
    return connectivity_value_dim(k, k.d, r);
}

double antiderivative_1d(const KernelParams& k, double x) {
    return 0.5 * (k.w_e * std::erf(x / k.sigma_e) - k.w_i * std::erf(x / k.sigma_i));
}

double interval_integral_1d(const KernelParams& k, double a, double b) {
    return antiderivative_1d(k, b) - antiderivative_1d(k, a);
}

double tail_integral_1d(const KernelParams& k, double x) {
    return 0.5 * (k.w_e - k.w_i) - antiderivative_1d(k, x);
}

double total_mass(const KernelParams& k) { return k.w_e - k.w_i; }

KernelShape classify_kernel(const KernelParams& k) {
    // A difference of two centred Gaussians changes sign at most once in r >= 0, so
    // the signs at the origin and in the far tail settle the shape.
    const double at0 = connectivity_value(k, 0.0);
    double tail;
    if (k.sigma_e > k.sigma_i)
        tail = k.w_e;
    else if (k.sigma_i > k.sigma_e)
        tail = -k.w_i;
    else
        tail = at0;
    if (at0 >= 0.0 && tail >= 0.0) return KernelShape::excitatory;
    if (at0 <= 0.0 && tail <= 0.0) return KernelShape::inhibitory;
    if (at0 > 0.0) return KernelShape::lateral_inhibition;
    return KernelShape::lateral_excitation;
}

double kernel_support_radius(const KernelParams& k, double tol) {
    const double smax = std::max(k.sigma_e, k.sigma_i);
    return smax * std::sqrt(std::max(1.0, -std::log(tol)));
}

double transverse_transform(const KernelParams& k, double l) {
    return k.w_e * gaussian_value(1, 0.0, k.sigma_e) *
               std::exp(-0.25 * k.sigma_e * k.sigma_e * l * l) -
           k.w_i * gaussian_value(1, 0.0, k.sigma_i) *
               std::exp(-0.25 * k.sigma_i * k.sigma_i * l * l);
}

double transverse_spectrum_value(const KernelParams& k, double l) {
    return transverse_transform(k, l) / transverse_transform(k, 0.0);
}

namespace {
// logistic(y) = 1/(1+e^{-y}) without overflow for large |y|
double logistic_stable(double y) {
    if (y >= 0.0) return 1.0 / (1.0 + std::exp(-y));
    const double t = std::exp(y);
    return t / (1.0 + t);
}
}  // namespace

double InputProfile::value(double x) const {
    switch (kind) {
        case InputKind::none: return 0.0;
        case InputKind::gaussian_bump: return I0 * std::exp(-x * x / (sigma * sigma));
        case InputKind::logistic_ramp: return I0 * logistic_stable(-s * x);
    }
    return 0.0;
}

double InputProfile::derivative(double x) const {
    switch (kind) {
        case InputKind::none: return 0.0;
        case InputKind::gaussian_bump:
            return -2.0 * x / (sigma * sigma) * I0 * std::exp(-x * x / (sigma * sigma));
        case InputKind::logistic_ramp: {
            const double p = logistic_stable(-s * x);
            return -I0 * s * p * (1.0 - p);
        }
    }
    return 0.0;
}

InputProfile InputProfile::gaussian(double I0, double sigma) {
    InputProfile p;
    p.kind = InputKind::gaussian_bump;
    p.I0 = I0;
    p.sigma = sigma;
    return p;
}

InputProfile InputProfile::logistic(double I0, double s) {
    InputProfile p;
    p.kind = InputKind::logistic_ramp;
    p.I0 = I0;
    p.s = s;
    return p;
}

}  // namespace nfield
