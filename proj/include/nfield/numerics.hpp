#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace nfield {

using cplx = std::complex<double>;

// Gauss-Legendre nodes/weights on [-1,1]; results are cached per order.
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_legendre(int order);

// Fixed-order Gauss-Legendre on [a,b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int order);

// Adaptive panel-splitting Gauss-Legendre to an absolute tolerance.
// Deterministic for a given integrand; throws std::runtime_error if the
// recursion depth limit is hit before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int order = 24);

// Brent root bracketing on [a,b]; requires f(a), f(b) of opposite sign.
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-14, int max_iter = 200);

// Golden-section minimization on a bracket [a,b].
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double xtol = 1e-12);

// Sign-change scan of f over a uniform grid with n points on [lo,hi].
// Returns bracket lower indices; grid(i) = lo + i*(hi-lo)/(n-1).
struct SignScan {
    std::vector<double> grid, values;
    std::vector<int> brackets;           // values[i]*values[i+1] < 0, or exact zero at i
};
SignScan scan_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n);

// Central five-point derivative with one Richardson step.
double derivative_5pt(const std::function<double(double)>& f, double x, double h);

// Runs fn(i) for i in [0,n) across worker threads (NFIELD_THREADS env
// overrides the thread count; 0 or 1 disables threading). Deterministic
// output ordering is the caller's concern: write to index i only.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nfield
