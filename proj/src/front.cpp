#include "nfield/front.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nfield/numerics.hpp"

namespace nfield {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double marginal(const KernelParams& k, double r) { return connectivity_value_dim(k, 1, r); }

void require_kind(const FrontSolution& f, FrontKind kind, const char* op) {
    if (f.kind != kind)
        throw std::invalid_argument(std::string(op) + ": wrong front kind for this operation");
}

// symmetric check grid reaching well into both plateaus
double check_range(const FrontSolution& f) {
    double w = std::max(f.kernel.sigma_e, f.kernel.sigma_i);
    if (f.input.kind == InputKind::logistic_ramp && f.input.s > 0.0)
        w = std::max(w, 1.0 / f.input.s);
    return 10.0 * w + f.a;
}

// count strict sign changes of V - theta over [-R, R]
int crossing_count(const FrontSolution& f, double R, int n) {
    int count = 0, prev = 0;
    for (int i = 0; i < n; ++i) {
        const double x = -R + 2.0 * R * i / (n - 1);
        const double v = front_profile_value(f, x) - f.theta;
        const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

void check_limits(const FrontSolution& f, double R) {
    if (!(front_profile_value(f, -R) > f.theta))
        throw std::domain_error("front rejected: left plateau does not exceed the threshold");
    if (!(front_profile_value(f, R) < f.theta))
        throw std::domain_error("front rejected: profile does not decay below the threshold");
}

// e^{-lambda r / c}, the unit transport factor (1 when c = inf)
cplx transport(cplx lambda, double r, double c) {
    return std::isfinite(c) ? std::exp(-lambda * r / c) : cplx(1.0, 0.0);
}

cplx z_value(const FrontSystemConstants& C, const FrontSolution& f, double w, double tau) {
    const cplx G = characteristic_value(cplx(0.0, w), tau);
    const cplx num = G * G - (f.gamma1 + f.gamma2) * C.J0 * G + f.gamma1 * f.gamma2 * C.J0 * C.J0;
    const cplx den =
        f.gamma1 * C.J2a * G + f.gamma1 * f.gamma2 * (2.0 * C.Ja * C.Ja - C.J0 * C.J2a);
    return num / den;
}

void sort_curve(BifurcationCurve& curve) {
    std::sort(curve.points.begin(), curve.points.end(), [](const CurvePoint& a, const CurvePoint& b) {
        if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
        const double ta = a.point ? a.point->tau_D : -1.0;
        const double tb = b.point ? b.point->tau_D : -1.0;
        return ta < tb;
    });
}

}  // namespace

double front_threshold(const KernelParams& k, double I0) {
    return 0.5 * (k.w_e - k.w_i) + 0.5 * I0;
}

double front_profile_value(const FrontSolution& f, double x) {
    if (f.kind == FrontKind::monotonous)
        return tail_integral_1d(f.kernel, x) + f.input.value(x);
    return interval_integral_1d(f.kernel, x - f.a, x) + tail_integral_1d(f.kernel, x + f.a);
}

double front_profile_derivative(const FrontSolution& f, double x) {
    if (f.kind == FrontKind::monotonous)
        return f.input.derivative(x) - marginal(f.kernel, std::abs(x));
    return marginal(f.kernel, std::abs(x)) - marginal(f.kernel, std::abs(x - f.a)) -
           marginal(f.kernel, std::abs(x + f.a));
}

FrontSolution build_monotonous_front(const KernelParams& k, const InputProfile& input,
                                     std::optional<double> theta) {
    validate_kernel(k);
    if (input.kind == InputKind::gaussian_bump)
        throw std::invalid_argument("fronts take a logistic ramp or no input");
    const double th = front_threshold(k, input.I0);
    if (theta && std::abs(*theta - th) > 1e-12)
        throw std::invalid_argument("theta must equal (w_e - w_i)/2 + I0/2 for the interface to sit at 0");
    if (!(k.w_e - k.w_i + input.I0 > th))
        throw std::domain_error("front rejected: plateau w_e - w_i + I0 must exceed the threshold");

    FrontSolution f;
    f.kind = FrontKind::monotonous;
    f.kernel = k;
    f.input = input;
    f.theta = th;
    f.crossings = {0.0};
    f.gradients = {input.derivative(0.0) - marginal(k, 0.0)};

    const double R = check_range(f);
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
        const double x = -R + 2.0 * R * i / (n - 1);
        if (front_profile_derivative(f, x) > 1e-10)
            throw std::domain_error(
                "profile is not monotonous (V' > 0 at x = " + std::to_string(x) +
                "); such configurations carry three crossings, use build_three_crossing_front");
    }
    check_limits(f, R);
    return f;
}

FrontSolution build_three_crossing_front(const KernelParams& k, std::optional<double> theta) {
    validate_kernel(k);
    const double th = front_threshold(k, 0.0);
    if (theta && std::abs(*theta - th) > 1e-12)
        throw std::invalid_argument("three-crossing fronts are input-free: theta must equal (w_e - w_i)/2");
    if (!(th > 0.0))
        throw std::domain_error("front rejected: needs w_e > w_i so the plateau exceeds the threshold");

    // outer crossing from the balance int_a^{2a} J_1 = 0
    auto g = [&](double a) { return interval_integral_1d(k, a, 2.0 * a); };
    const double a_max = 10.0 * std::max(k.sigma_e, k.sigma_i);
    SignScan scan = scan_sign_changes(g, a_max / 4000.0, a_max, 4000);
    if (scan.brackets.empty())
        throw std::domain_error("no three-crossing front: int_a^{2a} J_1 never vanishes");
    const int b = scan.brackets.front();
    const double a = brent_root(g, scan.grid[b], scan.grid[b + 1]);

    FrontSolution f;
    f.kind = FrontKind::three_crossing;
    f.kernel = k;
    f.input = InputProfile::none_input();
    f.theta = th;
    f.a = a;
    f.crossings = {-a, 0.0, a};
    const double v0 = front_profile_derivative(f, 0.0);   //  J(0) - 2 J(a)
    const double va = marginal(k, a) - marginal(k, 0.0) - marginal(k, 2.0 * a);  // V'(+-a)
    f.gradients = {va, v0, va};
    if (!(v0 > 0.0) || !(va < 0.0))
        throw std::domain_error(
            "configuration rejected: crossing slopes have the wrong signs (V'(0) = " +
            std::to_string(v0) + ", V'(a) = " + std::to_string(va) + ")");
    f.gamma1 = -1.0 / va;
    f.gamma2 = 1.0 / v0;

    const double R = check_range(f);
    const int found = crossing_count(f, R, 4001);
    if (found != 3)
        throw std::domain_error("three-crossing profile check failed: found " +
                                std::to_string(found) + " crossings instead of 3");
    check_limits(f, R);
    return f;
}

std::optional<HopfPoint> front_hopf_1d(const FrontSolution& f) {
    require_kind(f, FrontKind::monotonous, "front_hopf_1d");
    const double J0 = marginal(f.kernel, 0.0);
    const double denom = J0 - f.input.derivative(0.0);  // = |V'(0)| for a falling interface
    if (!(denom > 0.0))
        throw std::domain_error("front_hopf_1d: degenerate interface slope");
    const double R = J0 / denom;
    if (R >= -1.0) return std::nullopt;  // the interface destabilizes only through R < -1
    return hopf_from_target(cplx(R, 0.0), HopfMode::front_input);
}

std::optional<std::pair<double, double>> front_hopf_input_window(const KernelParams& k,
                                                                double s) {
    validate_kernel(k);
    if (!(s > 0.0)) throw std::invalid_argument("front_hopf_input_window: s must be positive");
    const double J0 = connectivity_value_dim(k, 1, 0.0);
    if (J0 >= 0.0) return std::nullopt;
    return std::make_pair(-4.0 * J0 / s, -8.0 * J0 / s);
}

double front_transverse_psi(const FrontSolution& f, double ell) {
    require_kind(f, FrontKind::monotonous, "front_transverse_psi");
    const double slope = std::abs(f.gradients.at(0));
    if (!(slope > 0.0))
        throw std::domain_error("front_transverse_psi: degenerate interface slope");
    return transverse_transform(f.kernel, ell) / slope;
}

TransverseMinimum front_transverse_minimum(const FrontSolution& f) {
    require_kind(f, FrontKind::monotonous, "front_transverse_minimum");
    const double L = 20.0 / std::min(f.kernel.sigma_e, f.kernel.sigma_i);
    const int n = 2000;
    auto psi = [&](double l) { return front_transverse_psi(f, l); };
    int bi = 1;
    double bv = psi(L / n);
    for (int i = 2; i <= n; ++i) {
        const double v = psi(L * i / n);
        if (v < bv) {
            bv = v;
            bi = i;
        }
    }
    const double lo = L * (bi - 1) / n;
    const double hi = L * std::min(bi + 1, n) / n;
    const double l0 = golden_min(psi, lo, hi);
    TransverseMinimum m;
    m.l0 = l0;
    m.psi_min = psi(l0);
    if (bv < m.psi_min) {  // golden collapsed onto an endpoint worse than the scan
        m.l0 = L * bi / n;
        m.psi_min = bv;
    }
    return m;
}

std::optional<HopfPoint> front_transverse_hopf(const FrontSolution& f) {
    require_kind(f, FrontKind::monotonous, "front_transverse_hopf");
    if (f.input.kind != InputKind::none)
        throw std::invalid_argument("front_transverse_hopf applies to input-free fronts");
    if (f.kernel.d < 2)
        throw std::invalid_argument("front_transverse_hopf needs d >= 2");
    const TransverseMinimum m = front_transverse_minimum(f);
    auto h = hopf_from_target(cplx(m.psi_min, 0.0), HopfMode::transverse);
    if (!h) return std::nullopt;
    h->l0 = m.l0;
    return h;
}

BifurcationCurve transverse_curve_sigma_i(const KernelParams& base, double sigma_i_lo,
                                          double sigma_i_hi, int n) {
    BifurcationCurve curve;
    curve.sweep_parameter = "sigma_i";
    curve.points.resize(n);
    parallel_for(n, [&](std::size_t i) {
        CurvePoint cp;
        cp.sweep_value =
            n > 1 ? sigma_i_lo + (sigma_i_hi - sigma_i_lo) * double(i) / (n - 1) : sigma_i_lo;
        KernelParams k = base;
        k.sigma_i = cp.sweep_value;
        try {
            const FrontSolution f = build_monotonous_front(k, InputProfile::none_input());
            if (auto h = front_transverse_hopf(f)) cp.point = *h;
        } catch (const std::exception&) {
            // no monotone front here: leave the gap explicit
        }
        curve.points[i] = cp;
    });
    return curve;
}

double transverse_divergence_sigma(const KernelParams& base, double sigma_lo,
                                   double sigma_hi) {
    auto h = [&](double si) {
        KernelParams k = base;
        k.sigma_i = si;
        try {
            const FrontSolution f = build_monotonous_front(k, InputProfile::none_input());
            return front_transverse_minimum(f).psi_min + 1.0;
        } catch (const std::exception&) {
            return -1e6;  // no front: count as the unstable side of the bracket
        }
    };
    return brent_root(h, sigma_lo, sigma_hi);
}

FrontSystemConstants three_crossing_constants(const FrontSolution& f) {
    require_kind(f, FrontKind::three_crossing, "three_crossing_constants");
    FrontSystemConstants C;
    C.J0 = marginal(f.kernel, 0.0);
    C.Ja = marginal(f.kernel, f.a);
    C.J2a = marginal(f.kernel, 2.0 * f.a);
    C.asym_target = f.gamma1 * (C.J0 - C.J2a);
    C.alpha_inf = (f.gamma1 + f.gamma2) * C.J0 + f.gamma1 * C.J2a;
    C.beta_inf = f.gamma1 * f.gamma2 * (C.J0 * C.J0 + C.J0 * C.J2a - 2.0 * C.Ja * C.Ja);
    const cplx disc = std::sqrt(cplx(C.alpha_inf * C.alpha_inf - 4.0 * C.beta_inf, 0.0));
    C.theta_plus = 0.5 * (C.alpha_inf + disc);
    C.theta_minus = 0.5 * (C.alpha_inf - disc);
    return C;
}

std::pair<cplx, cplx> three_crossing_dispersion(const FrontSolution& f,
                                                const DelayModel& delays, cplx lambda) {
    const FrontSystemConstants C = three_crossing_constants(f);
    validate_delays(delays);
    const cplx E = transport(lambda, f.a, delays.c);
    const cplx E2 = E * E;
    const cplx G = characteristic_value(lambda, delays.tau_D);
    const cplx r1 = G - f.gamma1 * (C.J0 - C.J2a * E2);
    const cplx alpha = (f.gamma1 + f.gamma2) * C.J0 + f.gamma1 * C.J2a * E2;
    const cplx beta =
        f.gamma1 * f.gamma2 * (C.J0 * C.J0 + (C.J0 * C.J2a - 2.0 * C.Ja * C.Ja) * E2);
    const cplx r2 = G * G - alpha * G + beta;
    return {r1, r2};
}

std::array<cplx, 5> three_crossing_matrix_entries(const FrontSolution& f,
                                                  const DelayModel& delays, cplx lambda) {
    const FrontSystemConstants C = three_crossing_constants(f);
    validate_delays(delays);
    const cplx E = transport(lambda, f.a, delays.c);
    return {f.gamma1 * C.J0, f.gamma2 * C.Ja * E, f.gamma1 * C.J2a * E * E,
            f.gamma1 * C.Ja * E, f.gamma2 * C.J0};
}

std::vector<HopfPoint> three_crossing_hopf_constant(const FrontSolution& f) {
    const FrontSystemConstants C = three_crossing_constants(f);
    std::vector<HopfPoint> out;
    if (auto h = hopf_from_target(cplx(C.asym_target, 0.0), HopfMode::front_asym)) {
        const DelayModel dm{h->tau_D, kInf};
        h->residual = std::abs(three_crossing_dispersion(f, dm, cplx(0.0, h->omega)).first);
        out.push_back(*h);
    }
    const std::pair<cplx, HopfMode> roots[] = {{C.theta_plus, HopfMode::front_sym_plus},
                                               {C.theta_minus, HopfMode::front_sym_minus}};
    for (const auto& [target, mode] : roots) {
        if (auto h = hopf_from_target(target, mode)) {
            const DelayModel dm{h->tau_D, kInf};
            h->residual = std::abs(three_crossing_dispersion(f, dm, cplx(0.0, h->omega)).second);
            out.push_back(*h);
        }
    }
    return out;
}

std::pair<BifurcationCurve, BifurcationCurve> three_crossing_hopf_propagation(
    const FrontSolution& f, double omega_lo, double omega_hi, int n_sweep) {
    const FrontSystemConstants C = three_crossing_constants(f);

    // antisymmetric branch: exactly the two-point relation with m = 1/gamma1, s = -1
    TwoPointDispersion td;
    td.a = f.a;
    td.m = 1.0 / f.gamma1;
    td.P = C.J0;
    td.Q = C.J2a;
    td.s = -1;
    BifurcationCurve Y = trace_two_point_curve(td, HopfMode::front_asym, omega_lo, omega_hi,
                                               n_sweep);

    // symmetric branch: for each omega find every tau_D in [0, 2pi/omega) at which the
    // quadratic relation puts |e^{-2 lambda a / c}| on the unit circle
    const HopfMode sym_mode =
        C.beta_inf < 1.0 ? HopfMode::front_sym_minus : HopfMode::front_sym_plus;
    BifurcationCurve Z;
    Z.sweep_parameter = "omega";
    std::vector<double> ws(n_sweep);
    for (int i = 0; i < n_sweep; ++i)
        ws[i] = omega_lo *
                std::pow(omega_hi / omega_lo, n_sweep > 1 ? double(i) / (n_sweep - 1) : 0.0);
    std::vector<std::vector<CurvePoint>> rows(n_sweep);
    parallel_for(n_sweep, [&](std::size_t i) {
        const double w = ws[i];
        const double period = 2.0 * M_PI / w;
        auto zmod = [&](double tau) { return std::abs(z_value(C, f, w, tau)) - 1.0; };
        SignScan scan = scan_sign_changes(zmod, 0.0, period * (1.0 - 1e-9), 400);
        for (int b : scan.brackets) {
            double tau;
            try {
                tau = brent_root(zmod, scan.grid[b], scan.grid[b + 1]);
            } catch (const std::exception&) {
                continue;
            }
            const cplx z = z_value(C, f, w, tau);
            if (!std::isfinite(std::abs(z))) continue;
            HopfPoint h;
            h.mode = sym_mode;
            h.omega = w;
            h.tau_D = tau;
            const double az = std::arg(z);
            if (std::abs(az) < 1e-12) {
                h.c = kInf;
                h.n = 0;
            } else {
                h.n = az < 0.0 ? 0 : 1;  // smallest winding giving c > 0
                h.c = 2.0 * f.a * w / (2.0 * M_PI * h.n - az);
            }
            const DelayModel dm{h.tau_D, h.c};
            h.residual = std::abs(three_crossing_dispersion(f, dm, cplx(0.0, w)).second);
            CurvePoint cp;
            cp.sweep_value = w;
            cp.point = h;
            rows[i].push_back(cp);
        }
    });
    for (auto& r : rows) Z.points.insert(Z.points.end(), r.begin(), r.end());

    // anchor both curves with the exact constant-delay rows they asymptote to
    for (const HopfPoint& h : three_crossing_hopf_constant(f)) {
        CurvePoint cp;
        cp.sweep_value = h.omega;
        cp.point = h;
        if (h.mode == HopfMode::front_asym)
            Y.points.push_back(cp);
        else
            Z.points.push_back(cp);
    }
    sort_curve(Y);
    sort_curve(Z);
    return {Y, Z};
}

std::vector<cplx> front_eigenmode(const FrontSolution& f, const HopfPoint& h,
                                  const std::vector<double>& xs) {
    const cplx lambda(0.0, h.omega);
    const KernelParams& k = f.kernel;
    std::vector<cplx> p(xs.size());
    if (f.kind == FrontKind::monotonous) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d = std::abs(xs[i]);
            p[i] = marginal(k, d) * transport(lambda, d, h.c);
        }
    } else if (h.mode == HopfMode::front_asym) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double dm_ = std::abs(xs[i] - f.a), dp = std::abs(xs[i] + f.a);
            p[i] = marginal(k, dm_) * transport(lambda, dm_, h.c) -
                   marginal(k, dp) * transport(lambda, dp, h.c);
        }
    } else {
        // symmetric eigenvector: outer amplitudes q equal, centre r from the middle row
        const FrontSystemConstants C = three_crossing_constants(f);
        const cplx E = transport(lambda, f.a, h.c);
        const cplx G = characteristic_value(lambda, h.tau_D);
        const cplx rq = 2.0 * f.gamma1 * C.Ja * E / (G - f.gamma2 * C.J0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double d0 = std::abs(xs[i]);
            const double dm_ = std::abs(xs[i] - f.a), dp = std::abs(xs[i] + f.a);
            p[i] = f.gamma1 * (marginal(k, dm_) * transport(lambda, dm_, h.c) +
                               marginal(k, dp) * transport(lambda, dp, h.c)) +
                   f.gamma2 * rq * marginal(k, d0) * transport(lambda, d0, h.c);
        }
    }
    double peak = 0.0;
    for (const cplx& v : p) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
        for (cplx& v : p) v /= peak;
    return p;
}

std::vector<cplx> three_crossing_operator_eigenvalues(const FrontSolution& f) {
    const FrontSystemConstants C = three_crossing_constants(f);
    Eigen::Matrix3d M;
    M << f.gamma1 * C.J0, f.gamma2 * C.Ja, f.gamma1 * C.J2a,
         f.gamma1 * C.Ja, f.gamma2 * C.J0, f.gamma1 * C.Ja,
         f.gamma1 * C.J2a, f.gamma2 * C.Ja, f.gamma1 * C.J0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(M);
    std::vector<cplx> out(3);
    for (int i = 0; i < 3; ++i) out[i] = cplx(es.eigenvalues()[i]) - 1.0;
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace nfield
