#include "nfield/hopf.hpp"

#include <algorithm>
#include <cmath>

namespace nfield {

const char* mode_name(HopfMode m) {
    switch (m) {
        case HopfMode::sym_plus: return "sym+";
        case HopfMode::asym_minus: return "asym-";
        case HopfMode::radial: return "radial";
        case HopfMode::angular: return "angular";
        case HopfMode::transverse: return "transverse";
        case HopfMode::front_input: return "front-input";
        case HopfMode::front_asym: return "front-asym";
        case HopfMode::front_sym_plus: return "front-sym+";
        case HopfMode::front_sym_minus: return "front-sym-";
    }
    return "?";
}

cplx characteristic_value(cplx lambda, double tau) {
    return (1.0 + lambda) * std::exp(lambda * tau);
}

namespace {

// cos(psi) demanded by the modulus condition at frequency w
double tp_rhs(const TwoPointDispersion& td, double w) {
    const double A = td.m * std::sqrt(1.0 + w * w);
    return (A * A + td.P * td.P - td.Q * td.Q) / (2.0 * A * td.P);
}

// arg of the unit factor e^{-2 i w a / c}; NaN when w is inadmissible
double tp_argW(const TwoPointDispersion& td, double w, int psi_sign) {
    const double r = tp_rhs(td, w);
    if (!(std::abs(r) <= 1.0)) return std::numeric_limits<double>::quiet_NaN();
    const double psi = psi_sign * std::acos(r);
    const double A = td.m * std::sqrt(1.0 + w * w);
    const cplx W = (A * std::exp(cplx(0.0, psi)) - td.P) / (double(td.s) * td.Q);
    return std::arg(W);
}

std::optional<HopfPoint> tp_solve(const TwoPointDispersion& td, HopfMode mode, double w,
                                  int psi_sign) {
    const double r = tp_rhs(td, w);
    if (!(std::abs(r) <= 1.0)) return std::nullopt;
    const double psi = psi_sign * std::acos(r);
    const double A = td.m * std::sqrt(1.0 + w * w);
    const cplx W = (A * std::exp(cplx(0.0, psi)) - td.P) / (double(td.s) * td.Q);
    const double period = 2.0 * M_PI / w;
    double tau = (psi - std::atan(w)) / w;
    tau = std::fmod(tau, period);
    if (tau < 0.0) tau += period;
    HopfPoint h;
    h.mode = mode;
    h.omega = w;
    h.tau_D = tau;
    const double argW = std::arg(W);
    if (std::abs(argW) < 1e-12) {
        h.c = std::numeric_limits<double>::infinity();
        h.n = 0;
    } else {
        h.n = argW < 0.0 ? 0 : 1;  // smallest winding giving c > 0
        h.c = 2.0 * td.a * w / (2.0 * M_PI * h.n - argW);
    }
    const cplx prop = std::isfinite(h.c) ? std::exp(cplx(0.0, -2.0 * w * td.a / h.c)) : cplx(1.0);
    const cplx rhs = (td.P + double(td.s) * td.Q * prop) / td.m;
    h.residual = std::abs(characteristic_value(cplx(0.0, w), h.tau_D) - rhs);
    return h;
}

}  // namespace

BifurcationCurve trace_two_point_curve(const TwoPointDispersion& td, HopfMode mode,
                                       double omega_lo, double omega_hi, int n_sweep) {
    BifurcationCurve curve;
    curve.sweep_parameter = "omega";
    if (std::abs(td.P) < 1e-300 || std::abs(td.Q) < 1e-300) return curve;

    std::vector<double> ws(n_sweep);
    for (int i = 0; i < n_sweep; ++i)
        ws[i] = omega_lo *
                std::pow(omega_hi / omega_lo, n_sweep > 1 ? double(i) / (n_sweep - 1) : 0.0);

    for (int psi_sign : {+1, -1}) {
        std::vector<CurvePoint> pts(n_sweep);
        parallel_for(n_sweep, [&](std::size_t i) {
            CurvePoint cp;
            cp.sweep_value = ws[i];
            if (auto h = tp_solve(td, mode, ws[i], psi_sign)) cp.point = *h;
            pts[i] = cp;
        });
        // refine the constant-delay asymptote: bracket arg(W) = 0 between
        // admissible sweep points and bisect
        for (int i = 0; i + 1 < n_sweep; ++i) {
            if (!pts[i].point || !pts[i + 1].point) continue;
            const double g0 = tp_argW(td, ws[i], psi_sign);
            const double g1 = tp_argW(td, ws[i + 1], psi_sign);
            if (!std::isfinite(g0) || !std::isfinite(g1)) continue;
            if (g0 == 0.0 || g0 * g1 >= 0.0) continue;
            if (std::abs(g0) > 1.0 || std::abs(g1) > 1.0) continue;  // +-pi wrap, not a zero
            const double w_star =
                brent_root([&](double w) { return tp_argW(td, w, psi_sign); }, ws[i], ws[i + 1]);
            if (auto h = tp_solve(td, mode, w_star, psi_sign)) {
                CurvePoint cp;
                cp.sweep_value = w_star;
                cp.point = *h;
                pts.push_back(cp);
            }
        }
        // refine the window edge cos(psi) = -1 where the two acos branches merge
        if (psi_sign > 0) {
            auto edge = [&](double w) { return tp_rhs(td, w) + 1.0; };
            SignScan scan = scan_sign_changes(edge, omega_lo, omega_hi, n_sweep);
            for (int i : scan.brackets) {
                const double w_star = brent_root(edge, scan.grid[i], scan.grid[i + 1]);
                if (auto h = tp_solve(td, mode, w_star, +1)) {
                    CurvePoint cp;
                    cp.sweep_value = w_star;
                    cp.point = *h;
                    pts.push_back(cp);
                }
            }
        }
        curve.points.insert(curve.points.end(), pts.begin(), pts.end());
    }
    std::sort(curve.points.begin(), curve.points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.sweep_value < b.sweep_value; });
    return curve;
}

std::optional<HopfPoint> hopf_from_target(cplx target, HopfMode mode, int branch) {
    const double m = std::abs(target);
    if (m <= 1.0 + 1e-12) return std::nullopt;  // includes tangent targets, w ~ 0
    HopfPoint h;
    h.mode = mode;
    h.branch = branch;
    h.omega = std::sqrt(m * m - 1.0);
    // modulus fixes w; the argument fixes tau modulo one period 2pi/w:
    // w tau + atan(w) = arg(target) (mod 2pi), with atan(w) = acos(1/m)
    const double period = 2.0 * M_PI / h.omega;
    double tau = (std::arg(target) - std::acos(1.0 / m)) / h.omega;
    tau = std::fmod(tau, period);
    if (tau < 0.0) tau += period;
    h.tau_D = tau + branch * period;
    h.residual = std::abs(characteristic_value(cplx(0.0, h.omega), h.tau_D) - target);
    return h;
}

}  // namespace nfield
