#include "nfield/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace nfield {

namespace {
std::map<int, GaussRule> g_rules;
std::mutex g_rules_mutex;

GaussRule build_rule(int n) {
    // Newton iteration on the Legendre polynomial, nodes symmetric about 0.
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}
}  // namespace

const GaussRule& gauss_legendre(int order) {
    std::lock_guard<std::mutex> lock(g_rules_mutex);
    auto it = g_rules.find(order);
    if (it == g_rules.end()) it = g_rules.emplace(order, build_rule(order)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int order) {
    const GaussRule& r = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < order; ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return s * half;
}

namespace {
double adapt_rec(const std::function<double(double)>& f, double a, double b, double whole,
                 double tol, int order, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = integrate_gl(f, a, mid, order);
    const double right = integrate_gl(f, mid, b, order);
    if (std::abs(left + right - whole) < tol || depth > 28) {
        if (depth > 28 && std::abs(left + right - whole) > 100 * tol)
            throw std::runtime_error("integrate_adaptive: recursion depth exceeded");
        return left + right;
    }
    return adapt_rec(f, a, mid, left, 0.5 * tol, order, depth + 1) +
           adapt_rec(f, mid, b, right, 0.5 * tol, order, depth + 1);
}
}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int order) {
    if (a == b) return 0.0;
    return adapt_rec(f, a, b, integrate_gl(f, a, b, order), abs_tol, order, 0);
}

double brent_root(const std::function<double(double)>& f, double a, double b, double xtol,
                  int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw std::invalid_argument("brent_root: endpoints do not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r, s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double xtol) {
    const double phi = 0.5 * (3.0 - std::sqrt(5.0));
    double x1 = a + phi * (b - a), x2 = b - phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = a + phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = b - phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

SignScan scan_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n) {
    SignScan s;
    s.grid.resize(n);
    s.values.resize(n);
    for (int i = 0; i < n; ++i) {
        s.grid[i] = lo + (hi - lo) * i / (n - 1);
        s.values[i] = f(s.grid[i]);
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (s.values[i] == 0.0 || s.values[i] * s.values[i + 1] < 0.0) s.brackets.push_back(i);
    }
    return s;
}

double derivative_5pt(const std::function<double(double)>& f, double x, double h) {
    auto d5 = [&](double hh) {
        return (f(x - 2 * hh) - 8.0 * f(x - hh) + 8.0 * f(x + hh) - f(x + 2 * hh)) / (12.0 * hh);
    };
    const double d1 = d5(h), d2 = d5(0.5 * h);
    return (16.0 * d2 - d1) / 15.0;  // one Richardson step, O(h^6)
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("NFIELD_THREADS")) {
        const long v = std::atol(env);
        if (v >= 0) hw = static_cast<unsigned>(v);
    }
    if (hw <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = std::min<std::size_t>(hw, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace nfield
