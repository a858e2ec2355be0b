#include "nfield/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace nfield {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// signed displacement index of padded slot j on an axis of m slots
int wrap_disp(int j, int m) { return j <= m / 2 ? j : j - m; }

}  // namespace

void validate_grid(const Grid& g, const KernelParams& k, const InputProfile& input) {
    if (g.d != 1 && g.d != 2) throw std::invalid_argument("grid: d must be 1 or 2");
    if (!power_of_two(g.n)) throw std::invalid_argument("grid: n must be a power of two");
    if (!(g.L > 0.0)) throw std::invalid_argument("grid: L must be positive");
    double wide = std::max(k.sigma_e, k.sigma_i);
    double narrow = std::min(k.sigma_e, k.sigma_i);
    if (input.kind == InputKind::gaussian_bump) {
        wide = std::max(wide, input.sigma);
        narrow = std::min(narrow, input.sigma);
    }
    if (g.L < 8.0 * wide)
        throw std::invalid_argument("grid: L must cover 8x the widest length scale");
    if (g.dx() > narrow / 8.0)
        throw std::invalid_argument("grid: dx must resolve the narrowest scale with 8 samples");
}

struct Simulator::Impl {
    SimConfig cfg;
    int nx = 0, ny = 1;  // field samples
    int mx = 0, my = 1;  // padded axes (my = 1 in 1d)
    long M = 0;          // padded cell count
    long cells = 0;
    double dx = 0.0;
    bool finite_c = false;
    bool clamp_left = false;

    RealFft* fft = nullptr;
    std::vector<double> ksamp;                     // padded kernel samples (c = inf)
    std::vector<cplx> kspec;                       // scaled by 1/M
    std::vector<std::vector<double>> bin_samples;  // finite c annuli, padded layout
    std::vector<std::vector<cplx>> bin_specs;      // scaled by 1/M
    int nbins = 0;

    std::vector<double> input_vec, clamp_vec, init;
    std::vector<cplx> sinit;

    std::vector<double> u, upred;
    long cur = 0;
    int udepth = 0;
    std::vector<std::vector<double>> uring;
    std::vector<std::vector<cplx>> sring;
    int frames_stored = 0;

    // scratch
    std::vector<double> delayed, padded, convout, n1, n2;
    std::vector<cplx> spec, acc;

    explicit Impl(const SimConfig& c) : cfg(c) { setup(); }
    ~Impl() { delete fft; }

    double t() const { return cur * cfg.dt; }

    void setup() {
        validate_kernel(cfg.kernel);
        validate_delays(cfg.delays);
        validate_grid(cfg.grid, cfg.kernel, cfg.input);
        if (cfg.kernel.d != cfg.grid.d)
            throw std::invalid_argument("simulator: kernel dimension must match the grid");
        if (!(cfg.dt > 0.0) || cfg.dt > 0.01)
            throw std::invalid_argument("simulator: dt must lie in (0, 0.01]");
        if (!(cfg.T > 0.0)) throw std::invalid_argument("simulator: T must be positive");
        if (cfg.stride < 1) throw std::invalid_argument("simulator: stride must be >= 1");

        const int n = cfg.grid.n;
        const bool front2d = cfg.scenario == Scenario::front && cfg.grid.d == 2;
        nx = n;
        ny = cfg.grid.d == 2 ? n : 1;
        mx = 2 * n;                          // open x boundary: zero padding
        my = cfg.grid.d == 2 ? (front2d ? n : 2 * n) : 1;  // front keeps y periodic
        M = long(mx) * my;
        cells = long(nx) * ny;
        dx = cfg.grid.dx();
        finite_c = cfg.delays.finite_speed();
        clamp_left = cfg.scenario == Scenario::front;
        fft = new RealFft(cfg.grid.d, mx, my);

        if (finite_c) {
            if (cfg.grid.d != 1)
                throw std::invalid_argument("simulator: finite axonal speed is implemented for d = 1");
            if (cfg.delays.tau_D < cfg.dt - 1e-12)
                throw std::invalid_argument("simulator: finite speed needs tau_D >= dt");
        }

        build_kernel();
        build_fields();
        build_history();
    }

    void build_kernel() {
        const double cell = cfg.grid.d == 2 ? dx * dx : dx;
        if (!finite_c) {
            ksamp.assign(M, 0.0);
            if (cfg.grid.d == 1) {
                for (int j = 0; j < mx; ++j) {
                    const double r = std::abs(wrap_disp(j, mx)) * dx;
                    ksamp[j] = connectivity_value_dim(cfg.kernel, 1, r) * cell;
                }
            } else {
                for (int jx = 0; jx < mx; ++jx)
                    for (int jy = 0; jy < my; ++jy) {
                        const double rx = wrap_disp(jx, mx) * dx;
                        const double ry = wrap_disp(jy, my) * dx;
                        ksamp[std::size_t(jx) * my + jy] =
                            connectivity_value_dim(cfg.kernel, 2, std::hypot(rx, ry)) * cell;
                    }
            }
            fft->forward(ksamp, kspec);
            for (cplx& v : kspec) v /= double(M);
            return;
        }
        // finite speed: split the kernel into annuli, one per step of extra lag,
        // distributing each sample linearly between its two neighbouring bins
        const double cdt = cfg.delays.c * cfg.dt;
        nbins = 0;
        for (int j = 0; j < mx; ++j) {
            const double r = std::abs(wrap_disp(j, mx)) * dx;
            nbins = std::max(nbins, int(std::floor(r / cdt)) + 2);
        }
        bin_samples.assign(nbins, std::vector<double>(mx, 0.0));
        for (int j = 0; j < mx; ++j) {
            const double r = std::abs(wrap_disp(j, mx)) * dx;
            const double v = connectivity_value_dim(cfg.kernel, 1, r) * cell;
            const double f = r / cdt;
            const int k0 = int(std::floor(f));
            const double w = f - k0;
            bin_samples[k0][j] += (1.0 - w) * v;
            bin_samples[k0 + 1][j] += w * v;
        }
        bin_specs.resize(nbins);
        for (int k = 0; k < nbins; ++k) {
            fft->forward(bin_samples[k], bin_specs[k]);
            for (cplx& v : bin_specs[k]) v /= double(M);
        }
    }

    void build_fields() {
        input_vec.assign(cells, 0.0);
        for (int i = 0; i < nx; ++i) {
            const double x = -cfg.grid.L + i * dx;
            for (int j = 0; j < ny; ++j) {
                const double y = ny > 1 ? -cfg.grid.L + j * dx : 0.0;
                double v = 0.0;
                if (cfg.input.kind == InputKind::gaussian_bump)
                    v = cfg.input.value(std::hypot(x, y));
                else if (cfg.input.kind == InputKind::logistic_ramp)
                    v = cfg.input.value(x);
                input_vec[std::size_t(i) * ny + j] = v;
            }
        }
        if (clamp_left) {
            // activity left of the box is permanently above threshold: its exact
            // contribution is the closed-form tail integral, per x column
            clamp_vec.resize(nx);
            for (int i = 0; i < nx; ++i) {
                const double x = -cfg.grid.L + i * dx;
                clamp_vec[i] = tail_integral_1d(cfg.kernel, x + cfg.grid.L);
            }
        }
        if (cfg.init_field.empty()) {
            init.assign(cells, 0.0);
        } else {
            if (long(cfg.init_field.size()) != cells)
                throw std::invalid_argument("simulator: init_field size must be nx*ny");
            init = cfg.init_field;
        }
        u = init;
        upred.assign(cells, 0.0);
        for (double v : init)
            if (!std::isfinite(v)) throw std::invalid_argument("simulator: init_field not finite");
    }

    void build_history() {
        const double dt = cfg.dt;
        if (!finite_c) {
            udepth = int(std::ceil(cfg.delays.tau_D / dt)) + 3;
            uring.assign(udepth, init);
            return;
        }
        udepth = int(std::floor(cfg.delays.tau_D / dt)) + nbins + 4;
        uring.assign(udepth, init);
        indicator_spectrum(init, sinit);
        sring.assign(udepth, sinit);
    }

    void indicator_spectrum(const std::vector<double>& f, std::vector<cplx>& out) {
        padded.assign(M, 0.0);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                padded[std::size_t(i) * my + j] = f[std::size_t(i) * ny + j] > cfg.theta ? 1.0 : 0.0;
        fft->forward(padded, out);
    }

    const std::vector<double>& field_at(long idx, bool allow_pred) const {
        if (idx <= 0) return init;  // history held constant before t = 0
        if (idx <= cur) {
            if (idx < cur - udepth + 1) throw std::logic_error("simulator: history underrun");
            return uring[idx % udepth];
        }
        if (idx == cur + 1 && allow_pred) return upred;
        throw std::logic_error("simulator: field requested ahead of time");
    }

    const std::vector<cplx>& spec_at(long idx) const {
        if (idx <= 0) return sinit;
        if (idx <= cur) {
            if (idx < cur - udepth + 1) throw std::logic_error("simulator: history underrun");
            return sring[idx % udepth];
        }
        throw std::logic_error("simulator: spectrum requested ahead of time");
    }

    // split s - tau_D into whole steps i0 and an interpolation weight w
    void delay_index(double s, long& i0, double& w) const {
        const double tf = (s - cfg.delays.tau_D) / cfg.dt;
        double fl = std::floor(tf);
        w = tf - fl;
        if (w > 1.0 - 1e-9) {
            fl += 1.0;
            w = 0.0;
        } else if (w < 1e-9) {
            w = 0.0;
        }
        i0 = long(fl);
    }

    void build_delayed(double s, bool allow_pred) {
        long i0;
        double w;
        delay_index(s, i0, w);
        const std::vector<double>& f0 = field_at(i0, allow_pred);
        if (w == 0.0) {
            delayed = f0;
            return;
        }
        const std::vector<double>& f1 = field_at(i0 + 1, allow_pred);
        delayed.resize(cells);
        for (long i = 0; i < cells; ++i) delayed[i] = (1.0 - w) * f0[i] + w * f1[i];
    }

    void add_clamp(std::vector<double>& out) const {
        if (!clamp_left) return;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j) out[std::size_t(i) * ny + j] += clamp_vec[i];
    }

    void nonlocal_at(double s, bool allow_pred, std::vector<double>& out) {
        if (!finite_c) {
            build_delayed(s, allow_pred);
            padded.assign(M, 0.0);
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j)
                    padded[std::size_t(i) * my + j] =
                        delayed[std::size_t(i) * ny + j] > cfg.theta ? 1.0 : 0.0;
            fft->forward(padded, spec);
            spectrum_multiply(spec, kspec);
            fft->inverse(spec, convout);
        } else {
            long i0;
            double w;
            delay_index(s, i0, w);
            acc.assign(std::size_t(fft->spectrum_size()), cplx(0.0, 0.0));
            for (int k = 0; k < nbins; ++k) {
                const std::vector<cplx>& s0 = spec_at(i0 - k);
                const std::vector<cplx>& kb = bin_specs[k];
                if (w == 0.0) {
                    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += kb[i] * s0[i];
                } else {
                    const std::vector<cplx>& s1 = spec_at(i0 - k + 1);
                    for (std::size_t i = 0; i < acc.size(); ++i)
                        acc[i] += kb[i] * ((1.0 - w) * s0[i] + w * s1[i]);
                }
            }
            fft->inverse(acc, convout);
        }
        out.resize(cells);
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                out[std::size_t(i) * ny + j] = convout[std::size_t(i) * my + j];
        add_clamp(out);
    }

    void do_step() {
        const double dt = cfg.dt;
        nonlocal_at(t(), false, n1);
        for (long i = 0; i < cells; ++i)
            upred[i] = u[i] + dt * (-u[i] + n1[i] + input_vec[i]);
        nonlocal_at(t() + dt, true, n2);
        for (long i = 0; i < cells; ++i) {
            const double k1 = -u[i] + n1[i] + input_vec[i];
            const double k2 = -upred[i] + n2[i] + input_vec[i];
            u[i] += 0.5 * dt * (k1 + k2);
        }
        ++cur;
        uring[cur % udepth] = u;
        if (finite_c) indicator_spectrum(u, sring[cur % udepth]);
        for (long i = 0; i < cells; ++i)
            if (!std::isfinite(u[i]))
                throw SimulationAbort("field lost finiteness at t = " + std::to_string(t()),
                                      frames_stored - 1);
    }

    long center_index() const {
        return cfg.grid.d == 1 ? nx / 2 : long(nx / 2) * ny + ny / 2;
    }
};

Simulator::Simulator(const SimConfig& cfg) : impl_(std::make_unique<Impl>(cfg)) {}
Simulator::~Simulator() = default;

void Simulator::step() { impl_->do_step(); }
double Simulator::time() const { return impl_->t(); }
const std::vector<double>& Simulator::field() const { return impl_->u; }
const SimConfig& Simulator::config() const { return impl_->cfg; }

void Simulator::run(SpaceTimeRecord& rec) {
    Impl& im = *impl_;
    rec.d = im.cfg.grid.d;
    rec.nx = im.nx;
    rec.ny = im.ny;
    rec.L = im.cfg.grid.L;
    rec.dt = im.cfg.dt;
    rec.theta = im.cfg.theta;
    rec.stride = im.cfg.stride;
    rec.scenario = im.cfg.scenario;
    rec.times.clear();
    rec.frames.clear();
    rec.series_times.clear();
    rec.center_series.clear();

    const long steps = std::lround(im.cfg.T / im.cfg.dt);
    const long center = im.center_index();
    rec.times.push_back(0.0);
    rec.frames.push_back(im.u);
    im.frames_stored = 1;
    rec.series_times.push_back(0.0);
    rec.center_series.push_back(im.u[center]);
    for (long s = 1; s <= steps; ++s) {
        im.do_step();
        rec.series_times.push_back(im.t());
        rec.center_series.push_back(im.u[center]);
        if (s % im.cfg.stride == 0 || s == steps) {
            rec.times.push_back(im.t());
            rec.frames.push_back(im.u);
            ++im.frames_stored;
        }
    }
}

SpaceTimeRecord Simulator::run() {
    SpaceTimeRecord rec;
    run(rec);
    return rec;
}

std::vector<double> Simulator::nonlocal_term() {
    std::vector<double> out;
    impl_->nonlocal_at(impl_->t(), false, out);
    return out;
}

std::vector<double> Simulator::nonlocal_reference() {
    Impl& im = *impl_;
    if (im.cfg.grid.d != 1)
        throw std::invalid_argument("nonlocal_reference is a 1d test hook");
    std::vector<double> out(im.nx, 0.0);
    long i0;
    double w;
    im.delay_index(im.t(), i0, w);
    if (!im.finite_c) {
        im.build_delayed(im.t(), false);
        for (int i = 0; i < im.nx; ++i) {
            double sum = 0.0;
            for (int j = 0; j < im.nx; ++j) {
                if (!(im.delayed[j] > im.cfg.theta)) continue;
                sum += im.ksamp[((i - j) % im.mx + im.mx) % im.mx];
            }
            out[i] = sum;
        }
    } else {
        // the spectral path interpolates cached indicator spectra, so the reference
        // interpolates indicators, not fields
        for (int k = 0; k < im.nbins; ++k) {
            const std::vector<double>& f0 = im.field_at(i0 - k, false);
            const std::vector<double>& f1 = w == 0.0 ? f0 : im.field_at(i0 - k + 1, false);
            for (int i = 0; i < im.nx; ++i) {
                double sum = 0.0;
                for (int j = 0; j < im.nx; ++j) {
                    const double ind0 = f0[j] > im.cfg.theta ? 1.0 : 0.0;
                    const double ind1 = f1[j] > im.cfg.theta ? 1.0 : 0.0;
                    const double v = (1.0 - w) * ind0 + w * ind1;
                    if (v == 0.0) continue;
                    sum += im.bin_samples[k][((i - j) % im.mx + im.mx) % im.mx] * v;
                }
                out[i] += sum;
            }
        }
    }
    im.add_clamp(out);
    return out;
}

}  // namespace nfield
