#include "nfield/records.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "nfield/fftconv.hpp"

namespace nfield {

const char* pattern_name(PatternClass p) {
    switch (p) {
        case PatternClass::stationary: return "stationary";
        case PatternClass::breather: return "breather";
        case PatternClass::slosher: return "slosher";
        case PatternClass::pulsatile_front: return "pulsatile_front";
        case PatternClass::transverse_breather: return "transverse_breather";
        case PatternClass::other: return "other";
    }
    return "other";
}

double record_coordinate(const SpaceTimeRecord& rec, int i) {
    return -rec.L + 2.0 * rec.L * i / rec.nx;
}

std::vector<double> crossing_positions(const std::vector<double>& profile, double L,
                                       double theta) {
    std::vector<double> out;
    const int n = int(profile.size());
    const double dx = 2.0 * L / n;
    for (int i = 0; i + 1 < n; ++i) {
        const double v0 = profile[i] - theta, v1 = profile[i + 1] - theta;
        if (v0 == 0.0) {
            out.push_back(-L + i * dx);
        } else if (v0 * v1 < 0.0) {
            out.push_back(-L + (i + v0 / (v0 - v1)) * dx);
        }
    }
    return out;
}

std::vector<double> centroid_series(const SpaceTimeRecord& rec) {
    std::vector<double> out;
    out.reserve(rec.frames.size());
    for (const auto& fr : rec.frames) {
        double sum = 0.0;
        long count = 0;
        for (int i = 0; i < rec.nx; ++i) {
            const double x = record_coordinate(rec, i);
            for (int j = 0; j < rec.ny; ++j) {
                if (fr[std::size_t(i) * rec.ny + j] > rec.theta) {
                    sum += x;
                    ++count;
                }
            }
        }
        out.push_back(count ? sum / count : 0.0);
    }
    return out;
}

std::pair<double, double> fluctuation_parity_energy(const SpaceTimeRecord& rec) {
    const std::size_t nf = rec.frames.size();
    if (nf < 2) return {0.0, 0.0};
    const std::size_t k0 = nf * 3 / 10;  // drop the transient
    const std::size_t cells = rec.frames[0].size();
    std::vector<double> mean(cells, 0.0);
    for (std::size_t k = k0; k < nf; ++k)
        for (std::size_t i = 0; i < cells; ++i) mean[i] += rec.frames[k][i];
    for (double& m : mean) m /= double(nf - k0);

    double even = 0.0, odd = 0.0;
    for (std::size_t k = k0; k < nf; ++k) {
        const auto& fr = rec.frames[k];
        for (int i = 1; i < rec.nx; ++i) {  // i = 0 (-L) has no mirror sample
            const int im = rec.nx - i;
            for (int j = 0; j < rec.ny; ++j) {
                const double v = fr[std::size_t(i) * rec.ny + j] - mean[std::size_t(i) * rec.ny + j];
                const double vm =
                    fr[std::size_t(im % rec.nx) * rec.ny + j] - mean[std::size_t(im % rec.nx) * rec.ny + j];
                const double e = 0.5 * (v + vm), o = 0.5 * (v - vm);
                even += e * e;
                odd += o * o;
            }
        }
    }
    return {even, odd};
}

namespace {

// rightmost threshold crossing of one x-profile; clamps to the box when absent
double interface_position(const double* col, int nx, int ny_stride, double L, double theta) {
    const double dx = 2.0 * L / nx;
    for (int i = nx - 2; i >= 0; --i) {
        const double v0 = col[std::size_t(i) * ny_stride] - theta;
        const double v1 = col[std::size_t(i + 1) * ny_stride] - theta;
        if (v0 > 0.0 && v1 <= 0.0) {
            const double f = v0 / (v0 - v1);
            return -L + (i + f) * dx;
        }
    }
    return col[0] > theta ? L : -L;
}

}  // namespace

std::vector<double> transverse_mode_series(const SpaceTimeRecord& rec, int m) {
    std::vector<double> out;
    out.reserve(rec.frames.size());
    for (const auto& fr : rec.frames) {
        // interface position per transverse row
        double re = 0.0, im = 0.0;
        for (int j = 0; j < rec.ny; ++j) {
            const double xs = interface_position(fr.data() + j, rec.nx, rec.ny, rec.L, rec.theta);
            const double ph = 2.0 * M_PI * m * j / rec.ny;
            re += xs * std::cos(ph);
            im -= xs * std::sin(ph);
        }
        out.push_back(std::hypot(re, im) / rec.ny);
    }
    return out;
}

std::optional<double> measure_series_period(const std::vector<double>& series,
                                            double dt_sample) {
    const std::size_t n0 = series.size();
    const std::size_t drop = n0 * 3 / 10;
    if (n0 < 16 || n0 - drop < 16) return std::nullopt;
    std::vector<double> x(series.begin() + drop, series.end());
    const std::size_t n = x.size();
    const double p2p = *std::max_element(x.begin(), x.end()) -
                       *std::min_element(x.begin(), x.end());
    if (p2p < 1e-4) return std::nullopt;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= double(n);
    for (double& v : x) v -= mean;

    // autocorrelation through the padded power spectrum
    std::size_t M = 1;
    while (M < 2 * n) M <<= 1;
    std::vector<double> padded(M, 0.0);
    std::copy(x.begin(), x.end(), padded.begin());
    RealFft fft(1, int(M));
    std::vector<cplx> spec;
    fft.forward(padded, spec);
    for (cplx& s : spec) s = cplx(std::norm(s), 0.0);
    std::vector<double> ac;
    fft.inverse(spec, ac);
    if (!(ac[0] > 0.0)) return std::nullopt;

    // strongest lag once the correlation has decayed through zero (for a finite
    // window the fundamental's peak dominates its harmonics)
    std::size_t lo = 1;
    while (lo < n - 1 && ac[lo] > 0.0) ++lo;
    if (lo >= n - 1) lo = 1;
    std::size_t best = lo;
    for (std::size_t l = lo; l + 1 < n; ++l)
        if (ac[l] > ac[best]) best = l;
    if (best == 0 || best + 1 >= n || ac[best] < 0.2 * ac[0]) return std::nullopt;
    if (ac[best] < ac[best - 1] || ac[best] < ac[best + 1]) return std::nullopt;  // drift, not a cycle
    double delta = 0.0;
    const double denom = ac[best - 1] - 2.0 * ac[best] + ac[best + 1];
    if (denom != 0.0) delta = 0.5 * (ac[best - 1] - ac[best + 1]) / denom;
    if (std::abs(delta) > 1.0) delta = 0.0;
    return (double(best) + delta) * dt_sample;
}

std::optional<double> measure_period(const SpaceTimeRecord& rec) {
    if (rec.scenario == Scenario::front && rec.d == 2) {
        const std::vector<double> s = transverse_mode_series(rec, 1);
        return measure_series_period(s, rec.dt * rec.stride);
    }
    return measure_series_period(rec.center_series, rec.dt);
}

namespace {

double sup_fluctuation(const SpaceTimeRecord& rec, std::size_t k0) {
    const std::size_t nf = rec.frames.size();
    const std::size_t cells = rec.frames.empty() ? 0 : rec.frames[0].size();
    std::vector<double> mean(cells, 0.0);
    for (std::size_t k = k0; k < nf; ++k)
        for (std::size_t i = 0; i < cells; ++i) mean[i] += rec.frames[k][i];
    for (double& m : mean) m /= double(nf - k0);
    double sup = 0.0;
    for (std::size_t k = k0; k < nf; ++k)
        for (std::size_t i = 0; i < cells; ++i)
            sup = std::max(sup, std::abs(rec.frames[k][i] - mean[i]));
    return sup;
}

double series_variance(const std::vector<double>& s, std::size_t k0) {
    if (s.size() <= k0 + 1) return 0.0;
    double mean = 0.0;
    for (std::size_t k = k0; k < s.size(); ++k) mean += s[k];
    mean /= double(s.size() - k0);
    double var = 0.0;
    for (std::size_t k = k0; k < s.size(); ++k) var += (s[k] - mean) * (s[k] - mean);
    return var / double(s.size() - k0);
}

constexpr double kQuietTol = 1e-3;  // sup-norm fluctuation below this is stationary

}  // namespace

PatternClass classify_pattern(const SpaceTimeRecord& rec) {
    if (rec.frames.size() < 4) return PatternClass::other;
    const std::size_t k0 = rec.frames.size() / 2;  // settled half of the run
    const double sup = sup_fluctuation(rec, k0);
    if (sup < kQuietTol) return PatternClass::stationary;
    if (rec.scenario == Scenario::pulse) {
        const auto [even, odd] = fluctuation_parity_energy(rec);
        if (!(even + odd > 0.0)) return PatternClass::other;
        return odd > even ? PatternClass::slosher : PatternClass::breather;
    }
    if (rec.d == 1) return PatternClass::pulsatile_front;
    const double var0 = series_variance(transverse_mode_series(rec, 0), k0);
    double varm = 0.0;
    for (int m = 1; m <= 8; ++m)
        varm = std::max(varm, series_variance(transverse_mode_series(rec, m), k0));
    return varm > var0 ? PatternClass::transverse_breather : PatternClass::pulsatile_front;
}

}  // namespace nfield
