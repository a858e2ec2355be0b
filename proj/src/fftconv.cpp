#include "nfield/fftconv.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

namespace nfield {

namespace {
// fftw planning is not reentrant; execution on per-instance buffers is
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

struct RealFft::Impl {
    int d, mx, my;
    int nreal, nspec;
    double* rbuf = nullptr;
    fftw_complex* cbuf = nullptr;
    fftw_plan fwd = nullptr, inv = nullptr;

    Impl(int d_, int mx_, int my_) : d(d_), mx(mx_), my(my_) {
        if (d != 1 && d != 2) throw std::invalid_argument("RealFft: d must be 1 or 2");
        if (mx < 2 || (d == 2 && my < 2)) throw std::invalid_argument("RealFft: size too small");
        nreal = d == 1 ? mx : mx * my;
        nspec = d == 1 ? mx / 2 + 1 : mx * (my / 2 + 1);
        rbuf = fftw_alloc_real(nreal);
        cbuf = fftw_alloc_complex(nspec);
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (d == 1) {
            fwd = fftw_plan_dft_r2c_1d(mx, rbuf, cbuf, FFTW_ESTIMATE);
            inv = fftw_plan_dft_c2r_1d(mx, cbuf, rbuf, FFTW_ESTIMATE);
        } else {
            fwd = fftw_plan_dft_r2c_2d(mx, my, rbuf, cbuf, FFTW_ESTIMATE);
            inv = fftw_plan_dft_c2r_2d(mx, my, cbuf, rbuf, FFTW_ESTIMATE);
        }
        if (!fwd || !inv) throw std::runtime_error("RealFft: planning failed");
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
        fftw_free(rbuf);
        fftw_free(cbuf);
    }
};

RealFft::RealFft(int d, int mx, int my) : impl_(std::make_unique<Impl>(d, mx, my)) {}
RealFft::~RealFft() = default;

int RealFft::real_size() const { return impl_->nreal; }
int RealFft::spectrum_size() const { return impl_->nspec; }

void RealFft::forward(const std::vector<double>& in, std::vector<cplx>& out) {
    if (int(in.size()) != impl_->nreal) throw std::invalid_argument("RealFft::forward: size");
    std::memcpy(impl_->rbuf, in.data(), impl_->nreal * sizeof(double));
    fftw_execute(impl_->fwd);
    out.resize(impl_->nspec);
    std::memcpy(static_cast<void*>(out.data()), impl_->cbuf, impl_->nspec * sizeof(fftw_complex));
}

void RealFft::inverse(const std::vector<cplx>& in, std::vector<double>& out) {
    if (int(in.size()) != impl_->nspec) throw std::invalid_argument("RealFft::inverse: size");
    std::memcpy(impl_->cbuf, static_cast<const void*>(in.data()), impl_->nspec * sizeof(fftw_complex));
    fftw_execute(impl_->inv);
    out.resize(impl_->nreal);
    std::memcpy(out.data(), impl_->rbuf, impl_->nreal * sizeof(double));
}

void spectrum_multiply(std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
}

void spectrum_axpy(std::vector<cplx>& a, const std::vector<cplx>& b, cplx w) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += w * b[i];
}

}  // namespace nfield
