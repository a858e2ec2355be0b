#pragma once

#include <memory>
#include <vector>

#include "nfield/numerics.hpp"

namespace nfield {

// Real-to-complex FFT of a fixed logical size: length mx in 1d, row-major mx*my in
// 2d (the last axis is the halved one).  Transforms are unnormalized, like the
// underlying library; planning is serialized internally, execution on the instance's
// own buffers, so distinct instances may run concurrently.
class RealFft {
  public:
    RealFft(int d, int mx, int my = 1);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    int real_size() const;      // mx (1d) or mx*my (2d)
    int spectrum_size() const;  // mx/2+1 (1d) or mx*(my/2+1) (2d)

    void forward(const std::vector<double>& in, std::vector<cplx>& out);
    void inverse(const std::vector<cplx>& in, std::vector<double>& out);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// a *= b, elementwise
void spectrum_multiply(std::vector<cplx>& a, const std::vector<cplx>& b);
// a += w * b
void spectrum_axpy(std::vector<cplx>& a, const std::vector<cplx>& b, cplx w);

}  // namespace nfield
