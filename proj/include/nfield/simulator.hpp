#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfield/fftconv.hpp"
#include "nfield/kernel.hpp"
#include "nfield/records.hpp"

namespace nfield {

struct Grid {
    int d = 1;
    double L = 0.0;  // half length per axis; domain [-L, L)
    int n = 0;       // samples per axis, power of two
    double dx() const { return 2.0 * L / n; }
};

// n a power of two; L covers 8x the widest length scale; dx resolves the narrowest
// one with >= 8 samples.  Throws std::invalid_argument otherwise.
void validate_grid(const Grid& g, const KernelParams& k, const InputProfile& input);

struct SimConfig {
    Grid grid;
    KernelParams kernel;
    InputProfile input;
    DelayModel delays;
    double theta = 0.3;
    double dt = 0.005;
    double T = 100.0;
    int stride = 20;  // steps between stored frames
    Scenario scenario = Scenario::pulse;
    std::vector<double> init_field;  // nx*ny row-major; history held constant at this
};

// Field blow-up; carries the index of the last finite stored frame.
struct SimulationAbort : std::runtime_error {
    int last_good_frame;
    SimulationAbort(const std::string& msg, int frame)
        : std::runtime_error(msg), last_good_frame(frame) {}
};

// Heun integrator for du/dt = -u + J *_delay f(u) + I with f = {u > theta}.  The
// nonlocal term thresholds the (time-interpolated) delayed field and convolves the
// indicator with the kernel by FFT, zero-padded to twice the box per open axis.
// Fronts clamp the left exterior to the active plateau through a precomputed
// closed-form tail term, and in 2d keep the transverse axis periodic.  Finite
// axonal speeds (d = 1) split the kernel into distance annuli, one per time step
// of extra lag, and accumulate cached indicator spectra bin by bin.
class Simulator {
  public:
    explicit Simulator(const SimConfig& cfg);
    ~Simulator();
    Simulator(const Simulator&) = delete;
    Simulator& operator=(const Simulator&) = delete;

    void step();
    void run(SpaceTimeRecord& rec);
    SpaceTimeRecord run();

    double time() const;
    const std::vector<double>& field() const;
    const SimConfig& config() const;

    // test hooks: the nonlocal term at the current time, by FFT and by direct
    // summation over the same kernel samples (1d)
    std::vector<double> nonlocal_term();
    std::vector<double> nonlocal_reference();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace nfield
