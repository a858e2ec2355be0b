#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace nfield {

enum class Scenario { pulse, front };

enum class PatternClass {
    stationary,
    breather,
    slosher,
    pulsatile_front,
    transverse_breather,
    other,
};
const char* pattern_name(PatternClass p);

// Space-time history of one simulation: full frames every `stride` steps plus the
// dense centre-amplitude series used for period measurements.  2d frames are
// row-major (x rows of ny samples); the front interface runs along x.
struct SpaceTimeRecord {
    int d = 1;
    int nx = 0, ny = 1;
    double L = 0.0;
    double dt = 0.0;
    double theta = 0.0;
    int stride = 1;
    Scenario scenario = Scenario::pulse;
    std::vector<double> times;                // frame times
    std::vector<std::vector<double>> frames;  // nx*ny each
    std::vector<double> series_times;         // every accepted step
    std::vector<double> center_series;        // u at the grid centre
};

// grid coordinate of sample i along an axis: -L + i dx
double record_coordinate(const SpaceTimeRecord& rec, int i);

// Threshold crossings of a 1d profile by linear interpolation, ascending.
std::vector<double> crossing_positions(const std::vector<double>& profile, double L,
                                       double theta);

// Centroid of the active region {u > theta} per stored frame (x component in 2d);
// NaN-free: frames with no active samples report 0.
std::vector<double> centroid_series(const SpaceTimeRecord& rec);

// Post-transient fluctuation energies about the time-mean frame, split into even and
// odd parts under x -> -x.  Returned as (even, odd).
std::pair<double, double> fluctuation_parity_energy(const SpaceTimeRecord& rec);

// 2d fronts: |m|-th transverse Fourier amplitude of the interface position x*(y)
// per stored frame (m = 0 gives the mean interface position series).
std::vector<double> transverse_mode_series(const SpaceTimeRecord& rec, int m);

// Dominant period of a uniformly sampled series via its autocorrelation: the first
// 30% is dropped as transient; none when the remaining peak-to-peak < 1e-4.
std::optional<double> measure_series_period(const std::vector<double>& series,
                                            double dt_sample);

// Dominant oscillation period of the record: centre amplitude for pulses and 1d
// fronts, the first transverse interface mode for 2d fronts.
std::optional<double> measure_period(const SpaceTimeRecord& rec);

// Decision tree on oscillation amplitude, x-parity of the fluctuations, and
// transverse interface energy; quiet runs are stationary, ambiguous ones other.
PatternClass classify_pattern(const SpaceTimeRecord& rec);

}  // namespace nfield
