#pragma once

#include <optional>
#include <span>
#include <vector>

namespace evprop {

// DFT magnitudes for bins [bin_lo, bin_hi] of an N-point transform, one
// Goertzel recurrence per bin, parallel over bins. Matches a full FFT's
// magnitudes on those bins.
std::vector<double> band_dft_magnitudes(std::span<const double> samples, int bin_lo, int bin_hi);

struct FreqEstimatorParams {
    double sample_rate_hz = 5000.0; // 1 / bin width
    double f_min_hz = 50.0;
    double f_max_hz = 1000.0;
    double min_snr = 3.0; // peak over median band magnitude
};

// Blade-passage frequency of a binned event-count window: remove DC, apply a
// Hann window, take the magnitude spectrum over the search band, pick the
// maximum bin and refine with 3-point parabolic interpolation on the log
// magnitudes. Returns nothing when the band has no usable peak.
std::optional<double> estimate_frequency(std::span<const double> samples,
                                         const FreqEstimatorParams& params);

// Interpolation offset in [-1, 1] bins from log-magnitudes at (k-1, k, k+1).
double parabolic_peak_offset(double mag_lo, double mag_mid, double mag_hi);

} // namespace evprop
