#include "evprop/freq_estimator.hpp"

#include <algorithm>
#include <cmath>

namespace evprop {

std::vector<double> band_dft_magnitudes(std::span<const double> samples, int bin_lo, int bin_hi) {
    const int n = static_cast<int>(samples.size());
    std::vector<double> mags(bin_hi - bin_lo + 1, 0.0);
#pragma omp parallel for schedule(static)
    for (int k = bin_lo; k <= bin_hi; ++k) {
        const double w = 2.0 * M_PI * k / n;
        const double cw = std::cos(w), sw = std::sin(w);
        const double coeff = 2.0 * cw;
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double s0 = samples[i] + coeff * s1 - s2;
            s2 = s1;
            s1 = s0;
        }
        const double re = s1 - s2 * cw;
        const double im = s2 * sw;
        mags[k - bin_lo] = std::sqrt(re * re + im * im);
    }
    return mags;
}

double parabolic_peak_offset(double mag_lo, double mag_mid, double mag_hi) {
    if (mag_lo <= 0.0 || mag_mid <= 0.0 || mag_hi <= 0.0) return 0.0;
    const double a = std::log(mag_lo), b = std::log(mag_mid), c = std::log(mag_hi);
    const double denom = a - 2.0 * b + c;
    if (denom >= 0.0) return 0.0; // not a strict local max in log domain
    const double delta = 0.5 * (a - c) / denom;
    return std::clamp(delta, -1.0, 1.0);
}

std::optional<double> estimate_frequency(std::span<const double> samples,
                                         const FreqEstimatorParams& params) {
    const int n = static_cast<int>(samples.size());
    if (n < 8) return std::nullopt;

    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= n;
    std::vector<double> x(samples.begin(), samples.end());
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double hann = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (n - 1));
        x[i] = (x[i] - mean) * hann;
        energy += x[i] * x[i];
    }
    if (energy <= 0.0) return std::nullopt; // constant signal

    const double df = params.sample_rate_hz / n;
    int lo = static_cast<int>(std::floor(params.f_min_hz / df));
    int hi = static_cast<int>(std::ceil(params.f_max_hz / df));
    lo = std::max(lo - 1, 1); // one guard bin each side for interpolation
    hi = std::min(hi + 1, n / 2);
    if (hi - lo < 2) return std::nullopt;

    const auto mags = band_dft_magnitudes(x, lo, hi);

    int peak = -1;
    double peak_mag = 0.0;
    for (int k = lo; k <= hi; ++k) {
        const double f = k * df;
        if (f < params.f_min_hz || f > params.f_max_hz) continue;
        if (mags[k - lo] > peak_mag) {
            peak_mag = mags[k - lo];
            peak = k;
        }
    }
    if (peak < 0 || peak_mag <= 0.0) return std::nullopt;

    std::vector<double> sorted(mags);
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double floor_mag = sorted[sorted.size() / 2];
    if (peak_mag < params.min_snr * std::max(floor_mag, 1e-300)) return std::nullopt;

    double delta = 0.0;
    if (peak - 1 >= lo && peak + 1 <= hi) {
        delta = parabolic_peak_offset(mags[peak - 1 - lo], mags[peak - lo], mags[peak + 1 - lo]);
    }
    return (peak + delta) * df;
}

} // namespace evprop
