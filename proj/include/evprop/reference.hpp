#pragma once

// Serial reference implementations of the parallel kernels. These favor
// obviousness over speed; the unit tests check the optimized kernels against
// them and the benchmark tool reports the speedups.

#include <cstdint>
#include <vector>

#include "evprop/types.hpp"

namespace evprop::reference {

// Brute-force O(n^2) spatio-temporal contrast filter.
EventChunk stc_filter(const EventChunk& chunk, const StcFilterParams& params);

// Plain single-pass accumulation (no bounds check; caller validates).
EventFrame accumulate_frame(const EventChunk& chunk, int width, int height);

// Binary erosion with a square structuring element of the given radius,
// checking every neighbor explicitly. Pixels outside the image count as 0.
std::vector<uint8_t> erode(const std::vector<uint8_t>& mask, int width, int height, int radius);

// Binary dilation, same structuring element.
std::vector<uint8_t> dilate(const std::vector<uint8_t>& mask, int width, int height, int radius);

// Prim's MST over the mutual-reachability metric
//   w(a, b) = sqrt(max(|a - b|^2, core[a]^2, core[b]^2, floor^2)),
// O(n^2), no threading. The greedy tie-breaking (lowest vertex index wins)
// matches the parallel kernel, so both produce identical edge lists.
struct MstEdge {
    int a;
    int b;
    double w;
};
std::vector<MstEdge> prim_mst(int n, const std::vector<double>& xs, const std::vector<double>& ys,
                              const std::vector<double>& core_dist, double distance_floor = 0.0);

// Direct DFT magnitudes over an inclusive bin range, plain loops.
std::vector<double> band_dft_magnitudes(const std::vector<double>& samples, int bin_lo, int bin_hi);

} // namespace evprop::reference
