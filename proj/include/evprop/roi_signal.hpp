#pragma once

#include <cstdint>
#include <vector>

#include "evprop/detect.hpp"
#include "evprop/types.hpp"

namespace evprop {

// Events inside the fixed sub-quadrant of the detection bounding box (the
// top-left quarter). An off-center region, so blade passages modulate the
// count instead of averaging out over the disc.
EventBuffer extract_roi_events(const EventChunk& chunk, const Detection& detection);

// Count the chunk's ROI events directly into time bins.
// bins[k] covers [bins_start + k*bin_width, ...).
void bin_events(const EventBuffer& events, int64_t bins_start_us, int64_t bin_width_us,
                std::vector<uint32_t>& bins);

struct RoiSignalParams {
    int64_t bin_width_us = 200;
    int64_t window_us = 100000;
};

// Sliding window of per-bin event counts for one tracked propeller. Appending
// a chunk that is not contiguous with the previous one resets the window.
class RoiBinBuffer {
public:
    explicit RoiBinBuffer(const RoiSignalParams& params = {});

    void append(const EventBuffer& roi_events, int64_t t_start, int64_t t_end);
    void reset();

    bool filled() const { return filled_; }
    int64_t bin_width_us() const { return params_.bin_width_us; }
    // Oldest-first copy of the window; only meaningful when filled().
    std::vector<double> window() const;

private:
    RoiSignalParams params_;
    size_t capacity_;
    std::vector<uint32_t> ring_;
    size_t head_ = 0; // next write slot
    size_t count_ = 0;
    bool filled_ = false;
    int64_t expected_start_ = -1;
};

} // namespace evprop
