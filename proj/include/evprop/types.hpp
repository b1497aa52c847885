#pragma once

#include <cstdint>
#include <vector>

namespace evprop {

// One polarity change at a pixel. Timestamps are integer microseconds;
// the pipeline never represents time as floating point.
struct Event {
    int64_t t = 0;       // microseconds
    uint16_t x = 0;      // pixel column
    uint16_t y = 0;      // pixel row
    int8_t polarity = 1; // +1 or -1

    friend bool operator==(const Event&, const Event&) = default;
};

using EventBuffer = std::vector<Event>;

// Events of one temporal slice [t_start, t_end), sorted non-decreasing in t.
struct EventChunk {
    int64_t t_start = 0;
    int64_t t_end = 0; // exclusive
    EventBuffer events;

    int64_t duration_us() const { return t_end - t_start; }
    bool empty() const { return events.empty(); }
    size_t size() const { return events.size(); }
};

// Per-pixel event counts accumulated over one chunk.
struct EventFrame {
    int width = 0;
    int height = 0;
    std::vector<uint32_t> counts; // row-major, counts[y * width + x]

    EventFrame() = default;
    EventFrame(int w, int h) : width(w), height(h), counts(static_cast<size_t>(w) * h, 0) {}

    uint32_t& at(int x, int y) { return counts[static_cast<size_t>(y) * width + x]; }
    uint32_t at(int x, int y) const { return counts[static_cast<size_t>(y) * width + x]; }

    uint64_t total() const {
        uint64_t s = 0;
        for (uint32_t c : counts) s += c;
        return s;
    }
};

// Spatio-temporal contrast filter: an event survives if at least min_support
// other events fall within Chebyshev distance spatial_radius and within
// temporal_window_us of it.
struct StcFilterParams {
    int spatial_radius = 2;
    int64_t temporal_window_us = 5000;
    int min_support = 2;
};

} // namespace evprop
