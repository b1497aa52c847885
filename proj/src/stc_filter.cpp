#include "evprop/stc_filter.hpp"

#include <algorithm>
#include <cstddef>

namespace evprop {

namespace {

// CSR index of events by pixel. Within one pixel the stored timestamps keep
// stream order, so they are non-decreasing.
struct PixelIndex {
    int width = 0;
    int height = 0;
    std::vector<uint32_t> offsets; // size width*height + 1
    std::vector<int64_t> times;    // size n, grouped by pixel

    void build(const EventBuffer& events) {
        int max_x = 0, max_y = 0;
        for (const Event& e : events) {
            max_x = std::max(max_x, static_cast<int>(e.x));
            max_y = std::max(max_y, static_cast<int>(e.y));
        }
        width = max_x + 1;
        height = max_y + 1;
        const size_t cells = static_cast<size_t>(width) * height;
        offsets.assign(cells + 1, 0);
        for (const Event& e : events) {
            ++offsets[static_cast<size_t>(e.y) * width + e.x + 1];
        }
        for (size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
        times.resize(events.size());
        std::vector<uint32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (const Event& e : events) {
            const size_t cell = static_cast<size_t>(e.y) * width + e.x;
            times[cursor[cell]++] = e.t;
        }
    }

    // Number of events at pixel (x, y) with |t - t0| <= win.
    int count_in_window(int x, int y, int64_t t0, int64_t win) const {
        const size_t cell = static_cast<size_t>(y) * width + x;
        const auto begin = times.begin() + offsets[cell];
        const auto end = times.begin() + offsets[cell + 1];
        const auto lo = std::lower_bound(begin, end, t0 - win);
        const auto hi = std::upper_bound(lo, end, t0 + win);
        return static_cast<int>(hi - lo);
    }
};

} // namespace

EventChunk stc_filter(const EventChunk& chunk, const StcFilterParams& params) {
    EventChunk out;
    out.t_start = chunk.t_start;
    out.t_end = chunk.t_end;
    const EventBuffer& events = chunk.events;
    if (events.empty()) return out;

    PixelIndex index;
    index.build(events);

    const int r = params.spatial_radius;
    const int64_t win = params.temporal_window_us;
    const int need = params.min_support;
    const auto n = static_cast<ptrdiff_t>(events.size());

    std::vector<uint8_t> keep(events.size(), 0);
#pragma omp parallel for schedule(static) if (n > 2048)
    for (ptrdiff_t i = 0; i < n; ++i) {
        const Event& e = events[i];
        int support = -1; // the event itself is counted once below
        const int y0 = std::max(0, e.y - r);
        const int y1 = std::min(index.height - 1, e.y + r);
        const int x0 = std::max(0, e.x - r);
        const int x1 = std::min(index.width - 1, e.x + r);
        for (int y = y0; y <= y1 && support < need; ++y) {
            for (int x = x0; x <= x1 && support < need; ++x) {
                support += index.count_in_window(x, y, e.t, win);
            }
        }
        keep[i] = support >= need;
    }

    size_t kept = 0;
    for (uint8_t k : keep) kept += k;
    out.events.reserve(kept);
    for (size_t i = 0; i < events.size(); ++i) {
        if (keep[i]) out.events.push_back(events[i]);
    }
    return out;
}

} // namespace evprop
