#include "evprop/reference.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace evprop::reference {

EventChunk stc_filter(const EventChunk& chunk, const StcFilterParams& params) {
    EventChunk out;
    out.t_start = chunk.t_start;
    out.t_end = chunk.t_end;
    const auto& ev = chunk.events;
    for (size_t i = 0; i < ev.size(); ++i) {
        int support = 0;
        for (size_t j = 0; j < ev.size(); ++j) {
            if (j == i) continue;
            if (std::abs(static_cast<int>(ev[j].x) - static_cast<int>(ev[i].x)) >
                params.spatial_radius)
                continue;
            if (std::abs(static_cast<int>(ev[j].y) - static_cast<int>(ev[i].y)) >
                params.spatial_radius)
                continue;
            if (std::abs(ev[j].t - ev[i].t) > params.temporal_window_us) continue;
            ++support;
        }
        if (support >= params.min_support) out.events.push_back(ev[i]);
    }
    return out;
}

EventFrame accumulate_frame(const EventChunk& chunk, int width, int height) {
    EventFrame frame(width, height);
    for (const Event& e : chunk.events) {
        ++frame.counts[static_cast<size_t>(e.y) * width + e.x];
    }
    return frame;
}

std::vector<uint8_t> erode(const std::vector<uint8_t>& mask, int width, int height, int radius) {
    std::vector<uint8_t> out(mask.size(), 0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            uint8_t all = 1;
            for (int dy = -radius; dy <= radius && all; ++dy) {
                for (int dx = -radius; dx <= radius && all; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= width || ny >= height ||
                        !mask[static_cast<size_t>(ny) * width + nx]) {
                        all = 0;
                    }
                }
            }
            out[static_cast<size_t>(y) * width + x] = all;
        }
    }
    return out;
}

std::vector<uint8_t> dilate(const std::vector<uint8_t>& mask, int width, int height, int radius) {
    std::vector<uint8_t> out(mask.size(), 0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            uint8_t any = 0;
            for (int dy = -radius; dy <= radius && !any; ++dy) {
                for (int dx = -radius; dx <= radius && !any; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    if (nx >= 0 && ny >= 0 && nx < width && ny < height &&
                        mask[static_cast<size_t>(ny) * width + nx]) {
                        any = 1;
                    }
                }
            }
            out[static_cast<size_t>(y) * width + x] = any;
        }
    }
    return out;
}

std::vector<MstEdge> prim_mst(int n, const std::vector<double>& xs, const std::vector<double>& ys,
                              const std::vector<double>& core_dist, double distance_floor) {
    std::vector<MstEdge> edges;
    if (n <= 1) return edges;
    edges.reserve(n - 1);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const double floor2 = distance_floor * distance_floor;
    std::vector<double> best(n, kInf);
    std::vector<int> from(n, 0);
    std::vector<uint8_t> in_tree(n, 0);
    in_tree[0] = 1;
    auto mreach2 = [&](int a, int b) {
        const double dx = xs[a] - xs[b], dy = ys[a] - ys[b];
        double w = dx * dx + dy * dy;
        w = std::max(w, core_dist[a] * core_dist[a]);
        w = std::max(w, core_dist[b] * core_dist[b]);
        return std::max(w, floor2);
    };
    for (int v = 1; v < n; ++v) best[v] = mreach2(0, v);
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        double pick_w = kInf;
        for (int v = 0; v < n; ++v) {
            if (!in_tree[v] && best[v] < pick_w) {
                pick_w = best[v];
                pick = v;
            }
        }
        in_tree[pick] = 1;
        edges.push_back({from[pick], pick, std::sqrt(pick_w)});
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double w = mreach2(pick, v);
            if (w < best[v]) {
                best[v] = w;
                from[v] = pick;
            }
        }
    }
    return edges;
}

std::vector<double> band_dft_magnitudes(const std::vector<double>& samples, int bin_lo,
                                        int bin_hi) {
    const size_t n = samples.size();
    std::vector<double> mags;
    mags.reserve(bin_hi - bin_lo + 1);
    for (int k = bin_lo; k <= bin_hi; ++k) {
        double re = 0.0, im = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double phase = -2.0 * M_PI * k * static_cast<double>(i) / static_cast<double>(n);
            re += samples[i] * std::cos(phase);
            im += samples[i] * std::sin(phase);
        }
        mags.push_back(std::sqrt(re * re + im * im));
    }
    return mags;
}

} // namespace evprop::reference
