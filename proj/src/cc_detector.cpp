#include "evprop/cc_detector.hpp"

#include <algorithm>
#include <numeric>

#include "evprop/morphology.hpp"

namespace evprop {

namespace {

struct UnionFind {
    std::vector<int32_t> parent;

    int32_t make() {
        parent.push_back(static_cast<int32_t>(parent.size()));
        return parent.back();
    }
    int32_t find(int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

struct ComponentStats {
    int64_t sum_x = 0;
    int64_t sum_y = 0;
    int64_t n = 0;
    int x_min = 1 << 30, y_min = 1 << 30, x_max = -1, y_max = -1;

    void add(int x, int y) {
        sum_x += x;
        sum_y += y;
        ++n;
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
};

} // namespace

int label_components(const std::vector<uint8_t>& mask, int width, int height,
                     std::vector<int32_t>& labels) {
    labels.assign(mask.size(), -1);
    UnionFind uf;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const size_t i = static_cast<size_t>(y) * width + x;
            if (!mask[i]) continue;
            int32_t label = -1;
            // Prior neighbors in raster order: W, NW, N, NE.
            const int nx[4] = {x - 1, x - 1, x, x + 1};
            const int ny[4] = {y, y - 1, y - 1, y - 1};
            for (int k = 0; k < 4; ++k) {
                if (nx[k] < 0 || ny[k] < 0 || nx[k] >= width) continue;
                const int32_t nl = labels[static_cast<size_t>(ny[k]) * width + nx[k]];
                if (nl < 0) continue;
                if (label < 0) {
                    label = nl;
                } else {
                    uf.unite(label, nl);
                }
            }
            if (label < 0) label = uf.make();
            labels[i] = label;
        }
    }
    // Flatten to consecutive component ids in first-appearance order.
    std::vector<int32_t> remap(uf.parent.size(), -1);
    int32_t next = 0;
    for (auto& l : labels) {
        if (l < 0) continue;
        const int32_t root = uf.find(l);
        if (remap[root] < 0) remap[root] = next++;
        l = remap[root];
    }
    return next;
}

std::vector<Detection> detect_cc(const EventFrame& frame, const DetectorParams& params) {
    const int w = frame.width, h = frame.height;
    std::vector<uint8_t> binary(frame.counts.size());
    const auto thr = static_cast<uint32_t>(params.binarize_threshold);
#pragma omp parallel for schedule(static) if (h >= 128)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            binary[i] = frame.counts[i] >= thr;
        }
    }

    const int r = params.erosion_radius;
    const std::vector<uint8_t> eroded = erode_box(binary, w, h, r);

    std::vector<int32_t> labels;
    const int n_components = label_components(eroded, w, h, labels);
    if (n_components == 0) return {};

    // Recover each component's pre-erosion footprint: dilate the eroded core
    // and keep binary pixels not yet claimed by an earlier component.
    std::vector<int32_t> claim(binary.size(), -1);
    std::vector<ComponentStats> stats(n_components);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int32_t label = labels[static_cast<size_t>(y) * w + x];
            if (label < 0) continue;
            const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
            const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
            for (int yy = y0; yy <= y1; ++yy) {
                for (int xx = x0; xx <= x1; ++xx) {
                    const size_t j = static_cast<size_t>(yy) * w + xx;
                    if (binary[j] && claim[j] < 0) {
                        claim[j] = label;
                        stats[label].add(xx, yy);
                    }
                }
            }
        }
    }

    std::vector<Detection> detections;
    for (const ComponentStats& st : stats) {
        if (st.n < params.min_area) continue;
        Detection d;
        d.cx = static_cast<double>(st.sum_x) / static_cast<double>(st.n);
        d.cy = static_cast<double>(st.sum_y) / static_cast<double>(st.n);
        d.x_min = st.x_min;
        d.y_min = st.y_min;
        d.x_max = st.x_max;
        d.y_max = st.y_max;
        d.area = static_cast<double>(st.n);
        detections.push_back(d);
    }
    return detections;
}

} // namespace evprop
