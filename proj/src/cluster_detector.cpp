#include "evprop/cluster_detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "evprop/ellipse_fit.hpp"
#include "evprop/mst.hpp"

namespace evprop {

namespace {

constexpr double kDistanceFloor = 0.5; // pixels; below event quantization

// Core distance of every point: distance to the min_samples-th nearest
// neighbor (the point itself included). Points denser than max_core_distance
// are the only ones that matter, so the search runs on a grid with cell size
// max_core_distance and gives up (+inf) beyond it.
std::vector<double> core_distances(const std::vector<Eigen::Vector2d>& pts, int min_samples,
                                   double max_core_distance) {
    const int n = static_cast<int>(pts.size());
    std::vector<double> core(n, std::numeric_limits<double>::infinity());
    if (n == 0) return core;

    const double cell = std::max(max_core_distance, 1.0);
    double min_x = pts[0].x(), min_y = pts[0].y();
    double max_x = min_x, max_y = min_y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_y = std::min(min_y, p.y());
        max_y = std::max(max_y, p.y());
    }
    const int gw = static_cast<int>((max_x - min_x) / cell) + 1;
    const int gh = static_cast<int>((max_y - min_y) / cell) + 1;
    const size_t cells = static_cast<size_t>(gw) * gh;

    std::vector<uint32_t> offsets(cells + 1, 0);
    std::vector<int> order(n);
    auto cell_of = [&](const Eigen::Vector2d& p) {
        const int cx = static_cast<int>((p.x() - min_x) / cell);
        const int cy = static_cast<int>((p.y() - min_y) / cell);
        return static_cast<size_t>(cy) * gw + cx;
    };
    for (const auto& p : pts) ++offsets[cell_of(p) + 1];
    for (size_t i = 1; i <= cells; ++i) offsets[i] += offsets[i - 1];
    {
        std::vector<uint32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (int i = 0; i < n; ++i) order[cursor[cell_of(pts[i])]++] = i;
    }

    const double cap2 = max_core_distance * max_core_distance;
#pragma omp parallel
    {
        std::vector<double> dist2;
#pragma omp for schedule(static)
        for (int i = 0; i < n; ++i) {
            const int cx = static_cast<int>((pts[i].x() - min_x) / cell);
            const int cy = static_cast<int>((pts[i].y() - min_y) / cell);
            dist2.clear();
            for (int gy = std::max(0, cy - 1); gy <= std::min(gh - 1, cy + 1); ++gy) {
                for (int gx = std::max(0, cx - 1); gx <= std::min(gw - 1, cx + 1); ++gx) {
                    const size_t c = static_cast<size_t>(gy) * gw + gx;
                    for (uint32_t k = offsets[c]; k < offsets[c + 1]; ++k) {
                        const double d2 = (pts[order[k]] - pts[i]).squaredNorm();
                        if (d2 <= cap2) dist2.push_back(d2);
                    }
                }
            }
            if (static_cast<int>(dist2.size()) >= min_samples) {
                std::nth_element(dist2.begin(), dist2.begin() + (min_samples - 1), dist2.end());
                core[i] = std::max(std::sqrt(dist2[min_samples - 1]), kDistanceFloor);
            }
        }
    }
    return core;
}

struct CondensedEdge {
    int parent; // condensed cluster id
    int child;  // point index if !child_is_cluster, else condensed cluster id
    double lambda;
    int size;
    bool child_is_cluster;
};

} // namespace

std::vector<int> hdbscan_labels(const std::vector<Eigen::Vector2d>& points,
                                const DensityClusterParams& params) {
    const int n = static_cast<int>(points.size());
    std::vector<int> labels(n, -1);
    const int mcs = std::max(params.min_cluster_size, 2);

    const auto core_all =
        core_distances(points, std::max(params.min_samples, 1), params.max_core_distance);
    std::vector<int> kept;
    for (int i = 0; i < n; ++i) {
        if (std::isfinite(core_all[i])) kept.push_back(i);
    }
    const int m = static_cast<int>(kept.size());
    if (m < mcs) return labels;

    std::vector<double> xs(m), ys(m), core(m);
    for (int i = 0; i < m; ++i) {
        xs[i] = points[kept[i]].x();
        ys[i] = points[kept[i]].y();
        core[i] = core_all[kept[i]];
    }
    auto edges = prim_mst_parallel(m, xs, ys, core, kDistanceFloor);
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        if (a.w != b.w) return a.w < b.w;
        if (a.a != b.a) return a.a < b.a;
        return a.b < b.b;
    });

    // Single-linkage dendrogram: leaves 0..m-1, internal nodes m..2m-2.
    const int total = 2 * m - 1;
    std::vector<int> child_l(total, -1), child_r(total, -1), size(total, 1);
    std::vector<double> merge_dist(total, 0.0);
    {
        std::vector<int> uf(m), cur(m);
        std::iota(uf.begin(), uf.end(), 0);
        std::iota(cur.begin(), cur.end(), 0);
        auto find = [&](int a) {
            while (uf[a] != a) a = uf[a] = uf[uf[a]];
            return a;
        };
        int next = m;
        for (const auto& e : edges) {
            const int ra = find(e.a), rb = find(e.b);
            child_l[next] = cur[ra];
            child_r[next] = cur[rb];
            merge_dist[next] = e.w;
            size[next] = size[cur[ra]] + size[cur[rb]];
            uf[ra] = rb;
            cur[find(rb)] = next;
            ++next;
        }
    }
    const int root = total - 1;

    // Condense: keep only splits where both sides hold >= mcs points; smaller
    // side points fall out of the running cluster at the split density.
    std::vector<CondensedEdge> cedges;
    std::vector<int> relabel(total, -1);
    relabel[root] = 0;
    int n_clusters = 1;
    std::vector<int> bfs;
    bfs.push_back(root);
    auto emit_leaves = [&](int sub_root, int parent_c, double lambda) {
        std::vector<int> stack{sub_root};
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            if (v < m) {
                cedges.push_back({parent_c, v, lambda, 1, false});
            } else {
                stack.push_back(child_l[v]);
                stack.push_back(child_r[v]);
            }
        }
    };
    for (size_t qi = 0; qi < bfs.size(); ++qi) {
        const int node = bfs[qi];
        if (node < m) continue;
        const double lambda = 1.0 / std::max(merge_dist[node], kDistanceFloor);
        const int l = child_l[node], r = child_r[node];
        const int parent_c = relabel[node];
        const bool l_big = size[l] >= mcs, r_big = size[r] >= mcs;
        if (l_big && r_big) {
            relabel[l] = n_clusters++;
            cedges.push_back({parent_c, relabel[l], lambda, size[l], true});
            relabel[r] = n_clusters++;
            cedges.push_back({parent_c, relabel[r], lambda, size[r], true});
            bfs.push_back(l);
            bfs.push_back(r);
        } else if (!l_big && !r_big) {
            emit_leaves(l, parent_c, lambda);
            emit_leaves(r, parent_c, lambda);
        } else {
            const int live = l_big ? l : r;
            const int dead = l_big ? r : l;
            relabel[live] = parent_c;
            emit_leaves(dead, parent_c, lambda);
            bfs.push_back(live);
        }
    }

    // Stability via excess of mass; the root is never selectable.
    std::vector<double> birth(n_clusters, 0.0), stability(n_clusters, 0.0);
    std::vector<int> cluster_parent(n_clusters, -1);
    for (const auto& e : cedges) {
        if (e.child_is_cluster) {
            birth[e.child] = e.lambda;
            cluster_parent[e.child] = e.parent;
        }
    }
    for (const auto& e : cedges) {
        stability[e.parent] += (e.lambda - birth[e.parent]) * e.size;
    }
    std::vector<std::vector<int>> cluster_children(n_clusters);
    for (const auto& e : cedges) {
        if (e.child_is_cluster) cluster_children[e.parent].push_back(e.child);
    }
    std::vector<double> value(n_clusters, 0.0);
    std::vector<uint8_t> selected(n_clusters, 0);
    for (int c = n_clusters - 1; c >= 0; --c) {
        double child_sum = 0.0;
        for (int k : cluster_children[c]) child_sum += value[k];
        if (c == 0) break; // root propagates its children
        if (cluster_children[c].empty() || stability[c] >= child_sum) {
            value[c] = stability[c];
            selected[c] = 1;
        } else {
            value[c] = child_sum;
        }
    }

    // A selected ancestor overrides selected descendants.
    std::vector<int> owner(n_clusters, -1);
    for (int c = 0; c < n_clusters; ++c) {
        int top = -1;
        for (int a = c; a >= 0; a = cluster_parent[a]) {
            if (selected[a]) top = a;
        }
        owner[c] = top;
    }
    for (const auto& e : cedges) {
        if (!e.child_is_cluster && owner[e.parent] >= 0) {
            labels[kept[e.child]] = owner[e.parent];
        }
    }

    // Renumber clusters by lowest member point index.
    std::vector<int> first_seen;
    std::vector<int> renum(n_clusters, -1);
    for (int i = 0; i < n; ++i) {
        if (labels[i] < 0) continue;
        if (renum[labels[i]] < 0) {
            renum[labels[i]] = static_cast<int>(first_seen.size());
            first_seen.push_back(labels[i]);
        }
        labels[i] = renum[labels[i]];
    }
    return labels;
}

std::vector<Detection> detect_cluster(const EventChunk& chunk, const DetectorParams& params) {
    std::vector<Eigen::Vector2d> points;
    const size_t n = chunk.events.size();
    if (n == 0) return {};
    if (params.subsample_max > 0 && n > static_cast<size_t>(params.subsample_max)) {
        std::vector<uint32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0u);
        std::vector<uint32_t> pick;
        pick.reserve(params.subsample_max);
        std::mt19937_64 rng(params.subsample_seed);
        std::sample(idx.begin(), idx.end(), std::back_inserter(pick), params.subsample_max, rng);
        points.reserve(pick.size());
        for (uint32_t i : pick) {
            points.emplace_back(chunk.events[i].x, chunk.events[i].y);
        }
    } else {
        points.reserve(n);
        for (const Event& e : chunk.events) points.emplace_back(e.x, e.y);
    }

    DensityClusterParams cp;
    cp.min_cluster_size = params.cluster_min_size;
    cp.min_samples = params.cluster_min_samples;
    cp.max_core_distance = params.cluster_max_core_distance;
    const auto labels = hdbscan_labels(points, cp);

    int n_clusters = 0;
    for (int l : labels) n_clusters = std::max(n_clusters, l + 1);
    std::vector<std::vector<Eigen::Vector2d>> members(n_clusters);
    for (size_t i = 0; i < points.size(); ++i) {
        if (labels[i] >= 0) members[labels[i]].push_back(points[i]);
    }

    std::vector<Detection> detections;
    for (const auto& cluster : members) {
        if (static_cast<int>(cluster.size()) < params.cluster_min_size) continue;
        const auto ellipse = fit_ellipse_pca(cluster);
        if (!ellipse || ellipse->semi_major < params.min_major_axis) continue;
        Detection d;
        d.cx = ellipse->mu.x();
        d.cy = ellipse->mu.y();
        d.x_min = d.x_max = static_cast<int>(cluster.front().x());
        d.y_min = d.y_max = static_cast<int>(cluster.front().y());
        for (const auto& p : cluster) {
            d.x_min = std::min(d.x_min, static_cast<int>(p.x()));
            d.x_max = std::max(d.x_max, static_cast<int>(p.x()));
            d.y_min = std::min(d.y_min, static_cast<int>(p.y()));
            d.y_max = std::max(d.y_max, static_cast<int>(p.y()));
        }
        d.area = static_cast<double>(cluster.size());
        d.ellipse = *ellipse;
        detections.push_back(d);
    }
    return detections;
}

} // namespace evprop
