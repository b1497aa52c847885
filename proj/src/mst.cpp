#include "evprop/mst.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace evprop {

std::vector<reference::MstEdge> prim_mst_parallel(int n, const std::vector<double>& xs,
                                                  const std::vector<double>& ys,
                                                  const std::vector<double>& core_dist,
                                                  double distance_floor) {
    std::vector<reference::MstEdge> edges;
    if (n <= 1) return edges;
    edges.reserve(n - 1);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const double floor2 = distance_floor * distance_floor;

    std::vector<double> core2(n);
    for (int v = 0; v < n; ++v) core2[v] = core_dist[v] * core_dist[v];

    // best[v]: squared mutual-reachability weight of the cheapest edge from
    // the tree to v. in_tree vertices carry +inf so they never win the scan.
    std::vector<double> best(n, kInf);
    std::vector<int> from(n, 0);
    const double x0 = xs[0], y0 = ys[0];
    for (int v = 1; v < n; ++v) {
        const double dx = xs[v] - x0, dy = ys[v] - y0;
        double w = dx * dx + dy * dy;
        w = std::max(w, core2[0]);
        w = std::max(w, core2[v]);
        best[v] = std::max(w, floor2);
    }
    best[0] = kInf;

    const int max_threads = omp_get_max_threads();
    std::vector<double> t_best(max_threads);
    std::vector<int> t_idx(max_threads);
    const bool parallel = n >= 512;

    int pick = -1;
    {
        double w = kInf;
        for (int v = 1; v < n; ++v) {
            if (best[v] < w) {
                w = best[v];
                pick = v;
            }
        }
        edges.push_back({0, pick, std::sqrt(w)});
        best[pick] = kInf;
    }

    for (int step = 2; step < n; ++step) {
        const double px = xs[pick], py = ys[pick];
        const double pc2 = core2[pick];
        int next = -1;
        double next_w = kInf;
        if (parallel) {
#pragma omp parallel
            {
                const int tid = omp_get_thread_num();
                double lb = kInf;
                int li = -1;
#pragma omp for schedule(static) nowait
                for (int v = 0; v < n; ++v) {
                    if (best[v] == kInf) continue;
                    const double dx = xs[v] - px, dy = ys[v] - py;
                    double w = dx * dx + dy * dy;
                    w = std::max(w, pc2);
                    w = std::max(w, core2[v]);
                    w = std::max(w, floor2);
                    if (w < best[v]) {
                        best[v] = w;
                        from[v] = pick;
                    }
                    if (best[v] < lb || (best[v] == lb && v < li)) {
                        lb = best[v];
                        li = v;
                    }
                }
                t_best[tid] = lb;
                t_idx[tid] = li;
            }
            for (int t = 0; t < max_threads; ++t) {
                if (t_idx[t] < 0) continue;
                if (t_best[t] < next_w || (t_best[t] == next_w && t_idx[t] < next)) {
                    next_w = t_best[t];
                    next = t_idx[t];
                }
            }
        } else {
            for (int v = 0; v < n; ++v) {
                if (best[v] == kInf) continue;
                const double dx = xs[v] - px, dy = ys[v] - py;
                double w = dx * dx + dy * dy;
                w = std::max(w, pc2);
                w = std::max(w, core2[v]);
                w = std::max(w, floor2);
                if (w < best[v]) {
                    best[v] = w;
                    from[v] = pick;
                }
                if (best[v] < next_w) {
                    next_w = best[v];
                    next = v;
                }
            }
        }
        edges.push_back({from[next], next, std::sqrt(next_w)});
        best[next] = kInf;
        pick = next;
    }
    return edges;
}

} // namespace evprop
