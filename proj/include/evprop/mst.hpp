#pragma once

#include <vector>

#include "evprop/reference.hpp" // MstEdge

namespace evprop {

// Minimum spanning tree over the mutual-reachability metric
//   w(a, b) = max(euclidean(a, b), core_dist[a], core_dist[b], floor)
// on a complete graph, Prim O(n^2) with the frontier scan parallelized.
// Tie-breaking (lowest vertex index) matches reference::prim_mst exactly, so
// both produce identical edge lists.
std::vector<reference::MstEdge> prim_mst_parallel(int n, const std::vector<double>& xs,
                                                  const std::vector<double>& ys,
                                                  const std::vector<double>& core_dist,
                                                  double distance_floor = 0.0);

} // namespace evprop
