#pragma once

#include <vector>

#include "evprop/detect.hpp"
#include "evprop/types.hpp"

namespace evprop {

// 8-connected component labeling of a binary mask. Returns per-pixel labels
// (-1 = background) and the number of components, in row-major discovery
// order.
int label_components(const std::vector<uint8_t>& mask, int width, int height,
                     std::vector<int32_t>& labels);

// Connected-component propeller detector: binarize the count frame, erode to
// split touching blobs, label, then recover each component's pre-erosion
// footprint (dilated core intersected with the binary mask) for centroid,
// bounding box and the area test.
std::vector<Detection> detect_cc(const EventFrame& frame, const DetectorParams& params);

} // namespace evprop
