#pragma once

#include <cstdint>
#include <vector>

namespace evprop {

// Clipped box sums over a binary mask via an integral image, parallel over
// rows. Output[y*w+x] = sum of mask over the (2r+1)^2 box centered at (x, y),
// intersected with the image.
std::vector<uint32_t> box_sums(const std::vector<uint8_t>& mask, int width, int height,
                               int radius);

// Binary erosion / dilation with a square structuring element. Pixels outside
// the image count as background, so erosion always clears a border of the
// structuring radius.
std::vector<uint8_t> erode_box(const std::vector<uint8_t>& mask, int width, int height,
                               int radius);
std::vector<uint8_t> dilate_box(const std::vector<uint8_t>& mask, int width, int height,
                                int radius);

} // namespace evprop
