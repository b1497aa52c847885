#include "evprop/morphology.hpp"

#include <algorithm>

namespace evprop {

std::vector<uint32_t> box_sums(const std::vector<uint8_t>& mask, int width, int height,
                               int radius) {
    // Integral image with a zero top row / left column.
    const int iw = width + 1;
    std::vector<uint32_t> integral(static_cast<size_t>(iw) * (height + 1), 0);

#pragma omp parallel for schedule(static) if (height >= 128)
    for (int y = 0; y < height; ++y) {
        uint32_t row_sum = 0;
        for (int x = 0; x < width; ++x) {
            row_sum += mask[static_cast<size_t>(y) * width + x];
            integral[static_cast<size_t>(y + 1) * iw + x + 1] = row_sum;
        }
    }
    for (int y = 1; y <= height; ++y) {
        uint32_t* row = integral.data() + static_cast<size_t>(y) * iw;
        const uint32_t* prev = integral.data() + static_cast<size_t>(y - 1) * iw;
        for (int x = 1; x <= width; ++x) row[x] += prev[x];
    }

    std::vector<uint32_t> sums(static_cast<size_t>(width) * height);
#pragma omp parallel for schedule(static) if (height >= 128)
    for (int y = 0; y < height; ++y) {
        const int y0 = std::max(0, y - radius), y1 = std::min(height - 1, y + radius);
        for (int x = 0; x < width; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(width - 1, x + radius);
            const uint32_t s = integral[static_cast<size_t>(y1 + 1) * iw + x1 + 1] -
                               integral[static_cast<size_t>(y0) * iw + x1 + 1] -
                               integral[static_cast<size_t>(y1 + 1) * iw + x0] +
                               integral[static_cast<size_t>(y0) * iw + x0];
            sums[static_cast<size_t>(y) * width + x] = s;
        }
    }
    return sums;
}

std::vector<uint8_t> erode_box(const std::vector<uint8_t>& mask, int width, int height,
                               int radius) {
    if (radius <= 0) return mask;
    const auto sums = box_sums(mask, width, height, radius);
    const uint32_t full = static_cast<uint32_t>(2 * radius + 1) * (2 * radius + 1);
    std::vector<uint8_t> out(mask.size());
#pragma omp parallel for schedule(static) if (height >= 128)
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const size_t i = static_cast<size_t>(y) * width + x;
            out[i] = sums[i] == full;
        }
    }
    return out;
}

std::vector<uint8_t> dilate_box(const std::vector<uint8_t>& mask, int width, int height,
                                int radius) {
    if (radius <= 0) return mask;
    const auto sums = box_sums(mask, width, height, radius);
    std::vector<uint8_t> out(mask.size());
#pragma omp parallel for schedule(static) if (height >= 128)
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const size_t i = static_cast<size_t>(y) * width + x;
            out[i] = sums[i] > 0;
        }
    }
    return out;
}

} // namespace evprop
