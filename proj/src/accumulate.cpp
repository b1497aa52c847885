#include "evprop/accumulate.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evprop {

EventFrame accumulate_frame(const EventChunk& chunk, int width, int height) {
    for (size_t i = 0; i < chunk.events.size(); ++i) {
        const Event& e = chunk.events[i];
        if (e.x >= width || e.y >= height) {
            throw std::out_of_range("accumulate_frame: event " + std::to_string(i) + " at (" +
                                    std::to_string(e.x) + "," + std::to_string(e.y) +
                                    ") outside " + std::to_string(width) + "x" +
                                    std::to_string(height));
        }
    }

    EventFrame frame(width, height);
    const auto n = static_cast<ptrdiff_t>(chunk.events.size());
    if (n > 1 << 15) {
#pragma omp parallel for schedule(static)
        for (ptrdiff_t i = 0; i < n; ++i) {
            const Event& e = chunk.events[i];
            uint32_t& cell = frame.counts[static_cast<size_t>(e.y) * width + e.x];
#pragma omp atomic
            ++cell;
        }
    } else {
        for (const Event& e : chunk.events) {
            ++frame.counts[static_cast<size_t>(e.y) * width + e.x];
        }
    }
    return frame;
}

} // namespace evprop
