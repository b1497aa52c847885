#include "evprop/chunking.hpp"

#include <stdexcept>
#include <string>

namespace evprop {

std::optional<size_t> first_inversion(std::span<const Event> stream) {
    for (size_t i = 1; i < stream.size(); ++i) {
        if (stream[i].t < stream[i - 1].t) return i;
    }
    return std::nullopt;
}

std::vector<EventChunk> chunk_events(std::span<const Event> stream, int64_t dt_us,
                                     std::optional<int64_t> grid_origin_us) {
    if (dt_us <= 0) throw std::invalid_argument("chunk_events: dt_us must be positive");
    std::vector<EventChunk> chunks;
    if (stream.empty()) return chunks;

    if (auto inv = first_inversion(stream)) {
        throw std::invalid_argument("chunk_events: stream not sorted at index " +
                                    std::to_string(*inv) + " (t=" + std::to_string(stream[*inv].t) +
                                    " after t=" + std::to_string(stream[*inv - 1].t) + ")");
    }

    const int64_t t_first = stream.front().t;
    const int64_t t_last = stream.back().t;
    int64_t t0 = grid_origin_us.value_or(t_first);
    if (t0 > t_first) t0 = t_first;
    // Align t0 so that t_first falls inside the first emitted chunk.
    const int64_t skip = (t_first - t0) / dt_us;
    t0 += skip * dt_us;

    size_t i = 0;
    for (int64_t start = t0; start <= t_last; start += dt_us) {
        EventChunk chunk;
        chunk.t_start = start;
        chunk.t_end = std::min(start + dt_us, t_last + 1);
        while (i < stream.size() && stream[i].t < chunk.t_end) {
            chunk.events.push_back(stream[i]);
            ++i;
        }
        chunks.push_back(std::move(chunk));
    }
    return chunks;
}

} // namespace evprop
