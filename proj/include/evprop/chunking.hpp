#pragma once

#include <optional>
#include <span>
#include <vector>

#include "evprop/types.hpp"

namespace evprop {

// Splits a time-sorted stream into chunks of length dt_us. Chunks tile
// [t0, t_last] with stride dt_us, where t0 is grid_origin_us when given and
// the first event's timestamp otherwise. The last chunk may be shorter.
// Concatenating the chunk contents reproduces the input exactly.
// Throws std::invalid_argument on an unsorted stream, naming the first
// inversion.
std::vector<EventChunk> chunk_events(std::span<const Event> stream, int64_t dt_us,
                                     std::optional<int64_t> grid_origin_us = std::nullopt);

// Verifies non-decreasing timestamps; returns the index of the first
// out-of-order event, or nullopt if sorted.
std::optional<size_t> first_inversion(std::span<const Event> stream);

} // namespace evprop
