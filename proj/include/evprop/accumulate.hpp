#pragma once

#include "evprop/types.hpp"

namespace evprop {

// Accumulates per-pixel event counts over one chunk. Throws
// std::out_of_range if any event lies outside width x height.
EventFrame accumulate_frame(const EventChunk& chunk, int width, int height);

} // namespace evprop
