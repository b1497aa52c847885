#pragma once

#include "evprop/types.hpp"

namespace evprop {

// Removes events lacking spatio-temporal support: an event is retained iff at
// least params.min_support other events lie within Chebyshev distance
// params.spatial_radius and within params.temporal_window_us of it.
// Event order is preserved; output is a subset of the input.
// Grid-indexed, parallel over events.
EventChunk stc_filter(const EventChunk& chunk, const StcFilterParams& params);

} // namespace evprop
