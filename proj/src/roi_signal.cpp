#include "evprop/roi_signal.hpp"

#include <algorithm>

namespace evprop {

EventBuffer extract_roi_events(const EventChunk& chunk, const Detection& detection) {
    const double mid_x = detection.x_min + (detection.x_max - detection.x_min) / 2.0;
    const double mid_y = detection.y_min + (detection.y_max - detection.y_min) / 2.0;
    EventBuffer out;
    for (const Event& e : chunk.events) {
        if (e.x >= detection.x_min && e.x < mid_x && e.y >= detection.y_min && e.y < mid_y) {
            out.push_back(e);
        }
    }
    return out;
}

void bin_events(const EventBuffer& events, int64_t bins_start_us, int64_t bin_width_us,
                std::vector<uint32_t>& bins) {
    for (const Event& e : events) {
        const int64_t k = (e.t - bins_start_us) / bin_width_us;
        if (k >= 0 && k < static_cast<int64_t>(bins.size())) ++bins[k];
    }
}

RoiBinBuffer::RoiBinBuffer(const RoiSignalParams& params)
    : params_(params),
      capacity_(static_cast<size_t>(params.window_us / params.bin_width_us)),
      ring_(capacity_, 0) {}

void RoiBinBuffer::reset() {
    head_ = 0;
    count_ = 0;
    filled_ = false;
    expected_start_ = -1;
    std::fill(ring_.begin(), ring_.end(), 0u);
}

void RoiBinBuffer::append(const EventBuffer& roi_events, int64_t t_start, int64_t t_end) {
    if (expected_start_ >= 0 && t_start != expected_start_) reset();
    expected_start_ = t_end;

    const int64_t n_bins = (t_end - t_start) / params_.bin_width_us;
    std::vector<uint32_t> bins(static_cast<size_t>(std::max<int64_t>(n_bins, 0)), 0);
    bin_events(roi_events, t_start, params_.bin_width_us, bins);
    for (uint32_t b : bins) {
        ring_[head_] = b;
        head_ = (head_ + 1) % capacity_;
        if (count_ < capacity_) ++count_;
    }
    filled_ = count_ == capacity_;
}

std::vector<double> RoiBinBuffer::window() const {
    std::vector<double> out(capacity_);
    for (size_t i = 0; i < capacity_; ++i) {
        out[i] = static_cast<double>(ring_[(head_ + i) % capacity_]);
    }
    return out;
}

} // namespace evprop
