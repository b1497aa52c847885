#include "evprop/tracker.hpp"

#include <algorithm>
#include <set>

namespace evprop {

Eigen::Vector2d predict_missing(const Track& track) {
    return track.centroid + track.velocity * static_cast<double>(track.frames_missing + 1);
}

Eigen::Vector2d track_position(const Track& track) {
    if (track.frames_missing == 0) return track.centroid;
    return track.centroid + track.velocity * static_cast<double>(track.frames_missing);
}

void Tracker::step(const std::vector<Detection>& detections) {
    struct Pair {
        double dist2;
        size_t track_idx;
        size_t det_idx;
        double det_cx, det_cy;
    };
    std::vector<Pair> pairs;
    const double thr2 = params_.dist_threshold * params_.dist_threshold;
    for (size_t ti = 0; ti < tracks_.size(); ++ti) {
        const Eigen::Vector2d expect = predict_missing(tracks_[ti]);
        for (size_t di = 0; di < detections.size(); ++di) {
            const Eigen::Vector2d c(detections[di].cx, detections[di].cy);
            const double d2 = (c - expect).squaredNorm();
            if (d2 <= thr2) pairs.push_back({d2, ti, di, c.x(), c.y()});
        }
    }
    // Ascending distance; ties broken by track id then detection position so
    // the result does not depend on the detection list order.
    std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
        if (a.dist2 != b.dist2) return a.dist2 < b.dist2;
        if (tracks_[a.track_idx].id != tracks_[b.track_idx].id)
            return tracks_[a.track_idx].id < tracks_[b.track_idx].id;
        if (a.det_cx != b.det_cx) return a.det_cx < b.det_cx;
        return a.det_cy < b.det_cy;
    });

    std::vector<uint8_t> track_used(tracks_.size(), 0), det_used(detections.size(), 0);
    for (const Pair& p : pairs) {
        if (track_used[p.track_idx] || det_used[p.det_idx]) continue;
        track_used[p.track_idx] = 1;
        det_used[p.det_idx] = 1;
        Track& t = tracks_[p.track_idx];
        const Eigen::Vector2d c(detections[p.det_idx].cx, detections[p.det_idx].cy);
        const double gap = static_cast<double>(t.frames_missing + 1);
        t.velocity = (c - t.centroid) / gap;
        t.centroid = c;
        t.frames_missing = 0;
        t.last_detection = detections[p.det_idx];
        ++t.age;
    }

    // Coast unmatched tracks, drop the long-missing ones.
    std::vector<Track> survivors;
    survivors.reserve(tracks_.size());
    for (size_t ti = 0; ti < tracks_.size(); ++ti) {
        Track& t = tracks_[ti];
        if (!track_used[ti]) {
            ++t.frames_missing;
            ++t.age;
            if (t.frames_missing > params_.max_missing) continue;
        }
        survivors.push_back(std::move(t));
    }
    tracks_ = std::move(survivors);

    // New tracks from unmatched detections, spawned in position order.
    std::vector<size_t> fresh;
    for (size_t di = 0; di < detections.size(); ++di) {
        if (!det_used[di]) fresh.push_back(di);
    }
    std::sort(fresh.begin(), fresh.end(), [&](size_t a, size_t b) {
        if (detections[a].cx != detections[b].cx) return detections[a].cx < detections[b].cx;
        return detections[a].cy < detections[b].cy;
    });
    for (size_t di : fresh) {
        Track t;
        t.id = next_id_++;
        t.centroid = Eigen::Vector2d(detections[di].cx, detections[di].cy);
        t.last_detection = detections[di];
        tracks_.push_back(std::move(t));
    }
}

std::optional<Eigen::Vector2d> quad_center(const std::vector<Track>& tracks) {
    if (tracks.size() != 4) return std::nullopt;
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    for (const Track& t : tracks) sum += track_position(t);
    return sum / 4.0;
}

std::optional<PropAssignment> PropAssigner::update(const std::vector<Track>& tracks) {
    const auto center = quad_center(tracks);
    if (!center) return std::nullopt;

    std::set<int> live;
    for (const Track& t : tracks) live.insert(t.id);
    for (auto it = assignment_.begin(); it != assignment_.end();) {
        it = live.count(it->first) ? std::next(it) : assignment_.erase(it);
    }

    PropAssignment out;
    out.quad_center = *center;

    if (assignment_.size() == 4) { // sticky: all four survived
        out.track_to_prop = assignment_;
        return out;
    }

    if (assignment_.size() == 3) { // one replacement inherits the free index
        std::set<int> used;
        for (const auto& [tid, prop] : assignment_) used.insert(prop);
        int free_prop = 0;
        for (int p = 1; p <= 4; ++p) {
            if (!used.count(p)) free_prop = p;
        }
        for (const Track& t : tracks) {
            if (!assignment_.count(t.id)) assignment_[t.id] = free_prop;
        }
        out.track_to_prop = assignment_;
        return out;
    }

    // (Re)initialize from image quadrants, y pointing down.
    std::map<int, int> fresh;
    std::set<int> quadrants;
    for (const Track& t : tracks) {
        const Eigen::Vector2d d = track_position(t) - *center;
        const bool right = d.x() > 0.0;
        const bool top = d.y() < 0.0;
        const int prop = top ? (right ? 1 : 2) : (right ? 4 : 3);
        fresh[t.id] = prop;
        quadrants.insert(prop);
    }
    if (quadrants.size() == 4) {
        assignment_ = fresh;
        out.track_to_prop = assignment_;
        return out;
    }
    // Two tracks in one quadrant and no previous assignment to fall back on.
    out.ambiguous = true;
    return std::nullopt;
}

} // namespace evprop
