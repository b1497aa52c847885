#include "evprop/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

namespace evprop {

namespace {

struct Binding {
    std::string key;
    std::variant<double*, int*, int64_t*, uint64_t*, std::string*> ptr;
};

std::vector<Binding> bindings(PipelineConfig& c) {
    return {
        {"pipeline.chunk_dt_us", &c.chunk_dt_us},
        {"pipeline.seed", &c.seed},
        {"pipeline.threads", &c.threads},
        {"pipeline.detector", &c.detector},
        {"stc.spatial_radius", &c.stc.spatial_radius},
        {"stc.temporal_window_us", &c.stc.temporal_window_us},
        {"stc.min_support", &c.stc.min_support},
        {"detect.min_area", &c.detect.min_area},
        {"detect.erosion_radius", &c.detect.erosion_radius},
        {"detect.binarize_threshold", &c.detect.binarize_threshold},
        {"detect.cluster_min_size", &c.detect.cluster_min_size},
        {"detect.cluster_min_samples", &c.detect.cluster_min_samples},
        {"detect.cluster_max_core_distance", &c.detect.cluster_max_core_distance},
        {"detect.subsample_max", &c.detect.subsample_max},
        {"detect.min_major_axis", &c.detect.min_major_axis},
        {"track.dist_threshold", &c.tracker.dist_threshold},
        {"track.max_missing", &c.tracker.max_missing},
        {"rpm.bin_width_us", &c.roi.bin_width_us},
        {"rpm.window_us", &c.roi.window_us},
        {"rpm.f_min_hz", &c.f_min_hz},
        {"rpm.f_max_hz", &c.f_max_hz},
        {"rpm.min_snr", &c.min_snr},
        {"rpm.kf_q_process", &c.rpm_kf.q_process},
        {"rpm.kf_r_meas", &c.rpm_kf.r_meas},
        {"rpm.kf_gate_sigma", &c.rpm_kf.gate_sigma},
        {"camera.fx", &c.camera.fx},
        {"camera.fy", &c.camera.fy},
        {"camera.cx", &c.camera.cx},
        {"camera.cy", &c.camera.cy},
        {"camera.width", &c.camera.width},
        {"camera.height", &c.camera.height},
        {"extrinsics.qw", &c.extrinsics.rotation.w()},
        {"extrinsics.qx", &c.extrinsics.rotation.x()},
        {"extrinsics.qy", &c.extrinsics.rotation.y()},
        {"extrinsics.qz", &c.extrinsics.rotation.z()},
        {"extrinsics.tx", &c.extrinsics.translation.x()},
        {"extrinsics.ty", &c.extrinsics.translation.y()},
        {"extrinsics.tz", &c.extrinsics.translation.z()},
        {"observer.x", &c.observer.position.x()},
        {"observer.y", &c.observer.position.y()},
        {"observer.z", &c.observer.position.z()},
        {"observer.qw", &c.observer.orientation.w()},
        {"observer.qx", &c.observer.orientation.x()},
        {"observer.qy", &c.observer.orientation.y()},
        {"observer.qz", &c.observer.orientation.z()},
        {"quad.mass", &c.quad.mass},
        {"quad.c_f", &c.quad.c_f},
        {"quad.k_roll", &c.quad.k_roll},
        {"quad.n_blades", &c.quad.n_blades},
        {"quad.prop_diagonal_m", &c.quad.prop_diagonal_m},
        {"quad.disc_radius_m", &c.quad.disc_radius_m},
        {"estimate.q_pos", &c.position_kf.q_pos},
        {"estimate.q_vel", &c.position_kf.q_vel},
        {"estimate.sigma_lat", &c.position_kf.sigma_lat},
        {"estimate.sigma_depth", &c.position_kf.sigma_depth},
        {"estimate.pos_gate_chi2", &c.position_kf.gate_chi2},
        {"estimate.q_ori", &c.orientation_kf.q_ori},
        {"estimate.sigma_m", &c.orientation_kf.sigma_m},
        {"estimate.ori_gate_chi2", &c.orientation_kf.gate_chi2},
        {"estimate.min_span_px", &c.min_span_px},
        {"sim.beta", &c.dynamics.beta},
        {"sim.prop_radius", &c.generator.prop_radius},
        {"sim.blade_width", &c.generator.blade_width},
        {"sim.hub_radius_frac", &c.generator.hub_radius_frac},
        {"sim.events_per_crossing", &c.generator.events_per_crossing},
        {"sim.contrast_threshold", &c.generator.contrast_threshold},
        {"sim.noise_rate", &c.generator.noise_rate},
        {"metrics.warmup_us", &c.warmup_us},
        {"metrics.mape_max_pct", &c.mape_max_pct},
        {"metrics.pos_rmse_max_lat_m", &c.pos_rmse_max_lat_m},
        {"metrics.pos_rmse_max_depth_m", &c.pos_rmse_max_depth_m},
        {"metrics.vel_rmse_max_mps", &c.vel_rmse_max_mps},
        {"metrics.roll_rmse_max_deg", &c.roll_rmse_max_deg},
        {"metrics.pitch_rmse_max_deg", &c.pitch_rmse_max_deg},
    };
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void assign(const Binding& b, const std::string& value, const std::string& where) {
    try {
        std::visit(
            [&](auto* p) {
                using T = std::remove_pointer_t<decltype(p)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    *p = value;
                } else if constexpr (std::is_same_v<T, double>) {
                    *p = std::stod(value);
                } else {
                    *p = static_cast<T>(std::stoll(value));
                }
            },
            b.ptr);
    } catch (const std::exception&) {
        throw std::runtime_error(where + ": bad value for " + b.key + ": '" + value + "'");
    }
}

} // namespace

void PipelineConfig::finalize() {
    generator.seed = seed;
    generator.n_blades = quad.n_blades;
    detect.subsample_seed = seed;
    extrinsics.rotation.normalize();
    observer.orientation.normalize();
}

PipelineConfig parse_config_text(const std::string& text, const std::string& origin) {
    PipelineConfig config;
    auto binds = bindings(config);
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool found = false;
        for (auto& b : binds) {
            if (b.key == key) {
                assign(b, value, origin + ":" + std::to_string(line_no));
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": unknown key '" +
                                     key + "'");
        }
    }
    config.finalize();
    return config;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string config_to_text(const PipelineConfig& config) {
    auto& c = const_cast<PipelineConfig&>(config);
    std::string out;
    for (const auto& b : bindings(c)) {
        out += b.key;
        out += " = ";
        std::visit(
            [&](auto* p) {
                using T = std::remove_pointer_t<decltype(p)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    out += *p;
                } else if constexpr (std::is_same_v<T, double>) {
                    char buf[32];
                    std::snprintf(buf, sizeof(buf), "%.17g", *p);
                    out += buf;
                } else {
                    out += std::to_string(*p);
                }
            },
            b.ptr);
        out += '\n';
    }
    return out;
}

std::string config_hash(const PipelineConfig& config) {
    const std::string text = config_to_text(config);
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace evprop
