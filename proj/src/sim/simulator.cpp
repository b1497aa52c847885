#include "evprop/sim/simulator.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace evprop::sim {

SimulationResult simulate(const std::string& profile, int64_t duration_us,
                          const QuadrotorParams& quad, const DynamicsParams& dynamics,
                          const GeneratorConfig& gen, const CameraIntrinsics& k,
                          const Extrinsics& extrinsics, const Pose& observer,
                          int64_t control_dt_us) {
    SimulationResult result;
    result.trajectory =
        scripted_flight(profile, duration_us, quad, dynamics, control_dt_us);

    std::mt19937_64 rng(gen.seed);
    for (const SimState& state : result.trajectory) {
        EventBuffer chunk_events = render_propeller_events(state, control_dt_us, observer,
                                                           extrinsics, k, quad, gen, rng);
        result.events.insert(result.events.end(), chunk_events.begin(), chunk_events.end());
    }
    std::mt19937_64 noise_rng(gen.seed ^ 0x9e3779b97f4a7c15ull);
    result.events =
        add_background_noise(result.events, k, gen, 0, duration_us, noise_rng);
    return result;
}

namespace {

void append_double(std::string& line, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), ",%.9g", v);
    line += buf;
}

} // namespace

void write_ground_truth_csv(const std::string& path, const std::vector<SimState>& trajectory) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "t_us,omega1,omega2,omega3,omega4,px,py,pz,vx,vy,vz,qw,qx,qy,qz\n";
    for (const SimState& s : trajectory) {
        std::string line = std::to_string(s.t_us);
        for (double w : s.motor_omega) append_double(line, w);
        for (int i = 0; i < 3; ++i) append_double(line, s.p(i));
        for (int i = 0; i < 3; ++i) append_double(line, s.v(i));
        append_double(line, s.q.w());
        append_double(line, s.q.x());
        append_double(line, s.q.y());
        append_double(line, s.q.z());
        out << line << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

void write_observer_csv(const std::string& path, const std::vector<SimState>& trajectory,
                        const Pose& observer) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "t_us,px,py,pz,qw,qx,qy,qz\n";
    for (const SimState& s : trajectory) {
        std::string line = std::to_string(s.t_us);
        for (int i = 0; i < 3; ++i) append_double(line, observer.position(i));
        append_double(line, observer.orientation.w());
        append_double(line, observer.orientation.x());
        append_double(line, observer.orientation.y());
        append_double(line, observer.orientation.z());
        out << line << '\n';
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

} // namespace evprop::sim
