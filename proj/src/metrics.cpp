#include "evprop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "evprop/orientation_kf.hpp"

namespace evprop {

std::vector<std::pair<size_t, size_t>> align_series(std::span<const int64_t> est_t,
                                                    std::span<const int64_t> gt_t,
                                                    int64_t max_gap_us, size_t* dropped) {
    std::vector<std::pair<size_t, size_t>> pairs;
    size_t local_dropped = 0;
    size_t j = 0;
    for (size_t i = 0; i < est_t.size(); ++i) {
        while (j + 1 < gt_t.size() && gt_t[j + 1] <= est_t[i]) ++j;
        size_t best = j;
        if (j + 1 < gt_t.size() &&
            std::abs(gt_t[j + 1] - est_t[i]) < std::abs(gt_t[j] - est_t[i])) {
            best = j + 1;
        }
        if (!gt_t.empty() && std::abs(gt_t[best] - est_t[i]) <= max_gap_us) {
            pairs.emplace_back(i, best);
        } else {
            ++local_dropped;
        }
    }
    if (dropped) *dropped = local_dropped;
    if (!est_t.empty() && !gt_t.empty() && pairs.empty()) {
        throw std::runtime_error("align_series: no overlapping samples");
    }
    return pairs;
}

ErrorStats error_stats(std::span<const double> est, std::span<const double> gt) {
    ErrorStats s;
    s.n = est.size();
    if (s.n == 0) return s;
    double abs_sum = 0.0, sq_sum = 0.0, ape_sum = 0.0;
    size_t ape_n = 0;
    for (size_t i = 0; i < est.size(); ++i) {
        const double e = est[i] - gt[i];
        abs_sum += std::abs(e);
        sq_sum += e * e;
        if (std::abs(gt[i]) > 1e-9) {
            ape_sum += std::abs(e) / std::abs(gt[i]);
            ++ape_n;
        }
    }
    s.mae = abs_sum / s.n;
    s.rmse = std::sqrt(sq_sum / s.n);
    s.mape = ape_n ? 100.0 * ape_sum / ape_n : 0.0;

    double me = 0.0, mg = 0.0;
    for (size_t i = 0; i < est.size(); ++i) {
        me += est[i];
        mg += gt[i];
    }
    me /= s.n;
    mg /= s.n;
    double cov = 0.0, ve = 0.0, vg = 0.0;
    for (size_t i = 0; i < est.size(); ++i) {
        cov += (est[i] - me) * (gt[i] - mg);
        ve += (est[i] - me) * (est[i] - me);
        vg += (gt[i] - mg) * (gt[i] - mg);
    }
    if (ve > 0.0 && vg > 0.0) s.correlation = cov / std::sqrt(ve * vg);
    return s;
}

std::vector<WindowBin> windowed_error(std::span<const int64_t> t_us, std::span<const double> est,
                                      std::span<const double> gt) {
    std::map<int64_t, WindowBin> bins;
    for (size_t i = 0; i < t_us.size(); ++i) {
        const int64_t k = t_us[i] / 1000000;
        WindowBin& b = bins[k];
        b.k = k;
        b.mean_abs += std::abs(est[i] - gt[i]);
        ++b.n;
    }
    std::vector<WindowBin> out;
    out.reserve(bins.size());
    for (auto& [k, b] : bins) {
        b.mean_abs /= static_cast<double>(b.n);
        out.push_back(b);
    }
    return out;
}

double RpmMetricsReport::mean_mape() const {
    double s = 0.0;
    for (const auto& p : per_prop) s += p.mape;
    return s / 4.0;
}

double RpmMetricsReport::mean_mape_best() const {
    double s = 0.0;
    for (const auto& p : per_prop_best) s += p.mape;
    return s / 4.0;
}

namespace {

// Paired, validity-filtered, warmup-trimmed samples for one est/gt prop pair.
struct PairedChannel {
    std::vector<int64_t> t;
    std::vector<double> est, gt;
};

PairedChannel pair_channel(const RpmSeries& est, int est_prop, const RpmSeries& gt, int gt_prop,
                           int64_t t_min, const std::vector<std::pair<size_t, size_t>>& pairs) {
    PairedChannel out;
    for (const auto& [i, j] : pairs) {
        if (est.t_us[i] < t_min) continue;
        if (!est.valid[est_prop].empty() && !est.valid[est_prop][i]) continue;
        if (!gt.valid[gt_prop].empty() && !gt.valid[gt_prop][j]) continue;
        out.t.push_back(est.t_us[i]);
        out.est.push_back(est.omega[est_prop][i]);
        out.gt.push_back(gt.omega[gt_prop][j]);
    }
    return out;
}

} // namespace

RpmMetricsReport compute_rpm_metrics(const RpmSeries& est, const RpmSeries& gt,
                                     int64_t warmup_us) {
    RpmMetricsReport report;
    const auto pairs = align_series(est.t_us, gt.t_us, 5000, &report.dropped);
    const int64_t t_min = (gt.t_us.empty() ? 0 : gt.t_us.front()) + warmup_us;

    std::array<std::array<double, 4>, 4> mape_matrix{}; // [est][gt]
    std::array<std::array<ErrorStats, 4>, 4> stats_matrix;
    for (int e = 0; e < 4; ++e) {
        for (int g = 0; g < 4; ++g) {
            const auto ch = pair_channel(est, e, gt, g, t_min, pairs);
            stats_matrix[e][g] = error_stats(ch.est, ch.gt);
            mape_matrix[e][g] = stats_matrix[e][g].mape;
        }
        const auto ch = pair_channel(est, e, gt, e, t_min, pairs);
        report.per_prop[e] = stats_matrix[e][e];
        report.windowed[e] = windowed_error(ch.t, ch.est, ch.gt);
    }

    // Best fixed relabeling over all 24 permutations.
    std::array<int, 4> perm{0, 1, 2, 3};
    std::array<int, 4> best{0, 1, 2, 3};
    double best_sum = mape_matrix[0][0] + mape_matrix[1][1] + mape_matrix[2][2] +
                      mape_matrix[3][3];
    std::sort(perm.begin(), perm.end());
    do {
        double sum = 0.0;
        for (int e = 0; e < 4; ++e) sum += mape_matrix[e][perm[e]];
        if (sum < best_sum) {
            best_sum = sum;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int e = 0; e < 4; ++e) {
        report.per_prop_best[e] = stats_matrix[e][best[e]];
        report.best_permutation[e] = best[e] + 1;
    }
    return report;
}

StateMetricsReport compute_state_metrics(const StateSeries& est, const StateSeries& gt,
                                         int64_t warmup_us) {
    StateMetricsReport report;
    size_t dropped = 0;
    const auto pairs = align_series(est.t_us, gt.t_us, 5000, &dropped);
    const int64_t t_min = (gt.t_us.empty() ? 0 : gt.t_us.front()) + warmup_us;

    Eigen::Vector3d pos_sq = Eigen::Vector3d::Zero(), vel_sq = Eigen::Vector3d::Zero();
    double roll_sq = 0.0, pitch_sq = 0.0;
    size_t n = 0;
    for (const auto& [i, j] : pairs) {
        if (est.t_us[i] < t_min) continue;
        if (!est.valid.empty() && !est.valid[i]) continue;
        const Eigen::Vector3d dp = est.position[i] - gt.position[j];
        const Eigen::Vector3d dv = est.velocity[i] - gt.velocity[j];
        pos_sq += dp.cwiseProduct(dp);
        vel_sq += dv.cwiseProduct(dv);
        const double droll = est.roll[i] - gt.roll[j];
        const double dpitch = est.pitch[i] - gt.pitch[j];
        roll_sq += droll * droll;
        pitch_sq += dpitch * dpitch;
        ++n;
    }
    report.n = n;
    if (n > 0) {
        report.position_rmse = (pos_sq / static_cast<double>(n)).cwiseSqrt();
        report.velocity_rmse = (vel_sq / static_cast<double>(n)).cwiseSqrt();
        report.roll_rmse_deg = std::sqrt(roll_sq / n) * 180.0 / M_PI;
        report.pitch_rmse_deg = std::sqrt(pitch_sq / n) * 180.0 / M_PI;
    }
    return report;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) fields.push_back(item);
    return fields;
}

std::map<std::string, size_t> header_index(const std::string& path, const std::string& line,
                                           const std::vector<std::string>& required) {
    std::map<std::string, size_t> idx;
    const auto fields = split_csv(line);
    for (size_t i = 0; i < fields.size(); ++i) idx[fields[i]] = i;
    for (const auto& col : required) {
        if (!idx.count(col)) {
            throw std::runtime_error(path + ": missing column '" + col + "'");
        }
    }
    return idx;
}

double field_as_double(const std::vector<std::string>& fields, size_t i) {
    return std::stod(fields[i]);
}

} // namespace

LoadedSeries load_ground_truth_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    const std::vector<std::string> required = {"t_us", "omega1", "omega2", "omega3", "omega4",
                                               "px",   "py",     "pz",     "vx",     "vy",
                                               "vz",   "qw",     "qx",     "qy",     "qz"};
    const auto idx = header_index(path, line, required);

    LoadedSeries out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        out.rpm.t_us.push_back(static_cast<int64_t>(std::stoll(f[idx.at("t_us")])));
        for (int p = 0; p < 4; ++p) {
            out.rpm.omega[p].push_back(field_as_double(f, idx.at("omega" + std::to_string(p + 1))));
            out.rpm.valid[p].push_back(1);
        }
        out.state.t_us.push_back(out.rpm.t_us.back());
        out.state.position.emplace_back(field_as_double(f, idx.at("px")),
                                        field_as_double(f, idx.at("py")),
                                        field_as_double(f, idx.at("pz")));
        out.state.velocity.emplace_back(field_as_double(f, idx.at("vx")),
                                        field_as_double(f, idx.at("vy")),
                                        field_as_double(f, idx.at("vz")));
        const Eigen::Quaterniond q(field_as_double(f, idx.at("qw")), field_as_double(f, idx.at("qx")),
                                   field_as_double(f, idx.at("qy")), field_as_double(f, idx.at("qz")));
        const Eigen::Vector3d b_z = q * Eigen::Vector3d::UnitZ();
        const auto att = attitude_from_bz(b_z);
        out.state.roll.push_back(att ? att->roll : 0.0);
        out.state.pitch.push_back(att ? att->pitch : 0.0);
        out.state.valid.push_back(att ? 1 : 0);
    }
    return out;
}

LoadedSeries load_estimates_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    std::vector<std::string> required = {"t_us", "px", "py", "pz", "vx", "vy", "vz",
                                         "roll", "pitch", "pos_valid"};
    for (int p = 1; p <= 4; ++p) {
        required.push_back("omega" + std::to_string(p));
        required.push_back("valid" + std::to_string(p));
    }
    const auto idx = header_index(path, line, required);

    LoadedSeries out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv(line);
        out.rpm.t_us.push_back(static_cast<int64_t>(std::stoll(f[idx.at("t_us")])));
        for (int p = 0; p < 4; ++p) {
            out.rpm.omega[p].push_back(field_as_double(f, idx.at("omega" + std::to_string(p + 1))));
            out.rpm.valid[p].push_back(
                static_cast<uint8_t>(std::stoi(f[idx.at("valid" + std::to_string(p + 1))])));
        }
        out.state.t_us.push_back(out.rpm.t_us.back());
        out.state.position.emplace_back(field_as_double(f, idx.at("px")),
                                        field_as_double(f, idx.at("py")),
                                        field_as_double(f, idx.at("pz")));
        out.state.velocity.emplace_back(field_as_double(f, idx.at("vx")),
                                        field_as_double(f, idx.at("vy")),
                                        field_as_double(f, idx.at("vz")));
        out.state.roll.push_back(field_as_double(f, idx.at("roll")));
        out.state.pitch.push_back(field_as_double(f, idx.at("pitch")));
        out.state.valid.push_back(static_cast<uint8_t>(std::stoi(f[idx.at("pos_valid")])));
    }
    return out;
}

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt_corr(const std::optional<double>& c) {
    return c ? fmt_double(*c) : std::string("undefined");
}

} // namespace

void write_metrics_text(const std::string& path, const RpmMetricsReport& rpm,
                        const StateMetricsReport& state) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    for (int p = 0; p < 4; ++p) {
        const std::string key = "rpm.prop" + std::to_string(p + 1);
        out << key << ".mae = " << fmt_double(rpm.per_prop[p].mae) << '\n';
        out << key << ".rmse = " << fmt_double(rpm.per_prop[p].rmse) << '\n';
        out << key << ".mape_pct = " << fmt_double(rpm.per_prop[p].mape) << '\n';
        out << key << ".correlation = " << fmt_corr(rpm.per_prop[p].correlation) << '\n';
    }
    out << "rpm.mean_mape_pct = " << fmt_double(rpm.mean_mape()) << '\n';
    out << "rpm.best_perm_mean_mape_pct = " << fmt_double(rpm.mean_mape_best()) << '\n';
    out << "rpm.best_permutation =";
    for (int p : rpm.best_permutation) out << ' ' << p;
    out << '\n';
    out << "rpm.dropped_samples = " << rpm.dropped << '\n';
    const char* axes = "xyz";
    for (int i = 0; i < 3; ++i) {
        out << "state.position_rmse_" << axes[i] << " = " << fmt_double(state.position_rmse(i))
            << '\n';
    }
    for (int i = 0; i < 3; ++i) {
        out << "state.velocity_rmse_" << axes[i] << " = " << fmt_double(state.velocity_rmse(i))
            << '\n';
    }
    out << "state.roll_rmse_deg = " << fmt_double(state.roll_rmse_deg) << '\n';
    out << "state.pitch_rmse_deg = " << fmt_double(state.pitch_rmse_deg) << '\n';
    out << "state.samples = " << state.n << '\n';
}

void write_metrics_csv(const std::string& path, const RpmMetricsReport& rpm,
                       const StateMetricsReport& state) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "metric,prop_or_axis,value\n";
    for (int p = 0; p < 4; ++p) {
        out << "rpm_mae," << p + 1 << ',' << fmt_double(rpm.per_prop[p].mae) << '\n';
        out << "rpm_rmse," << p + 1 << ',' << fmt_double(rpm.per_prop[p].rmse) << '\n';
        out << "rpm_mape_pct," << p + 1 << ',' << fmt_double(rpm.per_prop[p].mape) << '\n';
        out << "rpm_correlation," << p + 1 << ',' << fmt_corr(rpm.per_prop[p].correlation)
            << '\n';
        for (const WindowBin& b : rpm.windowed[p]) {
            out << "rpm_windowed_mae_s" << b.k << ',' << p + 1 << ',' << fmt_double(b.mean_abs)
                << '\n';
        }
    }
    const char* axes = "xyz";
    for (int i = 0; i < 3; ++i) {
        out << "position_rmse," << axes[i] << ',' << fmt_double(state.position_rmse(i)) << '\n';
        out << "velocity_rmse," << axes[i] << ',' << fmt_double(state.velocity_rmse(i)) << '\n';
    }
    out << "roll_rmse_deg,," << fmt_double(state.roll_rmse_deg) << '\n';
    out << "pitch_rmse_deg,," << fmt_double(state.pitch_rmse_deg) << '\n';
}

} // namespace evprop
