#include "gam/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "gam/format.hpp"

namespace gam {

namespace {

constexpr double kTimeTolerance = 1e-9;

}  // namespace

void check_trajectory(const Trajectory& traj) {
    if (!(traj.rate > 0.0)) {
        throw std::invalid_argument("trajectory rate must be positive");
    }
    for (std::size_t i = 0; i < traj.frames.size(); ++i) {
        const double expected = traj.start() + static_cast<double>(i) / traj.rate;
        if (std::abs(traj.frames[i].timestamp - expected) > kTimeTolerance) {
            throw std::invalid_argument("trajectory timestep is not uniform");
        }
    }
}

Trajectory synthesize_trajectory(const std::string& entity, std::uint64_t seed, double rate, double duration,
                                 const MotionModel& model) {
    if (!(rate > 0.0) || !(duration >= 0.0)) {
        throw std::invalid_argument("rate must be positive and duration non-negative");
    }
    const SyntheticMotion motion(seed, duration, model);
    Trajectory traj{entity, rate, {}};
    const auto count = static_cast<std::size_t>(std::floor(duration * rate + kTimeTolerance)) + 1;
    traj.frames.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / rate;
        traj.frames.push_back({t, entity, motion.at(t)});
    }
    return traj;
}

std::vector<Keyframe> sample_sender(const Trajectory& traj, const ChannelConfig& cfg) {
    if (cfg.update_rate <= 0 || cfg.update_rate > traj.rate + kTimeTolerance) {
        throw std::invalid_argument("update rate must be in [1, trajectory rate]");
    }
    std::vector<Keyframe> out;
    if (traj.frames.empty()) return out;

    const double step = traj.rate / cfg.update_rate;
    const std::size_t last = traj.frames.size() - 1;
    std::size_t prev = 0;
    out.push_back(traj.frames.front());
    for (std::size_t k = 1;; ++k) {
        const auto idx = static_cast<std::size_t>(std::llround(static_cast<double>(k) * step));
        if (idx > last) break;
        if (idx > prev) {
            out.push_back(traj.frames[idx]);
            prev = idx;
        }
    }
    if (prev != last) out.push_back(traj.frames[last]);
    return out;
}

std::uint64_t bandwidth_of(const ChannelConfig& cfg, std::uint64_t n_users) {
    return static_cast<std::uint64_t>(cfg.update_rate) * static_cast<std::uint64_t>(cfg.bytes_per_update) * n_users;
}

Trajectory receiver_reconstruct(const std::vector<Keyframe>& keyframes, double target_rate, PipelineKind kind,
                                MotorBlend blend) {
    if (keyframes.size() < 2) {
        throw std::invalid_argument("reconstruction needs at least two keyframes");
    }
    if (!(target_rate > 0.0)) {
        throw std::invalid_argument("target rate must be positive");
    }
    const double t0 = keyframes.front().timestamp;
    const double span = keyframes.back().timestamp - t0;
    const auto count = static_cast<std::size_t>(std::floor(span * target_rate + kTimeTolerance)) + 1;

    Trajectory out{keyframes.front().entity, target_rate, {}};
    out.frames.reserve(count);
    std::size_t seg = 0;
    for (std::size_t j = 0; j < count; ++j) {
        const double t = t0 + static_cast<double>(j) / target_rate;
        while (seg + 2 < keyframes.size() && keyframes[seg + 1].timestamp <= t + kTimeTolerance) ++seg;
        const Keyframe& k1 = keyframes[seg];
        const Keyframe& k2 = keyframes[seg + 1];
        Pose pose;
        if (std::abs(t - k1.timestamp) <= kTimeTolerance) {
            pose = k1.pose;
        } else if (std::abs(t - k2.timestamp) <= kTimeTolerance || t > k2.timestamp) {
            pose = k2.pose;  // hold the last pose, never extrapolate
        } else {
            pose = interpolate_pair(k1, k2, (t - k1.timestamp) / (k2.timestamp - k1.timestamp), kind, blend);
        }
        out.frames.push_back({t, out.entity, pose});
    }
    return out;
}

QoeReport qoe_compare(const Trajectory& ground, const Trajectory& reconstructed) {
    if (ground.entity != reconstructed.entity) throw std::invalid_argument("entities differ");
    if (std::abs(ground.rate - reconstructed.rate) > kTimeTolerance) throw std::invalid_argument("rates differ");
    if (ground.frames.size() != reconstructed.frames.size()) throw std::invalid_argument("spans differ");
    if (std::abs(ground.start() - reconstructed.start()) > kTimeTolerance) throw std::invalid_argument("starts differ");

    QoeReport r;
    double pos_sq = 0.0, ang_sq = 0.0;
    for (std::size_t i = 0; i < ground.frames.size(); ++i) {
        const Pose& g = ground.frames[i].pose;
        const Pose& c = reconstructed.frames[i].pose;
        const double dp = distance(g.translation, c.translation);
        const double da = rotation_angle_between(g.rotation, c.rotation);
        pos_sq += dp * dp;
        ang_sq += da * da;
        r.max_position_error = std::max(r.max_position_error, dp);
        r.max_angular_error = std::max(r.max_angular_error, da);
    }
    if (!ground.frames.empty()) {
        const auto n = static_cast<double>(ground.frames.size());
        r.rms_position_error = std::sqrt(pos_sq / n);
        r.rms_angular_error = std::sqrt(ang_sq / n);
    }
    return r;
}

std::vector<Tier> default_tiers() {
    return {{"Excellent", 30, 20}, {"Good", 20, 10}, {"Mediocre", 15, 7}, {"Poor", 12, 5}};
}

std::vector<Table1Row> table1_report(const std::vector<Tier>& tiers, int bytes_per_update, std::uint64_t n_users) {
    std::vector<Table1Row> rows;
    for (const Tier& t : tiers) {
        if (t.soa_rate <= 0 || t.ours_rate <= 0) {
            throw std::invalid_argument("tier rates must be positive");
        }
        Table1Row row{t, bandwidth_of({t.soa_rate, bytes_per_update, t.label}, n_users),
                      bandwidth_of({t.ours_rate, bytes_per_update, t.label}, n_users), 0};
        // round(100 * (soa - ours) / soa) in integers, halves away from zero
        const long long diff = static_cast<long long>(row.soa_bandwidth) - static_cast<long long>(row.ours_bandwidth);
        const long long soa = static_cast<long long>(row.soa_bandwidth);
        if (soa > 0) {
            const long long num = 200 * diff + (diff >= 0 ? soa : -soa);
            row.saving_percent = static_cast<int>(num / (2 * soa));
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<SweepCell> run_sweep(const SweepConfig& cfg) {
    const Trajectory ground = synthesize_trajectory("hand", cfg.seed, cfg.base_rate, cfg.duration);

    std::vector<SweepCell> cells;
    for (const Tier& tier : cfg.tiers) {
        for (PipelineKind kind : cfg.pipelines) {
            cells.push_back({tier.label, kind, "soa", tier.soa_rate, {}});
            cells.push_back({tier.label, kind, "ours", tier.ours_rate, {}});
        }
    }

    auto run = [&](SweepCell& cell) {
        const ChannelConfig channel{cell.update_rate, 28, cell.tier};
        const auto keys = sample_sender(ground, channel);
        cell.qoe = qoe_compare(ground, receiver_reconstruct(keys, ground.rate, cell.pipeline, cfg.blend));
        cell.qoe.bandwidth_bytes_per_sec = bandwidth_of(channel, 1);
    };

    const auto jobs = static_cast<std::size_t>(std::max(1, cfg.jobs));
    if (jobs == 1) {
        for (SweepCell& c : cells) run(c);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < jobs; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < cells.size(); i += jobs) run(cells[i]);
            });
        }
        for (std::thread& t : pool) t.join();
    }
    return cells;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
    out << "tier,pipeline,role,update_rate,bandwidth_bytes_per_sec,rms_position_error_m,max_position_error_m,"
           "rms_angular_error_rad,max_angular_error_rad\n";
    for (const SweepCell& c : cells) {
        out << c.tier << ',' << pipeline_name(c.pipeline) << ',' << c.role << ',' << c.update_rate << ','
            << c.qoe.bandwidth_bytes_per_sec << ',' << format_number(c.qoe.rms_position_error) << ','
            << format_number(c.qoe.max_position_error) << ',' << format_number(c.qoe.rms_angular_error) << ','
            << format_number(c.qoe.max_angular_error) << '\n';
    }
}

void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows) {
    out << "tier,soa_rate,ours_rate,soa_bytes_per_sec,ours_bytes_per_sec,saving_percent\n";
    for (const Table1Row& r : rows) {
        out << r.tier.label << ',' << r.tier.soa_rate << ',' << r.tier.ours_rate << ',' << r.soa_bandwidth << ','
            << r.ours_bandwidth << ',' << r.saving_percent << '\n';
    }
}

}  // namespace gam
