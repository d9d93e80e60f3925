#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gam/interp.hpp"
#include "gam/motion.hpp"

namespace gam {

// Keyframes of one entity sampled at a fixed rate; frame i sits at
// start + i / rate.
struct Trajectory {
    std::string entity;
    double rate = 90.0;  // Hz
    std::vector<Keyframe> frames;

    double start() const { return frames.empty() ? 0.0 : frames.front().timestamp; }
};

// Throws std::invalid_argument unless rate > 0 and the timestep is uniform to 1e-9.
void check_trajectory(const Trajectory& traj);

// Samples a SyntheticMotion at `rate` for frames 0..floor(duration * rate).
Trajectory synthesize_trajectory(const std::string& entity, std::uint64_t seed, double rate, double duration,
                                 const MotionModel& model = {});

struct ChannelConfig {
    int update_rate = 20;  // updates per second
    int bytes_per_update = 28;  // 7 floats of 4 bytes
    std::string label;
};

struct QoeReport {
    double rms_position_error = 0.0;  // m
    double max_position_error = 0.0;  // m
    double rms_angular_error = 0.0;   // rad
    double max_angular_error = 0.0;   // rad
    std::uint64_t bandwidth_bytes_per_sec = 0;
};

// Nearest-sample decimation to t = k / update_rate. The first and last frames
// are always sent. Throws std::invalid_argument when the update rate exceeds
// the trajectory rate or is not positive.
std::vector<Keyframe> sample_sender(const Trajectory& traj, const ChannelConfig& cfg);

std::uint64_t bandwidth_of(const ChannelConfig& cfg, std::uint64_t n_users);

// Resamples received keyframes on a target_rate grid starting at the first
// keyframe and ending at the last one. Grid points that coincide with a
// keyframe (to 1e-9 s) return that keyframe's pose. Needs at least 2 keyframes.
Trajectory receiver_reconstruct(const std::vector<Keyframe>& keyframes, double target_rate, PipelineKind kind,
                                MotorBlend blend = MotorBlend::Lerp);

// Throws std::invalid_argument when entity, rate, frame count or start differ.
QoeReport qoe_compare(const Trajectory& ground, const Trajectory& reconstructed);

struct Tier {
    std::string label;
    int soa_rate = 0;
    int ours_rate = 0;
};

// Default network-quality tiers.
std::vector<Tier> default_tiers();

struct Table1Row {
    Tier tier;
    std::uint64_t soa_bandwidth = 0;
    std::uint64_t ours_bandwidth = 0;
    int saving_percent = 0;  // rounded half up
};

std::vector<Table1Row> table1_report(const std::vector<Tier>& tiers, int bytes_per_update = 28,
                                     std::uint64_t n_users = 1);

struct SweepCell {
    std::string tier;
    PipelineKind pipeline = PipelineKind::SoA;
    std::string role;  // "soa" or "ours": which rate of the tier was used
    int update_rate = 0;
    QoeReport qoe;
};

struct SweepConfig {
    std::uint64_t seed = 1;
    double base_rate = 90.0;
    double duration = 10.0;
    std::vector<Tier> tiers = default_tiers();
    std::vector<PipelineKind> pipelines{std::begin(kAllPipelines), std::end(kAllPipelines)};
    MotorBlend blend = MotorBlend::Lerp;
    int jobs = 1;
};

// One cell per (tier, pipeline, rate role). Cells are independent and run on
// up to cfg.jobs threads; the result order does not depend on jobs.
std::vector<SweepCell> run_sweep(const SweepConfig& cfg);

// Column order: tier,pipeline,role,update_rate,bandwidth_bytes_per_sec,
// rms_position_error_m,max_position_error_m,rms_angular_error_rad,max_angular_error_rad
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);
// Column order: tier,soa_rate,ours_rate,soa_bytes_per_sec,ours_bytes_per_sec,saving_percent
void write_table1_csv(std::ostream& out, const std::vector<Table1Row>& rows);

}  // namespace gam
