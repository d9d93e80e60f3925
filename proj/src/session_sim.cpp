#include "gam/session_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gam::rec {

namespace {

std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

MotionModel entity_model(const MotionModel& base, EntityKind kind) {
    MotionModel m = base;
    switch (kind) {
        case EntityKind::Camera:
            m.base_position = {0.0, 1.6, 0.0};
            m.base_orientation = {-10.0, 0.0, 45.0};
            break;
        case EntityKind::LeftHand:
            m.base_position = {-0.25, 1.2, 0.35};
            m.base_orientation = {20.0, -10.0, 70.0};
            break;
        default:
            m.base_position = {0.25, 1.2, 0.35};
            m.base_orientation = {15.0, 10.0, -60.0};
            break;
    }
    return m;
}

constexpr EntityKind kTracked[] = {EntityKind::Camera, EntityKind::LeftHand, EntityKind::RightHand};

}  // namespace

SessionScript default_script(std::uint64_t seed, double duration, int players, const std::map<int, double>& wait_time) {
    SessionScript s;
    s.seed = seed;
    s.duration = duration;
    s.players = players;
    s.wait_time = wait_time;
    const Quaternion upright = euler_to_quat({15.0, 10.0, -60.0});
    s.objects = {{"Drill", true, {{0.3, 1.0, 0.4}, upright}},
                 {"Screw", false, {{0.5, 1.0, 0.4}, upright}},
                 {"Panel", false, {{-0.3, 1.0, 0.4}, euler_to_quat({20.0, -10.0, 70.0})}}};
    const double d = duration;
    if (players >= 1) {
        s.grabs.push_back({1, EntityKind::RightHand, "Drill", 0.15 * d, 0.55 * d});
        s.touches.push_back({1, "Drill", "Screw", 0.3 * d, 0.2, {0.05, 0.0, 0.0}});
        s.events.push_back({1, EntityKind::RightHand, 0.35 * d, kPressButton, "Drill"});
        s.events.push_back({1, EntityKind::Camera, 0.6 * d, kScenegraphTraverse, "next_stage"});
        s.grabs.push_back({1, EntityKind::LeftHand, "Panel", 0.65 * d, 0.85 * d});
    }
    for (int p = 2; p <= players; ++p) {
        const std::string box = "Box" + std::to_string(p);
        s.objects.push_back({box, false, {{0.0, 1.0, 0.6 + 0.1 * p}, euler_to_quat({20.0, -10.0, 70.0})}});
        s.grabs.push_back({p, EntityKind::LeftHand, box, 0.2 * d, 0.5 * d});
        s.events.push_back({p, EntityKind::Camera, 0.7 * d, kScenegraphTraverse, "previous_stage"});
    }
    return s;
}

void record_session(const SessionScript& script, const std::filesystem::path& dir) {
    if (!(script.frame_rate > 0.0) || !(script.duration >= 0.0) || script.players < 0) {
        throw std::invalid_argument("invalid session script");
    }
    const double rate = script.frame_rate;
    SessionInfo info;
    info.duration = script.duration;
    info.frame_rate = rate;
    info.players = script.players;
    info.wait_time = script.wait_time;

    const long last_frame = static_cast<long>(std::floor(script.duration * rate + 1e-9));
    auto local_frame = [&](double t) { return std::lround(t * rate); };

    struct Player {
        long offset = 0;
        std::map<EntityKind, SyntheticMotion> motion;
        std::map<EntityKind, InteractionState> state;
        std::map<EntityKind, Pose> pose;
    };
    std::map<int, Player> players;
    for (int p = 1; p <= script.players; ++p) {
        Player& pl = players[p];
        pl.offset = std::lround(info.wait_of(p) * rate);
        for (EntityKind k : kTracked) {
            const std::uint64_t seed = mix(script.seed ^ mix(static_cast<std::uint64_t>(p) * 16 + static_cast<std::uint64_t>(k)));
            pl.motion.emplace(k, SyntheticMotion(seed, script.duration, entity_model(script.motion, k)));
            pl.state[k] = InteractionState{{p, k, {}}, std::nullopt, 0.0};
        }
    }

    std::map<std::string, SceneObject> objects;
    for (const SceneObject& o : script.objects) objects[o.name] = o;
    std::map<std::string, Pose> grab_offset;  // object pose in the holding hand's frame
    std::map<std::string, std::pair<long, long>> push;  // object -> [first, last] global frame of sliding
    std::map<std::string, Vec3> push_velocity;
    std::map<std::string, PropagationState> attached;

    // Grabs whose release would fall outside the player's recording are
    // released on its last frame; grabs that cannot last a frame are dropped.
    std::vector<ScriptedGrab> grabs;
    for (ScriptedGrab g : script.grabs) {
        const long end = last_frame - players.at(g.player).offset;
        const long gf = local_frame(g.grab);
        const long rf = std::min(local_frame(g.release), end);
        if (gf < 0 || rf <= gf) continue;
        g.release = static_cast<double>(rf) / rate;
        grabs.push_back(g);
    }

    RecordingWriter writer(dir, info);
    auto emit = [&](const std::vector<Emitted>& records) {
        for (const Emitted& e : records) writer.write(e.entity, e.content);
    };

    for (long f = 0; f <= last_frame; ++f) {
        // Tracked poses for this frame.
        for (auto& [p, pl] : players) {
            const long l = f - pl.offset;
            if (l < 0) continue;
            const double t = static_cast<double>(l) / rate;
            for (EntityKind k : kTracked) {
                if (script.constant_velocity) {
                    const MotionModel m = entity_model(script.motion, k);
                    pl.pose[k] = {m.base_position + *script.constant_velocity * t, euler_to_quat(m.base_orientation)};
                } else {
                    pl.pose[k] = pl.motion.at(k).at(t);
                }
            }
        }

        // Object kinematics: held objects follow their hand, pushed ones slide.
        for (auto& [name, o] : objects) {
            const auto pit = push.find(name);
            if (pit != push.end() && f >= pit->second.first && f <= pit->second.second) {
                o.pose.translation = o.pose.translation + push_velocity[name] * (1.0 / rate);
            }
        }
        for (auto& [p, pl] : players) {
            for (EntityKind k : {EntityKind::LeftHand, EntityKind::RightHand}) {
                const auto& held = pl.state[k].held;
                if (held && f - pl.offset >= 0) objects[*held].pose = pl.pose[k].compose(grab_offset[*held]);
            }
        }

        // Interaction recorders.
        for (auto& [p, pl] : players) {
            const long l = f - pl.offset;
            if (l < 0) continue;
            const double t = static_cast<double>(l) / rate;
            for (EntityKind k : kTracked) {
                EntityFrame frame{t, pl.pose[k], std::nullopt, false, {}};
                for (const ScriptedGrab& g : grabs) {
                    if (g.player != p || g.hand != k) continue;
                    if (local_frame(g.release) == l) frame.end_interaction = true;
                    if (local_frame(g.grab) == l) frame.begin_interaction = g.object;
                }
                for (const ScriptedEvent& e : script.events) {
                    if (e.player == p && e.entity == k && local_frame(e.time) == l) {
                        frame.events.push_back({t, e.event, e.payload, "", 0});
                    }
                }
                const InteractionResult r = interaction_step(pl.state[k], frame);
                emit(r.records);
                if (r.detach) attached.erase(*r.detach);
                if (r.attach) {
                    SceneObject& o = objects.at(*r.attach);
                    grab_offset[o.name] = pl.pose[k].inverse().compose(o.pose);
                    attached[o.name] = PropagationState{p, o.name, o.tool, true, o.pose};
                }
            }
        }

        // Propagation recorders.
        std::vector<PropagationState> joining;
        for (auto it = attached.begin(); it != attached.end();) {
            PropagationState& st = it->second;
            const Player& owner = players.at(st.player_id);
            const long l = f - owner.offset;
            ObjectFrame frame{static_cast<double>(l) / rate, objects.at(st.object).pose, {}};
            for (const ScriptedTouch& tch : script.touches) {
                if (tch.player == st.player_id && tch.tool == st.object && local_frame(tch.time) == l) {
                    frame.touched.push_back(tch.object);
                }
            }
            const PropagateResult r = propagate_step(st, frame);
            emit(r.records);
            for (const std::string& name : r.attach) {
                if (attached.count(name) || !objects.count(name)) continue;
                const SceneObject& o = objects.at(name);
                joining.push_back({st.player_id, name, o.tool, false, o.pose});
                for (const ScriptedTouch& tch : script.touches) {
                    if (tch.tool == st.object && tch.object == name && local_frame(tch.time) == l) {
                        push[name] = {f + 1, f + std::max(1L, std::lround(tch.push_duration * rate))};
                        push_velocity[name] = tch.push_velocity;
                    }
                }
            }
            it = r.detach ? attached.erase(it) : std::next(it);
        }
        for (const PropagationState& st : joining) attached[st.object] = st;
    }
    writer.close();
}

}  // namespace gam::rec
