#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gam/motion.hpp"
#include "gam/recorder.hpp"

namespace gam::rec {

struct SceneObject {
    std::string name;
    bool tool = false;
    Pose pose;
};

// All script times are in the acting player's own clock (seconds since they joined).
struct ScriptedGrab {
    int player = 1;
    EntityKind hand = EntityKind::RightHand;
    std::string object;
    double grab = 0.0;
    double release = 0.0;
};

// A held tool touching an object hands propagation to it; the object then
// slides with push_velocity for push_duration seconds and stops.
struct ScriptedTouch {
    int player = 1;
    std::string tool;
    std::string object;
    double time = 0.0;
    double push_duration = 0.2;
    Vec3 push_velocity{0.05, 0.0, 0.0};
};

struct ScriptedEvent {
    int player = 1;
    EntityKind entity = EntityKind::Camera;
    double time = 0.0;
    std::string event;
    std::string payload;
};

struct SessionScript {
    std::uint64_t seed = 1;
    double frame_rate = 90.0;
    double duration = 10.0;  // session length on the owner's clock
    int players = 1;
    std::map<int, double> wait_time;
    MotionModel motion;
    // When set, every tracked entity moves at a constant velocity with a
    // fixed orientation instead of following the synthetic motion model.
    std::optional<Vec3> constant_velocity;
    std::vector<SceneObject> objects;
    std::vector<ScriptedGrab> grabs;
    std::vector<ScriptedTouch> touches;
    std::vector<ScriptedEvent> events;
};

// A drill (tool), a screw it pushes, a panel and one box per extra player,
// with grabs, a tool touch, a button press and scenegraph steps spread over
// the session.
SessionScript default_script(std::uint64_t seed, double duration, int players = 1,
                             const std::map<int, double>& wait_time = {});

// Runs the script frame by frame through interaction_step/propagate_step and
// writes the session to dir.
void record_session(const SessionScript& script, const std::filesystem::path& dir);

}  // namespace gam::rec
