#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "gam/interp.hpp"

namespace gam::rec {

inline constexpr const char* kFormatVersion = "VRRR-1";
inline constexpr const char* kInfoFileName = "RecordingInfo";

enum class EntityKind { Camera, LeftHand, RightHand, Object };

struct TrackedEntity {
    int player_id = 1;
    EntityKind kind = EntityKind::Camera;
    std::string object_name;  // only for Object

    auto operator<=>(const TrackedEntity&) const = default;
};

// "Camera", "Left Hand", "Right Hand" or "Object <name>".
std::string entity_name(const TrackedEntity& e);
std::string player_dir_name(int player_id);  // "Player <id>"
std::filesystem::path transform_path(const TrackedEntity& e);  // relative to the session directory
std::filesystem::path messages_path(const TrackedEntity& e);

struct TransformRecord {
    double time = 0.0;  // seconds since the player's recording started
    Vec3 position;
    EulerAngles rotation;  // degrees
};

inline constexpr const char* kStartInteraction = "START_INTERACTION";
inline constexpr const char* kEndInteraction = "END_INTERACTION";
inline constexpr const char* kPressButton = "PRESS_BUTTON";
inline constexpr const char* kScenegraphTraverse = "SCENEGRAPH_TRAVERSE";

bool is_known_event(const std::string& event);

// payload1: object name (or traversal target); payload2: interaction duration
// for END_INTERACTION, empty otherwise.
struct MessageRecord {
    double time = 0.0;
    std::string event;
    std::string payload1;
    std::string payload2;
    int line = 0;  // 1-based source line when loaded from disk
};

// `t;px;py;pz;rx;ry;rz` and `t;EVENT;payload1;payload2`, 9 significant digits.
std::string format_transform(const TransformRecord& r);
std::string format_message(const MessageRecord& m);
TransformRecord parse_transform(const std::string& line);  // throws std::runtime_error
MessageRecord parse_message(const std::string& line);

TransformRecord to_record(double time, const Pose& pose);
Pose to_pose(const TransformRecord& r);

struct SessionInfo {
    std::string version = kFormatVersion;
    double duration = 0.0;
    double frame_rate = 90.0;
    int players = 0;  // ids run from 1 to players
    std::map<int, double> wait_time;
    std::optional<int> skip_n;
    std::optional<std::string> pipeline;  // set on reconstructed sessions

    double wait_of(int player) const;  // 0 for single-player sessions
};

// Throws std::runtime_error for a bad version, rate, player count, wait time or skip_n.
void validate_info(const SessionInfo& info);
std::string format_info(const SessionInfo& info);
SessionInfo parse_info(const std::string& text);

struct EntityStream {
    TrackedEntity entity;
    std::vector<TransformRecord> transforms;
    std::vector<MessageRecord> messages;
    bool has_transform_file = true;
    bool has_messages_file = true;
};

struct RecordingSession {
    SessionInfo info;
    std::vector<EntityStream> streams;  // sorted by entity

    EntityStream* find(const TrackedEntity& e);
    const EntityStream* find(const TrackedEntity& e) const;
};

RecordingSession load_session(const std::filesystem::path& dir);
void save_session(const RecordingSession& session, const std::filesystem::path& dir);

// Single writer per session. Opening creates the Camera/hand files of every
// player and the info file; object files appear on their first write.
class RecordingWriter {
public:
    using Content = std::variant<TransformRecord, MessageRecord>;

    // Throws std::runtime_error if the directory already holds a session or
    // cannot be written.
    RecordingWriter(const std::filesystem::path& dir, SessionInfo info);
    ~RecordingWriter();
    RecordingWriter(const RecordingWriter&) = delete;
    RecordingWriter& operator=(const RecordingWriter&) = delete;

    // Throws std::logic_error when closed, std::invalid_argument for an unknown player.
    void write(const TrackedEntity& entity, const Content& content);
    void set_duration(double duration) { info_.duration = duration; }
    void close();
    bool is_open() const { return open_; }

private:
    std::ofstream& stream_for(const std::filesystem::path& rel);
    void write_info();

    std::filesystem::path dir_;
    SessionInfo info_;
    std::map<std::filesystem::path, std::ofstream> files_;
    bool open_ = false;
};

// --- live recording -------------------------------------------------------

struct Emitted {
    TrackedEntity entity;
    RecordingWriter::Content content;
};

// Objects are not moving when the per-frame change stays within both limits.
inline constexpr double kMoveThresholdMetres = 1e-5;
inline constexpr double kMoveThresholdDegrees = 0.01;

struct PropagationState {
    int player_id = 1;
    std::string object;
    bool is_tool = false;
    bool held = false;  // attached by a hand grab; only a release detaches it
    Pose last;
};

struct ObjectFrame {
    double time = 0.0;
    Pose pose;
    std::vector<std::string> touched;  // objects a tool touches this frame
};

struct PropagateResult {
    std::vector<Emitted> records;
    bool detach = false;
    std::vector<std::string> attach;  // objects a tool hands propagation to
};

PropagateResult propagate_step(PropagationState& state, const ObjectFrame& frame);

struct InteractionState {
    TrackedEntity entity;
    std::optional<std::string> held;
    double grab_time = 0.0;
};

struct EntityFrame {
    double time = 0.0;
    Pose pose;
    std::optional<std::string> begin_interaction;  // hands only
    bool end_interaction = false;                  // hands only
    std::vector<MessageRecord> events;             // button presses, scenegraph traversal
};

struct InteractionResult {
    std::vector<Emitted> records;
    std::optional<std::string> attach;  // object to start propagating
    std::optional<std::string> detach;  // object to stop propagating
};

// Throws std::logic_error on end-interaction without a held object and on
// interaction input for the camera.
InteractionResult interaction_step(InteractionState& state, const EntityFrame& frame);

// --- replay ---------------------------------------------------------------

class ReplaySink {
public:
    virtual ~ReplaySink() = default;
    virtual void on_transform(long frame, const TrackedEntity& e, const TransformRecord& r);
    // frame_transform is the transform line read on this frame, handed to the
    // event action instead of being applied.
    virtual void on_event(long frame, const TrackedEntity& e, const MessageRecord& m,
                          const std::optional<TransformRecord>& frame_transform);
    virtual void on_skip(long frame, const TrackedEntity& e, const TransformRecord& r);
    virtual void on_warning(const std::string& message);
};

// Steps a global frame clock. Player p starts at frame round(wait_p * rate)
// (wait is ignored for single-player sessions) and its lines are due once
// their frame index llround(time * rate) is reached.
void replay(const RecordingSession& session, ReplaySink& sink);

// Replays into a fresh writer, producing a new session directory.
void rerecord(const RecordingSession& session, const std::filesystem::path& out_dir);

// --- compression and analysis ----------------------------------------------

// Keeps transform lines with index % n == 0, the last line and the ends of
// every contiguous frame run. Messages are untouched. Throws for n < 2.
RecordingSession compress_skip(const RecordingSession& session, int n);
std::vector<bool> kept_mask(const std::vector<TransformRecord>& transforms, double rate, int n);

// Fills gaps of at most skip_n - 1 missing frames. Throws when skip_n is absent.
RecordingSession reconstruct_recording(const RecordingSession& compressed, PipelineKind kind,
                                       MotorBlend blend = MotorBlend::Lerp);

struct FrameError {
    int player_id = 0;
    std::string entity;
    long frame_index = 0;
    double time = 0.0;
    double translation_pct = 0.0;
    double rotation_pct = 0.0;
    bool zero_norm = false;  // an original vector was zero, so the error is absolute
    int gap_position = 0;    // 1-based position inside its gap
};

struct ErrorSummary {
    std::string pipeline;
    std::vector<FrameError> frames;
    double mean_translation_pct = 0.0;
    double mean_rotation_pct = 0.0;
};

// Compares only frames that compression dropped (derived from skip_n in the
// reconstructed session's info). Throws std::invalid_argument on grid mismatch.
ErrorSummary error_analysis(const RecordingSession& original, const RecordingSession& reconstructed);

void write_error_csv(std::ostream& out, const ErrorSummary& s);
void write_means_csv(std::ostream& out, int skip_n, const std::vector<ErrorSummary>& summaries);

// Problems with START/END pairing: END without START, negative or
// inconsistent durations, overlapping grabs on one hand.
std::vector<std::string> check_pairing(const RecordingSession& session);

}  // namespace gam::rec
