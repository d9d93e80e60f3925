#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "gam/format.hpp"
#include "gam/recorder.hpp"

namespace gam::rec {

namespace fs = std::filesystem;

std::string entity_name(const TrackedEntity& e) {
    switch (e.kind) {
        case EntityKind::Camera: return "Camera";
        case EntityKind::LeftHand: return "Left Hand";
        case EntityKind::RightHand: return "Right Hand";
        case EntityKind::Object: return "Object " + e.object_name;
    }
    return "?";
}

std::string player_dir_name(int player_id) { return "Player " + std::to_string(player_id); }

fs::path transform_path(const TrackedEntity& e) { return fs::path(player_dir_name(e.player_id)) / ("Transform " + entity_name(e)); }
fs::path messages_path(const TrackedEntity& e) { return fs::path(player_dir_name(e.player_id)) / ("Messages " + entity_name(e)); }

bool is_known_event(const std::string& event) {
    return event == kStartInteraction || event == kEndInteraction || event == kPressButton ||
           event == kScenegraphTraverse;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error("not a number: '" + s + "'");
    }
    return v;
}

int parse_int(const std::string& s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::runtime_error("not an integer: '" + s + "'");
    }
    return v;
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::optional<TrackedEntity> entity_from_name(int player, const std::string& name) {
    if (name == "Camera") return TrackedEntity{player, EntityKind::Camera, {}};
    if (name == "Left Hand") return TrackedEntity{player, EntityKind::LeftHand, {}};
    if (name == "Right Hand") return TrackedEntity{player, EntityKind::RightHand, {}};
    if (name.rfind("Object ", 0) == 0 && name.size() > 7) return TrackedEntity{player, EntityKind::Object, name.substr(7)};
    return std::nullopt;
}

}  // namespace

std::string format_transform(const TransformRecord& r) {
    return format_number(r.time) + ';' + format_number(r.position.x) + ';' + format_number(r.position.y) + ';' +
           format_number(r.position.z) + ';' + format_number(r.rotation.theta_x) + ';' +
           format_number(r.rotation.theta_y) + ';' + format_number(r.rotation.theta_z);
}

std::string format_message(const MessageRecord& m) {
    for (const std::string* field : {&m.event, &m.payload1, &m.payload2}) {
        if (field->find_first_of(";\n") != std::string::npos) {
            throw std::invalid_argument("message fields may not contain ';' or newlines");
        }
    }
    return format_number(m.time) + ';' + m.event + ';' + m.payload1 + ';' + m.payload2;
}

TransformRecord parse_transform(const std::string& line) {
    const auto f = split(line, ';');
    if (f.size() != 7) throw std::runtime_error("transform line needs 7 fields");
    return {parse_double(f[0]),
            {parse_double(f[1]), parse_double(f[2]), parse_double(f[3])},
            {parse_double(f[4]), parse_double(f[5]), parse_double(f[6])}};
}

MessageRecord parse_message(const std::string& line) {
    const auto f = split(line, ';');
    if (f.size() != 4) throw std::runtime_error("message line needs 4 fields");
    if (f[1].empty()) throw std::runtime_error("message line has an empty event type");
    return {parse_double(f[0]), f[1], f[2], f[3], 0};
}

TransformRecord to_record(double time, const Pose& pose) {
    return {time, pose.translation, quat_to_euler(pose.rotation)};
}

Pose to_pose(const TransformRecord& r) { return {r.position, euler_to_quat(r.rotation)}; }

double SessionInfo::wait_of(int player) const {
    if (players <= 1) return 0.0;
    const auto it = wait_time.find(player);
    return it == wait_time.end() ? 0.0 : it->second;
}

void validate_info(const SessionInfo& info) {
    if (info.version != kFormatVersion) throw std::runtime_error("unsupported recording version '" + info.version + "'");
    if (info.players < 0 || !(info.frame_rate > 0.0)) throw std::runtime_error("invalid players or frame rate");
    for (const auto& [id, w] : info.wait_time) {
        if (id < 1 || id > info.players || !(w >= 0.0)) throw std::runtime_error("invalid wait time entry");
    }
    if (info.skip_n && *info.skip_n < 2) throw std::runtime_error("skip_n must be at least 2");
}

std::string format_info(const SessionInfo& info) {
    std::ostringstream out;
    out << "version=" << info.version << '\n'
        << "duration=" << format_number(info.duration) << '\n'
        << "frame_rate=" << format_number(info.frame_rate) << '\n'
        << "players=" << info.players << '\n';
    for (const auto& [id, w] : info.wait_time) out << "wait_time." << id << '=' << format_number(w) << '\n';
    if (info.skip_n) out << "skip_n=" << *info.skip_n << '\n';
    if (info.pipeline) out << "pipeline=" << *info.pipeline << '\n';
    return out.str();
}

SessionInfo parse_info(const std::string& text) {
    SessionInfo info;
    info.version.clear();
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("info line " + std::to_string(n) + ": missing '='");
        const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        try {
            if (key == "version") info.version = value;
            else if (key == "duration") info.duration = parse_double(value);
            else if (key == "frame_rate") info.frame_rate = parse_double(value);
            else if (key == "players") info.players = parse_int(value);
            else if (key.rfind("wait_time.", 0) == 0) info.wait_time[parse_int(key.substr(10))] = parse_double(value);
            else if (key == "skip_n") info.skip_n = parse_int(value);
            else if (key == "pipeline") info.pipeline = value;
            else throw std::runtime_error("unknown key '" + key + "'");
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("info line " + std::to_string(n) + ": " + e.what());
        }
    }
    validate_info(info);
    return info;
}

EntityStream* RecordingSession::find(const TrackedEntity& e) {
    for (EntityStream& s : streams)
        if (s.entity == e) return &s;
    return nullptr;
}

const EntityStream* RecordingSession::find(const TrackedEntity& e) const {
    for (const EntityStream& s : streams)
        if (s.entity == e) return &s;
    return nullptr;
}

RecordingSession load_session(const fs::path& dir) {
    std::ifstream info_in(dir / kInfoFileName);
    if (!info_in) throw std::runtime_error("no " + std::string(kInfoFileName) + " in " + dir.string());
    std::stringstream buf;
    buf << info_in.rdbuf();

    RecordingSession session;
    session.info = parse_info(buf.str());
    std::map<TrackedEntity, EntityStream> streams;
    for (int p = 1; p <= session.info.players; ++p) {
        const fs::path pdir = dir / player_dir_name(p);
        for (EntityKind k : {EntityKind::Camera, EntityKind::LeftHand, EntityKind::RightHand}) {
            const TrackedEntity e{p, k, {}};
            if (!fs::exists(dir / transform_path(e)) || !fs::exists(dir / messages_path(e))) {
                throw std::runtime_error("missing data files for " + player_dir_name(p) + " " + entity_name(e));
            }
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(pdir)) files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const fs::path& path : files) {
            const std::string name = path.filename().string();
            const bool is_transform = name.rfind("Transform ", 0) == 0;
            const bool is_messages = name.rfind("Messages ", 0) == 0;
            const auto entity = entity_from_name(p, name.substr(is_transform ? 10 : 9));
            if ((!is_transform && !is_messages) || !entity) {
                throw std::runtime_error("unexpected file " + path.string());
            }
            EntityStream& s = streams[*entity];
            s.entity = *entity;
            const auto lines = read_lines(path);
            for (std::size_t i = 0; i < lines.size(); ++i) {
                try {
                    if (is_transform) {
                        s.transforms.push_back(parse_transform(lines[i]));
                    } else {
                        MessageRecord m = parse_message(lines[i]);
                        m.line = static_cast<int>(i + 1);
                        s.messages.push_back(m);
                    }
                } catch (const std::runtime_error& e) {
                    throw std::runtime_error(path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
                }
            }
        }
        for (auto& [e, s] : streams) {
            if (e.player_id != p) continue;
            s.has_transform_file = fs::exists(dir / transform_path(e));
            s.has_messages_file = fs::exists(dir / messages_path(e));
        }
    }
    for (auto& [e, s] : streams) session.streams.push_back(std::move(s));
    return session;
}

void save_session(const RecordingSession& session, const fs::path& dir) {
    RecordingWriter writer(dir, session.info);
    for (const EntityStream& s : session.streams) {
        if (s.has_transform_file)
            for (const TransformRecord& r : s.transforms) writer.write(s.entity, r);
        if (s.has_messages_file)
            for (const MessageRecord& m : s.messages) writer.write(s.entity, m);
    }
    writer.close();
    // Streams whose files exist but stay empty (objects never written) are created here.
    for (const EntityStream& s : session.streams) {
        if (s.has_transform_file) std::ofstream(dir / transform_path(s.entity), std::ios::app);
        if (s.has_messages_file) std::ofstream(dir / messages_path(s.entity), std::ios::app);
    }
}

RecordingWriter::RecordingWriter(const fs::path& dir, SessionInfo info) : dir_(dir), info_(std::move(info)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create " + dir_.string() + ": " + ec.message());
    validate_info(info_);
    if (fs::exists(dir_ / kInfoFileName)) throw std::runtime_error("a session already exists in " + dir_.string());
    open_ = true;
    for (int p = 1; p <= info_.players; ++p) {
        fs::create_directories(dir_ / player_dir_name(p));
        for (EntityKind k : {EntityKind::Camera, EntityKind::LeftHand, EntityKind::RightHand}) {
            stream_for(transform_path({p, k, {}}));
            stream_for(messages_path({p, k, {}}));
        }
    }
    write_info();
}

RecordingWriter::~RecordingWriter() {
    if (open_) {
        try {
            close();
        } catch (...) {
        }
    }
}

std::ofstream& RecordingWriter::stream_for(const fs::path& rel) {
    auto it = files_.find(rel);
    if (it == files_.end()) {
        std::ofstream out(dir_ / rel, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot create " + (dir_ / rel).string());
        it = files_.emplace(rel, std::move(out)).first;
    }
    return it->second;
}

void RecordingWriter::write_info() {
    std::ofstream out(dir_ / kInfoFileName, std::ios::binary | std::ios::trunc);
    out << format_info(info_);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / kInfoFileName).string());
}

void RecordingWriter::write(const TrackedEntity& entity, const Content& content) {
    if (!open_) throw std::logic_error("recording writer is closed");
    if (entity.player_id < 1 || entity.player_id > info_.players) {
        throw std::invalid_argument("unknown player " + std::to_string(entity.player_id));
    }
    if (const auto* t = std::get_if<TransformRecord>(&content)) {
        stream_for(transform_path(entity)) << format_transform(*t) << '\n';
    } else {
        stream_for(messages_path(entity)) << format_message(std::get<MessageRecord>(content)) << '\n';
    }
}

void RecordingWriter::close() {
    if (!open_) return;
    open_ = false;
    for (auto& [path, out] : files_) {
        out.close();
        if (!out) throw std::runtime_error("failed writing " + (dir_ / path).string());
    }
    files_.clear();
    write_info();
}

}  // namespace gam::rec
