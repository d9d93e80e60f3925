#include "gam/recorder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gam/format.hpp"

namespace gam::rec {

PropagateResult propagate_step(PropagationState& state, const ObjectFrame& frame) {
    PropagateResult out;
    const double moved = distance(frame.pose.translation, state.last.translation);
    const double turned = rad2deg(rotation_angle_between(frame.pose.rotation, state.last.rotation));
    const bool moving = moved > kMoveThresholdMetres || turned > kMoveThresholdDegrees;
    state.last = frame.pose;
    if (!moving && !state.held) {
        out.detach = true;
        return out;
    }
    out.records.push_back({{state.player_id, EntityKind::Object, state.object}, to_record(frame.time, frame.pose)});
    if (state.is_tool) out.attach = frame.touched;
    return out;
}

InteractionResult interaction_step(InteractionState& state, const EntityFrame& frame) {
    const bool hand = state.entity.kind == EntityKind::LeftHand || state.entity.kind == EntityKind::RightHand;
    if (!hand && state.entity.kind != EntityKind::Camera) {
        throw std::logic_error("interaction recording is for the camera and hands");
    }
    if (!hand && (frame.begin_interaction || frame.end_interaction)) {
        throw std::logic_error("the camera cannot interact with objects");
    }

    InteractionResult out;
    out.records.push_back({state.entity, to_record(frame.time, frame.pose)});
    for (const MessageRecord& m : frame.events) out.records.push_back({state.entity, m});

    if (frame.end_interaction) {
        if (!state.held) throw std::logic_error("end of interaction without a matching start");
        out.records.push_back({state.entity, MessageRecord{frame.time, kEndInteraction, *state.held,
                                                           format_number(frame.time - state.grab_time), 0}});
        out.detach = state.held;
        state.held.reset();
    }
    if (frame.begin_interaction) {
        if (state.held) throw std::logic_error("hand is already interacting with " + *state.held);
        out.records.push_back({state.entity, MessageRecord{frame.time, kStartInteraction, *frame.begin_interaction, "", 0}});
        out.attach = frame.begin_interaction;
        state.held = frame.begin_interaction;
        state.grab_time = frame.time;
    }
    return out;
}

// --- replay -----------------------------------------------------------------

void ReplaySink::on_transform(long, const TrackedEntity&, const TransformRecord&) {}
void ReplaySink::on_event(long, const TrackedEntity&, const MessageRecord&, const std::optional<TransformRecord>&) {}
void ReplaySink::on_skip(long, const TrackedEntity&, const TransformRecord&) {}
void ReplaySink::on_warning(const std::string&) {}

namespace {

long frame_of(double time, double rate) { return std::lround(time * rate); }

}  // namespace

void replay(const RecordingSession& session, ReplaySink& sink) {
    const double rate = session.info.frame_rate;
    struct Cursor {
        const EntityStream* stream;
        long offset;
        std::size_t transform = 0;
        std::size_t message = 0;
    };
    std::vector<Cursor> cursors;
    long last_frame = -1;
    for (const EntityStream& s : session.streams) {
        const long offset = std::lround(session.info.wait_of(s.entity.player_id) * rate);
        cursors.push_back({&s, offset});
        if (!s.transforms.empty()) last_frame = std::max(last_frame, offset + frame_of(s.transforms.back().time, rate));
        if (!s.messages.empty()) last_frame = std::max(last_frame, offset + frame_of(s.messages.back().time, rate));
    }

    for (long f = 0; f <= last_frame; ++f) {
        for (Cursor& c : cursors) {
            const long local = f - c.offset;
            if (local < 0) continue;  // player has not joined yet: graphics wait
            const EntityStream& s = *c.stream;

            // Lines already due are read; all but the newest are skipped.
            std::optional<TransformRecord> current;
            while (c.transform < s.transforms.size() && frame_of(s.transforms[c.transform].time, rate) <= local) {
                if (current) sink.on_skip(f, s.entity, *current);
                current = s.transforms[c.transform++];
            }

            bool executed = false;
            while (c.message < s.messages.size() && frame_of(s.messages[c.message].time, rate) <= local) {
                const MessageRecord& m = s.messages[c.message++];
                if (!is_known_event(m.event)) {
                    std::ostringstream w;
                    w << messages_path(s.entity).string() << ':' << m.line << ": unknown event '" << m.event
                      << "' skipped";
                    sink.on_warning(w.str());
                    continue;
                }
                sink.on_event(f, s.entity, m, current);
                executed = true;
            }
            if (!executed && current) sink.on_transform(f, s.entity, *current);
        }
    }
}

namespace {

class RerecordSink : public ReplaySink {
public:
    RerecordSink(RecordingWriter& writer, const SessionInfo& info) : writer_(writer), info_(info) {}

    void on_transform(long frame, const TrackedEntity& e, const TransformRecord& r) override {
        TransformRecord out = r;
        out.time = clock(frame, e);
        writer_.write(e, out);
    }
    void on_event(long frame, const TrackedEntity& e, const MessageRecord& m,
                  const std::optional<TransformRecord>& t) override {
        // The event action drives the avatar exactly as in play mode, so the
        // re-recording sees the pose of this frame once, then the message.
        if (t) {
            const auto it = last_written_.find(e);
            if (it == last_written_.end() || it->second != frame) on_transform(frame, e, *t);
            last_written_[e] = frame;
        }
        MessageRecord out = m;
        out.time = clock(frame, e);
        writer_.write(e, out);
    }

private:
    double clock(long frame, const TrackedEntity& e) const {
        const long offset = std::lround(info_.wait_of(e.player_id) * info_.frame_rate);
        return static_cast<double>(frame - offset) / info_.frame_rate;
    }

    RecordingWriter& writer_;
    const SessionInfo& info_;
    std::map<TrackedEntity, long> last_written_;
};

}  // namespace

void rerecord(const RecordingSession& session, const std::filesystem::path& out_dir) {
    RecordingWriter writer(out_dir, session.info);
    RerecordSink sink(writer, session.info);
    replay(session, sink);
    writer.close();
    for (const EntityStream& s : session.streams) {
        if (s.has_transform_file) std::ofstream(out_dir / transform_path(s.entity), std::ios::app);
        if (s.has_messages_file) std::ofstream(out_dir / messages_path(s.entity), std::ios::app);
    }
}

// --- compression ---------------------------------------------------------------

std::vector<bool> kept_mask(const std::vector<TransformRecord>& transforms, double rate, int n) {
    std::vector<bool> keep(transforms.size(), false);
    for (std::size_t i = 0; i < transforms.size(); ++i) {
        const bool run_start = i == 0 || frame_of(transforms[i].time, rate) - frame_of(transforms[i - 1].time, rate) != 1;
        const bool run_end = i + 1 == transforms.size() ||
                             frame_of(transforms[i + 1].time, rate) - frame_of(transforms[i].time, rate) != 1;
        keep[i] = i % static_cast<std::size_t>(n) == 0 || run_start || run_end;
    }
    return keep;
}

RecordingSession compress_skip(const RecordingSession& session, int n) {
    if (n < 2) throw std::invalid_argument("skip factor must be at least 2");
    RecordingSession out = session;
    out.info.skip_n = n;
    for (EntityStream& s : out.streams) {
        const auto keep = kept_mask(s.transforms, session.info.frame_rate, n);
        std::vector<TransformRecord> kept;
        for (std::size_t i = 0; i < s.transforms.size(); ++i)
            if (keep[i]) kept.push_back(s.transforms[i]);
        s.transforms = std::move(kept);
    }
    return out;
}

RecordingSession reconstruct_recording(const RecordingSession& compressed, PipelineKind kind, MotorBlend blend) {
    if (!compressed.info.skip_n) throw std::invalid_argument("session carries no skip_n; was it compressed?");
    const int n = *compressed.info.skip_n;
    const double rate = compressed.info.frame_rate;

    RecordingSession out = compressed;
    out.info.pipeline = std::string(pipeline_name(kind));
    for (EntityStream& s : out.streams) {
        std::vector<TransformRecord> filled;
        for (std::size_t i = 0; i < s.transforms.size(); ++i) {
            filled.push_back(s.transforms[i]);
            if (i + 1 == s.transforms.size()) break;
            const TransformRecord& r1 = s.transforms[i];
            const TransformRecord& r2 = s.transforms[i + 1];
            const long f1 = frame_of(r1.time, rate), f2 = frame_of(r2.time, rate);
            const long missing = f2 - f1 - 1;
            if (missing <= 0 || missing > n - 1) continue;  // adjacent, or a break between runs
            const Keyframe k1{r1.time, entity_name(s.entity), to_pose(r1)};
            const Keyframe k2{r2.time, entity_name(s.entity), to_pose(r2)};
            for (long j = 1; j <= missing; ++j) {
                const double a = static_cast<double>(j) / static_cast<double>(missing + 1);
                filled.push_back(to_record(static_cast<double>(f1 + j) / rate, interpolate_pair(k1, k2, a, kind, blend)));
            }
        }
        s.transforms = std::move(filled);
    }
    return out;
}

// --- analysis ---------------------------------------------------------------------

ErrorSummary error_analysis(const RecordingSession& original, const RecordingSession& reconstructed) {
    const double rate = original.info.frame_rate;
    const int n = reconstructed.info.skip_n.value_or(1);
    ErrorSummary out;
    out.pipeline = reconstructed.info.pipeline.value_or("none");

    if (original.streams.size() != reconstructed.streams.size()) throw std::invalid_argument("stream sets differ");
    double sum_t = 0.0, sum_r = 0.0;
    for (std::size_t k = 0; k < original.streams.size(); ++k) {
        const EntityStream& o = original.streams[k];
        const EntityStream& r = reconstructed.streams[k];
        if (!(o.entity == r.entity) || o.transforms.size() != r.transforms.size()) {
            throw std::invalid_argument("frame grids differ for " + entity_name(o.entity));
        }
        const auto keep = n >= 2 ? kept_mask(o.transforms, rate, n) : std::vector<bool>(o.transforms.size(), true);
        int gap_position = 0;
        for (std::size_t i = 0; i < o.transforms.size(); ++i) {
            const TransformRecord& a = o.transforms[i];
            const TransformRecord& b = r.transforms[i];
            if (frame_of(a.time, rate) != frame_of(b.time, rate)) {
                throw std::invalid_argument("frame grids differ for " + entity_name(o.entity));
            }
            if (keep[i]) {
                gap_position = 0;
                continue;
            }
            ++gap_position;
            FrameError e{o.entity.player_id, entity_name(o.entity), frame_of(a.time, rate), a.time, 0, 0, false, gap_position};
            const double pn = a.position.norm();
            const double pd = distance(a.position, b.position);
            const Vec3 ea = a.rotation.as_vec(), eb = b.rotation.as_vec();
            const double rn = ea.norm();
            const double rd = distance(ea, eb);
            e.zero_norm = pn < 1e-12 || rn < 1e-12;
            e.translation_pct = 100.0 * (pn < 1e-12 ? pd : pd / pn);
            e.rotation_pct = 100.0 * (rn < 1e-12 ? rd : rd / rn);
            sum_t += e.translation_pct;
            sum_r += e.rotation_pct;
            out.frames.push_back(e);
        }
    }
    if (!out.frames.empty()) {
        out.mean_translation_pct = sum_t / static_cast<double>(out.frames.size());
        out.mean_rotation_pct = sum_r / static_cast<double>(out.frames.size());
    }
    return out;
}

void write_error_csv(std::ostream& out, const ErrorSummary& s) {
    out << "frame_index,t,rel_err_translation_pct,rel_err_rotation_pct,pipeline,player,entity,gap_position,zero_norm\n";
    for (const FrameError& e : s.frames) {
        out << e.frame_index << ',' << format_number(e.time) << ',' << format_number(e.translation_pct) << ','
            << format_number(e.rotation_pct) << ',' << s.pipeline << ',' << e.player_id << ',' << e.entity << ','
            << e.gap_position << ',' << (e.zero_norm ? 1 : 0) << '\n';
    }
}

void write_means_csv(std::ostream& out, int skip_n, const std::vector<ErrorSummary>& summaries) {
    out << "pipeline,label,skip_n,frames,mean_rel_err_translation_pct,mean_rel_err_rotation_pct\n";
    for (const ErrorSummary& s : summaries) {
        const auto kind = parse_pipeline(s.pipeline);
        out << s.pipeline << ',' << (kind ? pipeline_label(*kind) : std::string_view("none")) << ',' << skip_n << ','
            << s.frames.size() << ',' << format_number(s.mean_translation_pct) << ','
            << format_number(s.mean_rotation_pct) << '\n';
    }
}

std::vector<std::string> check_pairing(const RecordingSession& session) {
    std::vector<std::string> problems;
    for (const EntityStream& s : session.streams) {
        std::optional<MessageRecord> open;
        const std::string where = messages_path(s.entity).string();
        for (const MessageRecord& m : s.messages) {
            const std::string at = where + ":" + std::to_string(m.line) + ": ";
            if (m.event == kStartInteraction) {
                if (open) problems.push_back(at + "START while '" + open->payload1 + "' is still held");
                open = m;
            } else if (m.event == kEndInteraction) {
                if (!open || open->payload1 != m.payload1) {
                    problems.push_back(at + "END for '" + m.payload1 + "' without a matching START");
                } else {
                    double duration = -1.0;
                    try {
                        duration = std::stod(m.payload2);
                    } catch (...) {
                    }
                    if (duration < 0.0) problems.push_back(at + "missing or negative duration");
                    else if (std::abs(duration - (m.time - open->time)) > 1e-6)
                        problems.push_back(at + "duration does not match START/END times");
                }
                open.reset();
            }
        }
        if (open) problems.push_back(where + ": START for '" + open->payload1 + "' never ends");
    }
    return problems;
}

}  // namespace gam::rec
