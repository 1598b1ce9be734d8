#include "ptchron/edit_log.hpp"

#include "ptchron/csv.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_map>

namespace ptchron {

std::optional<Text> apply_edit(const Text& snapshot, const EditEvent& event, std::string* err)
{
    if (event.kind == EditKind::Insert) {
        if (event.index > snapshot.size()) {
            if (err)
                *err = "insert index " + std::to_string(event.index) + " past end "
                       + std::to_string(snapshot.size());
            return std::nullopt;
        }
        Text out;
        out.reserve(snapshot.size() + event.text.size());
        out.append(snapshot, 0, event.index);
        out.append(event.text);
        out.append(snapshot, event.index, Text::npos);
        return out;
    }
    if (event.index + event.text.size() > snapshot.size()) {
        if (err)
            *err = "delete range past end";
        return std::nullopt;
    }
    if (snapshot.compare(event.index, event.text.size(), event.text) != 0) {
        if (err)
            *err = "deleted text disagrees with snapshot";
        return std::nullopt;
    }
    Text out;
    out.reserve(snapshot.size() - event.text.size());
    out.append(snapshot, 0, event.index);
    out.append(snapshot, event.index + event.text.size(), Text::npos);
    return out;
}

Replay replay_session(const Session& session)
{
    Replay r;
    r.snapshots.reserve(session.events.size());
    Text cur;
    for (size_t i = 0; i < session.events.size(); ++i) {
        const EditEvent& ev = session.events[i];
        std::string msg;
        auto next = apply_edit(cur, ev, &msg);
        if (!next) {
            bool mismatch = msg.find("disagrees") != std::string::npos;
            r.error = ReplayError{
                mismatch ? ReplayErrorKind::DeleteMismatch : ReplayErrorKind::OutOfBounds, i,
                "event " + ev.event_id + " (order " + std::to_string(ev.order) + "): " + msg};
            return r;
        }
        cur = std::move(*next);
        r.snapshots.push_back(cur);
    }
    return r;
}

namespace {

std::optional<int64_t> parse_int(const std::string& s)
{
    int64_t v = 0;
    auto* first = s.data();
    auto* last = s.data() + s.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last)
        return std::nullopt;
    return v;
}

}  // namespace

IngestResult ingest_log(std::istream& in)
{
    IngestResult result;
    CsvReader reader(in);
    size_t line = 0;

    auto header = reader.next(line);
    if (!header) {
        result.fatal_errors.push_back("empty input: no header row");
        return result;
    }
    std::unordered_map<std::string, size_t> col;
    for (size_t i = 0; i < header->size(); ++i)
        col[(*header)[i]] = i;

    const char* required[] = {"EventID",        "Order",      "SubjectID",
                              "CodeStateSection", "EventType", "SourceLocation",
                              "EditType",       "InsertText", "DeleteText"};
    for (const char* name : required) {
        if (!col.count(name)) {
            result.fatal_errors.push_back(std::string("missing required column: ") + name);
            return result;
        }
    }
    bool has_ts = col.count("ClientTimestamp") > 0;

    // std::map keeps session order deterministic regardless of row order
    std::map<std::pair<std::string, std::string>, Session> sessions;

    while (auto row = reader.next(line)) {
        auto field = [&](const char* name) -> const std::string& {
            return (*row)[col.at(name)];
        };
        if (row->size() < header->size()) {
            result.issues.push_back({line, "missing-column",
                                     "row has " + std::to_string(row->size()) + " fields"});
            continue;
        }
        if (field("EventType") != "File.Edit") {
            result.issues.push_back({line, "unsupported-event-type", field("EventType")});
            continue;
        }
        EditEvent ev;
        ev.event_id = field("EventID");
        ev.subject_id = field("SubjectID");
        ev.file_id = field("CodeStateSection");
        auto order = parse_int(field("Order"));
        if (!order) {
            result.issues.push_back({line, "bad-order", field("Order")});
            continue;
        }
        ev.order = *order;
        auto idx = parse_int(field("SourceLocation"));
        if (!idx || *idx < 0) {
            result.issues.push_back({line, "bad-index", field("SourceLocation")});
            continue;
        }
        ev.index = static_cast<size_t>(*idx);
        const std::string& et = field("EditType");
        const std::string& ins = field("InsertText");
        const std::string& del = field("DeleteText");
        if (et == "Insert") {
            ev.kind = EditKind::Insert;
            if (ins.empty() || !del.empty()) {
                result.issues.push_back({line, "bad-edit-text", "Insert row must set InsertText only"});
                continue;
            }
            ev.text = from_utf8(ins);
        } else if (et == "Delete") {
            ev.kind = EditKind::Delete;
            if (del.empty() || !ins.empty()) {
                result.issues.push_back({line, "bad-edit-text", "Delete row must set DeleteText only"});
                continue;
            }
            ev.text = from_utf8(del);
        } else {
            result.issues.push_back({line, "bad-edit-type", et});
            continue;
        }
        if (has_ts)
            ev.timestamp = field("ClientTimestamp");

        auto key = std::make_pair(ev.subject_id, ev.file_id);
        auto& s = sessions[key];
        s.subject_id = ev.subject_id;
        s.file_id = ev.file_id;
        s.events.push_back(std::move(ev));
    }

    for (auto& [key, s] : sessions) {
        std::stable_sort(s.events.begin(), s.events.end(),
                         [](const EditEvent& a, const EditEvent& b) { return a.order < b.order; });
        bool dup = false;
        for (size_t i = 1; i < s.events.size(); ++i) {
            if (s.events[i].order == s.events[i - 1].order) {
                dup = true;
                break;
            }
        }
        if (dup) {
            // silent tie-breaking would corrupt correspondence arrays downstream
            result.fatal_errors.push_back("non-monotonic order in session " + s.key());
            continue;
        }
        result.sessions.push_back(std::move(s));
    }
    return result;
}

void filter_by_event_count(std::vector<Session>& sessions, size_t min_events,
                           std::vector<ExcludedSession>& excluded)
{
    std::vector<Session> kept;
    kept.reserve(sessions.size());
    for (auto& s : sessions) {
        if (s.events.size() >= min_events) {
            kept.push_back(std::move(s));
        } else {
            excluded.push_back({s.subject_id, s.file_id, "too-few-events",
                                std::to_string(s.events.size()) + " < "
                                    + std::to_string(min_events)});
        }
    }
    sessions = std::move(kept);
}

void attach_starter(Session& session, const std::optional<Text>& provided, size_t paste_min)
{
    if (provided) {
        session.starter = StarterCode{*provided, false};
        return;
    }
    size_t scan = std::min<size_t>(session.events.size(), 5);
    for (size_t i = 0; i < scan; ++i) {
        const EditEvent& ev = session.events[i];
        if (ev.kind == EditKind::Insert && ev.text.size() >= paste_min) {
            session.starter = StarterCode{ev.text, true};
            return;
        }
    }
}

}  // namespace ptchron
