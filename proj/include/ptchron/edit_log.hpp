#pragma once

#include "ptchron/text.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace ptchron {

enum class EditKind { Insert, Delete };

/// One keystroke-level edit: a contiguous insertion or deletion.
struct EditEvent {
    std::string event_id;
    int64_t order = 0;
    std::string subject_id;
    std::string file_id;
    EditKind kind = EditKind::Insert;
    size_t index = 0;  // code-point offset into the previous snapshot
    Text text;         // inserted text, or the text being deleted
    std::string timestamp;  // optional ISO-8601 instant, kept verbatim
};

struct StarterCode {
    Text text;
    bool heuristic = false;  // guessed from an early paste rather than provided
};

/// All edits for one (subject, file), ordered by `order`.
struct Session {
    std::string subject_id;
    std::string file_id;
    std::vector<EditEvent> events;
    std::optional<StarterCode> starter;

    std::string key() const { return subject_id + "/" + file_id; }
};

enum class ReplayErrorKind { OutOfBounds, DeleteMismatch };

struct ReplayError {
    ReplayErrorKind kind;
    size_t event_index;  // index into Session::events
    std::string message;
};

/// Snapshot sequence: snapshots[t] is the code after events[t].
struct Replay {
    std::vector<Text> snapshots;
    std::optional<ReplayError> error;  // set if replay stopped early

    bool ok() const { return !error.has_value(); }
};

/// Applies one edit to a snapshot, returning the successor. The input is
/// left untouched. Returns nullopt (with `err` filled) on a bounds or
/// delete-text mismatch.
std::optional<Text> apply_edit(const Text& snapshot, const EditEvent& event,
                               std::string* err = nullptr);

Replay replay_session(const Session& session);

struct RowIssue {
    size_t line = 0;        // 1-based line in the source CSV
    std::string reason;     // machine-readable, e.g. "missing-column"
    std::string detail;
};

struct IngestResult {
    std::vector<Session> sessions;
    std::vector<RowIssue> issues;           // malformed rows, skipped
    std::vector<std::string> fatal_errors;  // per-session ordering problems
};

/// Reads a ProgSnap2-subset CSV. One Session per (SubjectID, CodeStateSection),
/// events sorted by Order. Duplicate Order values within a file are rejected.
IngestResult ingest_log(std::istream& in);

struct ExcludedSession {
    std::string subject_id;
    std::string file_id;
    std::string reason;  // "too-few-events", "low-tree-coverage", "corrupt-log"
    std::string detail;
};

/// Event-count filtering phase. Boundary is inclusive: exactly min_events is kept.
void filter_by_event_count(std::vector<Session>& sessions, size_t min_events,
                           std::vector<ExcludedSession>& excluded);

/// Attaches provided starter code, or guesses it from the first paste-sized
/// insert among the first few events (flagged heuristic).
void attach_starter(Session& session, const std::optional<Text>& provided,
                    size_t paste_min = 2);

}  // namespace ptchron
