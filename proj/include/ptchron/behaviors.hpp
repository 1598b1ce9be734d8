#pragma once

#include "ptchron/analysis.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ptchron {

enum class BehaviorKind {
    Duplication,
    ExteriorPaste,
    Commenting,
    DeletingComment,
    CommentingOut,
    Uncommenting,
    Moving,
    Renaming,
};

const char* behavior_name(BehaviorKind k);

struct BehaviorEvent {
    BehaviorKind kind;
    size_t state = 0;
    CharRange span;
    std::string detail;
    std::vector<std::string> heuristic_flags;
};

struct BehaviorConfig {
    size_t paste_min = 2;        // single-char inserts are typing, not pastes
    double starter_overlap = 0.8;  // "significant substring" of starter code
    int rename_gap = 20;
    size_t move_window = 50;
    size_t move_min_len = 10;  // whitespace-normalized code points
};

struct PasteDetection {
    std::vector<BehaviorEvent> events;  // Duplication / ExteriorPaste
    std::vector<size_t> starter_suppressed;  // states of suppressed candidates
};

std::vector<BehaviorEvent> detect_moving(const SessionAnalysis& a, const BehaviorConfig& cfg,
                                         std::vector<size_t>* consumed_inserts = nullptr);

PasteDetection detect_pastes(const SessionAnalysis& a, const BehaviorConfig& cfg,
                             const std::vector<size_t>& moving_consumed = {});

std::vector<BehaviorEvent> detect_comment_ops(const SessionAnalysis& a);

std::vector<BehaviorEvent> detect_renaming(const SessionAnalysis& a,
                                           const BehaviorConfig& cfg);

/// All detectors combined, events sorted by state. Moving consumes its
/// insert halves before paste classification.
std::vector<BehaviorEvent> detect_behaviors(const SessionAnalysis& a,
                                            const BehaviorConfig& cfg,
                                            std::vector<size_t>* starter_suppressed = nullptr);

struct BehaviorSummaryRow {
    BehaviorKind kind;
    size_t short_files_with = 0;
    size_t medium_files_with = 0;
    std::optional<double> short_fraction;
    std::optional<double> medium_fraction;
    std::optional<double> short_median;   // over files with >= 1 occurrence
    std::optional<double> medium_median;
};

struct SessionBehaviorCounts {
    size_t events = 0;  // total edit events in the session
    std::map<BehaviorKind, size_t> counts;
};

std::vector<BehaviorSummaryRow> behavior_summary(
    const std::vector<SessionBehaviorCounts>& sessions, size_t size_split = 3000);

}  // namespace ptchron
