#include "ptchron/behaviors.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace ptchron {

const char* behavior_name(BehaviorKind k)
{
    switch (k) {
    case BehaviorKind::Duplication: return "duplication";
    case BehaviorKind::ExteriorPaste: return "exterior_paste";
    case BehaviorKind::Commenting: return "commenting";
    case BehaviorKind::DeletingComment: return "deleting_comment";
    case BehaviorKind::CommentingOut: return "commenting_out";
    case BehaviorKind::Uncommenting: return "uncommenting";
    case BehaviorKind::Moving: return "moving";
    case BehaviorKind::Renaming: return "renaming";
    }
    return "?";
}

std::vector<BehaviorEvent> detect_moving(const SessionAnalysis& a, const BehaviorConfig& cfg,
                                         std::vector<size_t>* consumed_inserts)
{
    std::vector<BehaviorEvent> out;
    struct PendingCut {
        size_t state;
        size_t index;
        Text norm;
        bool consumed = false;
    };
    std::vector<PendingCut> cuts;
    for (size_t t = 0; t < a.states(); ++t) {
        const EditEvent& ev = a.session.events[t];
        if (ev.kind == EditKind::Delete) {
            Text norm = normalize_ws(ev.text);
            if (norm.size() >= cfg.move_min_len)
                cuts.push_back({t, ev.index, std::move(norm), false});
            continue;
        }
        Text norm = normalize_ws(ev.text);
        if (norm.size() < cfg.move_min_len)
            continue;
        for (auto& cut : cuts) {
            if (cut.consumed || t - cut.state > cfg.move_window)
                continue;
            if (cut.norm != norm)
                continue;
            if (cut.index == ev.index)
                continue;  // same-location re-insert is an undo, not a move
            cut.consumed = true;
            BehaviorEvent e;
            e.kind = BehaviorKind::Moving;
            e.state = t;
            e.span = {static_cast<uint32_t>(ev.index),
                      static_cast<uint32_t>(ev.index + ev.text.size())};
            e.detail = "cut@" + std::to_string(cut.state);
            out.push_back(std::move(e));
            if (consumed_inserts)
                consumed_inserts->push_back(t);
            break;
        }
    }
    return out;
}

namespace {

/// Longest common substring length; costs O(|a|*|b|) which is fine for
/// paste-sized inputs.
size_t longest_common_substring(const Text& x, const Text& y)
{
    if (x.empty() || y.empty())
        return 0;
    std::vector<size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
    size_t best = 0;
    for (size_t i = 1; i <= x.size(); ++i) {
        for (size_t j = 1; j <= y.size(); ++j) {
            if (x[i - 1] == y[j - 1]) {
                cur[j] = prev[j - 1] + 1;
                best = std::max(best, cur[j]);
            } else {
                cur[j] = 0;
            }
        }
        std::swap(prev, cur);
    }
    return best;
}

}  // namespace

PasteDetection detect_pastes(const SessionAnalysis& a, const BehaviorConfig& cfg,
                             const std::vector<size_t>& moving_consumed)
{
    PasteDetection out;
    std::set<size_t> consumed(moving_consumed.begin(), moving_consumed.end());
    std::optional<Text> starter_norm;
    bool starter_heuristic = false;
    if (a.session.starter) {
        starter_norm = normalize_ws(a.session.starter->text);
        starter_heuristic = a.session.starter->heuristic;
    }

    std::vector<Text> norm_snapshots(a.states());
    std::vector<bool> norm_done(a.states(), false);
    auto normalized_snapshot = [&](size_t t) -> const Text& {
        if (!norm_done[t]) {
            norm_snapshots[t] = normalize_ws(a.snapshots[t]);
            norm_done[t] = true;
        }
        return norm_snapshots[t];
    };

    for (size_t t = 0; t < a.states(); ++t) {
        const EditEvent& ev = a.session.events[t];
        if (ev.kind != EditKind::Insert || ev.text.size() < cfg.paste_min)
            continue;
        if (consumed.count(t))
            continue;
        Text norm = normalize_ws(ev.text);
        if (norm.empty())
            continue;  // pure-whitespace paste carries no code

        bool duplication = false;
        for (size_t q = 0; q < t && !duplication; ++q) {
            if (normalized_snapshot(q).find(norm) != Text::npos)
                duplication = true;
        }
        BehaviorEvent e;
        e.state = t;
        e.span = {static_cast<uint32_t>(ev.index),
                  static_cast<uint32_t>(ev.index + ev.text.size())};
        if (duplication) {
            e.kind = BehaviorKind::Duplication;
            out.events.push_back(std::move(e));
            continue;
        }
        if (starter_norm && !starter_norm->empty()) {
            size_t common = longest_common_substring(norm, *starter_norm);
            if (static_cast<double>(common)
                >= cfg.starter_overlap * static_cast<double>(norm.size())) {
                out.starter_suppressed.push_back(t);
                continue;
            }
        }
        e.kind = BehaviorKind::ExteriorPaste;
        if (starter_heuristic && starter_norm)
            e.heuristic_flags.push_back("starter-heuristic");
        out.events.push_back(std::move(e));
    }
    return out;
}

namespace {

/// A comment region: the set of characters currently living inside comment
/// spans, tracked forward through edits until the characters vanish or turn
/// back into code.
struct CommentRegion {
    std::vector<uint32_t> positions;  // in current-state coordinates
    size_t born_state;
    bool born_from_code;   // CommentingOut rather than Commenting
    bool any_became_code = false;
};

}  // namespace

std::vector<BehaviorEvent> detect_comment_ops(const SessionAnalysis& a)
{
    std::vector<BehaviorEvent> out;
    std::vector<CommentRegion> regions;

    auto leaf_covered_at = [&](size_t state, uint32_t pos) {
        if (!a.trees[state].exists())
            return false;
        return leaf_at(a.trees[state], pos) >= 0;
    };

    for (size_t t = 0; t < a.states(); ++t) {
        const SpanMap& sm = a.spans[t];

        // advance existing regions one state
        std::vector<CommentRegion> alive;
        for (CommentRegion& r : regions) {
            CommentRegion next = r;
            next.positions.clear();
            bool code_now = false;
            bool any_alive = false;
            for (uint32_t p : r.positions) {
                int64_t img = t == 0 ? p : a.chain.map_forward(p, t - 1, t);
                if (img < 0)
                    continue;  // character deleted
                any_alive = true;
                uint32_t q = static_cast<uint32_t>(img);
                if (sm.in_comment(q))
                    next.positions.push_back(q);
                else
                    code_now = true;
            }
            next.any_became_code = next.any_became_code || code_now;
            if (!next.positions.empty()) {
                alive.push_back(std::move(next));
                continue;
            }
            // region closed: a full deletion of a comment the user wrote
            if (!any_alive && !next.any_became_code && !code_now) {
                BehaviorEvent e;
                e.kind = BehaviorKind::DeletingComment;
                e.state = t;
                e.span = {0, 0};
                e.detail = "born@" + std::to_string(next.born_state);
                out.push_back(std::move(e));
            }
        }
        regions = std::move(alive);

        // new comment characters at t found a region to join or start one
        for (const CharRange& span : sm.comment_spans) {
            CommentRegion* host = nullptr;
            for (CommentRegion& r : regions) {
                for (uint32_t p : r.positions) {
                    if (span.contains(p)) {
                        host = &r;
                        break;
                    }
                }
                if (host)
                    break;
            }
            std::vector<uint32_t> fresh;
            for (uint32_t p = span.lo; p < span.hi; ++p) {
                bool tracked = false;
                if (host && std::binary_search(host->positions.begin(),
                                               host->positions.end(), p))
                    tracked = true;
                for (const CommentRegion& r : regions) {
                    if (tracked)
                        break;
                    if (std::binary_search(r.positions.begin(), r.positions.end(), p))
                        tracked = true;
                }
                if (!tracked)
                    fresh.push_back(p);
            }
            if (fresh.empty())
                continue;
            if (host) {
                // typing inside an existing comment extends it silently
                host->positions.insert(host->positions.end(), fresh.begin(), fresh.end());
                std::sort(host->positions.begin(), host->positions.end());
                continue;
            }
            CommentRegion r;
            r.positions = fresh;
            r.born_state = t;
            r.born_from_code = false;
            // did any of these characters exist as code leaves just before?
            if (t > 0) {
                for (uint32_t p : fresh) {
                    int64_t prev = a.chain.map_back1(p, t);
                    if (prev >= 0 && leaf_covered_at(t - 1, static_cast<uint32_t>(prev))) {
                        r.born_from_code = true;
                        break;
                    }
                }
            }
            BehaviorEvent e;
            e.kind = r.born_from_code ? BehaviorKind::CommentingOut : BehaviorKind::Commenting;
            e.state = t;
            e.span = span;
            out.push_back(std::move(e));
            regions.push_back(std::move(r));
        }
    }

    // uncommenting: a via_comment temporal link materialized; one event per state
    std::set<size_t> uncomment_states;
    std::map<size_t, CharRange> hulls;
    for (const TemporalLink& l : a.tracking.links()) {
        if (!l.via_comment)
            continue;
        const ParseNode& child = a.trees[l.child.state].nodes[l.child.node];
        auto [it, fresh] = hulls.try_emplace(l.child.state, child.range);
        if (!fresh) {
            it->second.lo = std::min(it->second.lo, child.range.lo);
            it->second.hi = std::max(it->second.hi, child.range.hi);
        }
        uncomment_states.insert(l.child.state);
    }
    for (size_t s : uncomment_states) {
        BehaviorEvent e;
        e.kind = BehaviorKind::Uncommenting;
        e.state = s;
        e.span = hulls[s];
        out.push_back(std::move(e));
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const BehaviorEvent& x, const BehaviorEvent& y) {
                         return x.state < y.state;
                     });
    return out;
}

std::vector<BehaviorEvent> detect_renaming(const SessionAnalysis& a, const BehaviorConfig& cfg)
{
    std::vector<BehaviorEvent> out;
    const GrammarTraits& tr = a.grammar->traits();
    auto is_identifier = [&](TypeId t) {
        return std::find(tr.identifier_types.begin(), tr.identifier_types.end(), t)
               != tr.identifier_types.end();
    };

    // lineage touched by each edit (UINT32_MAX: whitespace/comment/absent)
    std::vector<uint32_t> touched(a.states(), UINT32_MAX);
    for (size_t t = 0; t < a.states(); ++t) {
        int32_t leaf = edited_leaf(a, t);
        if (leaf >= 0)
            touched[t] = a.tracking.lineage_id(NodeRef{t, static_cast<uint32_t>(leaf)});
    }

    for (size_t t = 0; t < a.states(); ++t) {
        uint32_t lid = touched[t];
        if (lid == UINT32_MAX)
            continue;
        int32_t leaf = edited_leaf(a, t);
        const ParseNode& node = a.trees[t].nodes[leaf];
        if (!is_identifier(node.type))
            continue;
        const Lineage& lin = a.tracking.lineage(lid);
        // previous instance of this identifier, before the edit
        const NodeRef* prev_inst = nullptr;
        for (const NodeRef& inst : lin.instances) {
            if (inst.state >= t)
                break;
            prev_inst = &inst;
        }
        if (!prev_inst)
            continue;  // brand-new identifier, nothing to rename
        const ParseNode& prev_node = a.trees[prev_inst->state].nodes[prev_inst->node];
        if (prev_node.text == node.text)
            continue;  // lexeme unchanged
        // the last rename_gap edits must all have touched other lineages
        bool blocked = false;
        int seen = 0;
        for (size_t back = t; back-- > 0 && seen < cfg.rename_gap;) {
            ++seen;
            if (touched[back] == lid) {
                blocked = true;
                break;
            }
        }
        if (blocked || seen < cfg.rename_gap)
            continue;
        BehaviorEvent e;
        e.kind = BehaviorKind::Renaming;
        e.state = t;
        e.span = node.range;
        e.detail = to_utf8(prev_node.text) + " -> " + to_utf8(node.text);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<BehaviorEvent> detect_behaviors(const SessionAnalysis& a,
                                            const BehaviorConfig& cfg,
                                            std::vector<size_t>* starter_suppressed)
{
    std::vector<size_t> consumed;
    std::vector<BehaviorEvent> out = detect_moving(a, cfg, &consumed);
    PasteDetection pastes = detect_pastes(a, cfg, consumed);
    out.insert(out.end(), pastes.events.begin(), pastes.events.end());
    if (starter_suppressed)
        *starter_suppressed = pastes.starter_suppressed;
    std::vector<BehaviorEvent> comments = detect_comment_ops(a);
    out.insert(out.end(), comments.begin(), comments.end());
    std::vector<BehaviorEvent> renames = detect_renaming(a, cfg);
    out.insert(out.end(), renames.begin(), renames.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const BehaviorEvent& x, const BehaviorEvent& y) {
                         return x.state < y.state;
                     });
    return out;
}

std::vector<BehaviorSummaryRow> behavior_summary(
    const std::vector<SessionBehaviorCounts>& sessions, size_t size_split)
{
    const BehaviorKind kinds[] = {
        BehaviorKind::Duplication,  BehaviorKind::ExteriorPaste,
        BehaviorKind::Commenting,   BehaviorKind::DeletingComment,
        BehaviorKind::CommentingOut, BehaviorKind::Uncommenting,
        BehaviorKind::Moving,       BehaviorKind::Renaming,
    };
    size_t short_files = 0, medium_files = 0;
    for (const auto& s : sessions)
        (s.events < size_split ? short_files : medium_files) += 1;

    auto median = [](std::vector<size_t>& v) -> std::optional<double> {
        if (v.empty())
            return std::nullopt;
        std::sort(v.begin(), v.end());
        size_t n = v.size();
        if (n % 2 == 1)
            return static_cast<double>(v[n / 2]);
        return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
    };

    std::vector<BehaviorSummaryRow> rows;
    for (BehaviorKind k : kinds) {
        BehaviorSummaryRow row;
        row.kind = k;
        std::vector<size_t> short_counts, medium_counts;
        for (const auto& s : sessions) {
            auto it = s.counts.find(k);
            size_t c = it == s.counts.end() ? 0 : it->second;
            if (c == 0)
                continue;
            if (s.events < size_split) {
                ++row.short_files_with;
                short_counts.push_back(c);
            } else {
                ++row.medium_files_with;
                medium_counts.push_back(c);
            }
        }
        if (short_files)
            row.short_fraction =
                static_cast<double>(row.short_files_with) / static_cast<double>(short_files);
        if (medium_files)
            row.medium_fraction =
                static_cast<double>(row.medium_files_with) / static_cast<double>(medium_files);
        row.short_median = median(short_counts);
        row.medium_median = median(medium_counts);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ptchron
