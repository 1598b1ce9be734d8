#pragma once

#include "ptchron/edit_log.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ptchron {

/// Half-open code-point range [lo, hi).
struct CharRange {
    uint32_t lo = 0;
    uint32_t hi = 0;

    uint32_t size() const { return hi - lo; }
    bool empty() const { return lo == hi; }
    bool contains(const CharRange& r) const { return r.lo >= lo && r.hi <= hi; }
    bool contains(uint32_t i) const { return i >= lo && i < hi; }
    bool overlaps(const CharRange& r) const { return lo < r.hi && r.lo < hi; }
    friend bool operator==(const CharRange&, const CharRange&) = default;
};

/// Per-state character correspondence array C_t. values[i] is the position
/// the character at i held in the previous snapshot, or -1 for characters
/// introduced at this state. An extra end sentinel at position |S_t| keeps
/// end-exclusive ranges at file end mappable.
struct CorrespondenceArray {
    size_t state_index = 0;
    std::vector<int32_t> values;  // length |S_t| + 1
};

/// Builds C_t from the edit that produced S_t. prev_len is |S_{t-1}|.
CorrespondenceArray build_correspondence(const EditEvent& event, size_t prev_len,
                                         size_t state_index);

/// The arrays are fully determined by the per-state edit, so internally we
/// keep the edits and evaluate lookups in closed form. The observable
/// contract stays the array semantics above; `array_at` materializes one.
class CorrespondenceChain {
public:
    /// steps[t] produced snapshot t; lengths[t] = |S_t|.
    void push_edit(const EditEvent& ev, size_t new_len);

    size_t states() const { return steps_.size(); }
    size_t length_at(size_t t) const { return lengths_[t]; }

    CorrespondenceArray array_at(size_t t) const;

    /// Position of character `pos`@t in snapshot t-1, or -1 if created at t.
    int64_t map_back1(uint32_t pos, size_t t) const;

    /// Position at u (u <= t) reached by direct composition; -1 once the
    /// character stops existing. Exists iff no step maps it to -1.
    int64_t map_back(uint32_t pos, size_t t, size_t u) const;

    /// Position of character `pos`@t in snapshot u (u >= t), or -1 if the
    /// character is deleted on the way.
    int64_t map_forward(uint32_t pos, size_t t, size_t u) const;

private:
    struct Step {
        EditKind kind;
        uint32_t index;
        uint32_t len;
    };
    std::vector<Step> steps_;
    std::vector<size_t> lengths_;
};

/// chain_range: maps a range at `from_state` back to `to_state` by composing
/// correspondences. The result spans the surviving characters; when an
/// endpoint maps to -1 the nearest surviving character inside the range
/// takes its place (forward scan for the start, backward for the end).
/// nullopt = NoCorrespondence: nothing in the range survives.
std::optional<CharRange> chain_range(const CorrespondenceChain& chain, CharRange range,
                                     size_t from_state, size_t to_state);

/// Single step of chain_range (state t -> t-1).
std::optional<CharRange> step_range_back(const CorrespondenceChain& chain, CharRange range,
                                         size_t t);

/// Variant used by temporal-parent search: additionally fails when the
/// range's first character was created at this step. A node whose leading
/// character is new (a fresh opening delimiter, say) starts a new lineage
/// rather than inheriting the one its tail characters came from.
std::optional<CharRange> step_range_back_strict(const CorrespondenceChain& chain,
                                                CharRange range, size_t t);

/// True iff the character at `index`@from_state exists at to_state
/// (composition never hits -1). to_state < from_state.
bool char_exists_at(const CorrespondenceChain& chain, uint32_t index, size_t from_state,
                    size_t to_state);

}  // namespace ptchron
