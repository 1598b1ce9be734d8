#include "ptchron/correspondence.hpp"

#include <cassert>

namespace ptchron {

CorrespondenceArray build_correspondence(const EditEvent& event, size_t prev_len,
                                         size_t state_index)
{
    CorrespondenceArray c;
    c.state_index = state_index;
    if (event.kind == EditKind::Insert) {
        assert(event.index <= prev_len);
        c.values.reserve(prev_len + event.text.size() + 1);
        for (size_t j = 0; j < event.index; ++j)
            c.values.push_back(static_cast<int32_t>(j));
        for (size_t j = 0; j < event.text.size(); ++j)
            c.values.push_back(-1);
        for (size_t j = event.index; j <= prev_len; ++j)
            c.values.push_back(static_cast<int32_t>(j));
    } else {
        assert(event.index + event.text.size() <= prev_len);
        c.values.reserve(prev_len - event.text.size() + 1);
        for (size_t j = 0; j < event.index; ++j)
            c.values.push_back(static_cast<int32_t>(j));
        for (size_t j = event.index + event.text.size(); j <= prev_len; ++j)
            c.values.push_back(static_cast<int32_t>(j));
    }
    return c;
}

void CorrespondenceChain::push_edit(const EditEvent& ev, size_t new_len)
{
    steps_.push_back({ev.kind, static_cast<uint32_t>(ev.index),
                      static_cast<uint32_t>(ev.text.size())});
    lengths_.push_back(new_len);
}

CorrespondenceArray CorrespondenceChain::array_at(size_t t) const
{
    const Step& s = steps_[t];
    size_t prev_len = t == 0 ? 0 : lengths_[t - 1];
    EditEvent ev;
    ev.kind = s.kind;
    ev.index = s.index;
    ev.text.resize(s.len, U'x');  // only the length matters here
    return build_correspondence(ev, prev_len, t);
}

int64_t CorrespondenceChain::map_back1(uint32_t pos, size_t t) const
{
    const Step& s = steps_[t];
    if (s.kind == EditKind::Insert) {
        if (pos < s.index)
            return pos;
        if (pos < s.index + s.len)
            return -1;
        return static_cast<int64_t>(pos) - s.len;
    }
    if (pos < s.index)
        return pos;
    return static_cast<int64_t>(pos) + s.len;
}

int64_t CorrespondenceChain::map_back(uint32_t pos, size_t t, size_t u) const
{
    int64_t p = pos;
    for (size_t q = t; q > u; --q) {
        p = map_back1(static_cast<uint32_t>(p), q);
        if (p < 0)
            return -1;
    }
    return p;
}

int64_t CorrespondenceChain::map_forward(uint32_t pos, size_t t, size_t u) const
{
    int64_t p = pos;
    for (size_t q = t + 1; q <= u; ++q) {
        const Step& s = steps_[q];
        if (s.kind == EditKind::Insert) {
            if (p >= s.index)
                p += s.len;
        } else {
            if (p >= s.index && p < static_cast<int64_t>(s.index) + s.len)
                return -1;
            if (p >= static_cast<int64_t>(s.index) + s.len)
                p -= s.len;
        }
    }
    return p;
}

namespace {

/// One backward step of the survivor-span semantics. Returns the image of
/// [first surviving char, last surviving char] or nullopt when the whole
/// range was created at step t. `strict_start` additionally fails when the
/// range's first character itself is new.
std::optional<CharRange> step_impl(const CorrespondenceChain& chain, CharRange r, size_t t,
                                   bool strict_start)
{
    if (r.empty()) {
        // no characters to scan; map the position through the array
        // (the end sentinel makes position |S_t| valid)
        int64_t p = chain.map_back1(r.lo, t);
        if (p < 0)
            return std::nullopt;
        return CharRange{static_cast<uint32_t>(p), static_cast<uint32_t>(p)};
    }

    int64_t first = chain.map_back1(r.lo, t);
    if (strict_start && first < 0)
        return std::nullopt;
    if (first < 0) {
        // forward scan within the range for the first surviving character
        for (uint32_t j = r.lo + 1; j < r.hi && first < 0; ++j)
            first = chain.map_back1(j, t);
    }
    if (first < 0)
        return std::nullopt;  // entire string is new

    int64_t last = chain.map_back1(r.hi - 1, t);
    if (last < 0) {
        for (uint32_t j = r.hi - 1; j > r.lo && last < 0; --j)
            last = chain.map_back1(j - 1, t);
    }
    assert(last >= 0);  // at least `first`'s character survives
    return CharRange{static_cast<uint32_t>(first), static_cast<uint32_t>(last) + 1};
}

}  // namespace

std::optional<CharRange> step_range_back(const CorrespondenceChain& chain, CharRange range,
                                         size_t t)
{
    return step_impl(chain, range, t, false);
}

std::optional<CharRange> step_range_back_strict(const CorrespondenceChain& chain,
                                                CharRange range, size_t t)
{
    return step_impl(chain, range, t, true);
}

std::optional<CharRange> chain_range(const CorrespondenceChain& chain, CharRange range,
                                     size_t from_state, size_t to_state)
{
    if (from_state == to_state)
        return range;
    if (range.empty()) {
        // map the bare position; the end sentinel keeps |S_t| valid
        int64_t p = range.lo;
        for (size_t t = from_state; t > to_state; --t) {
            p = chain.map_back1(static_cast<uint32_t>(p), t);
            if (p < 0)
                return std::nullopt;
        }
        return CharRange{static_cast<uint32_t>(p), static_cast<uint32_t>(p)};
    }
    // span of the surviving characters of the original range: the boundary
    // scans search inward from each end for the nearest character that
    // still exists at to_state
    int64_t first = -1, last = -1;
    uint32_t first_idx = 0;
    for (uint32_t x = range.lo; x < range.hi; ++x) {
        first = chain.map_back(x, from_state, to_state);
        if (first >= 0) {
            first_idx = x;
            break;
        }
    }
    if (first < 0)
        return std::nullopt;  // the entire string is new
    for (uint32_t x = range.hi; x-- > first_idx;) {
        last = chain.map_back(x, from_state, to_state);
        if (last >= 0)
            break;
    }
    return CharRange{static_cast<uint32_t>(first), static_cast<uint32_t>(last) + 1};
}

bool char_exists_at(const CorrespondenceChain& chain, uint32_t index, size_t from_state,
                    size_t to_state)
{
    return chain.map_back(index, from_state, to_state) >= 0;
}

}  // namespace ptchron
