#include "ptchron/bridging.hpp"

#include "grammar_common.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace ptchron {

namespace {

/// Mutable tree under construction. Indices stay stable; removed nodes are
/// flagged dead and dropped when the tree is finalized into preorder.
struct Workspace {
    std::vector<ParseNode> nodes;
    std::vector<bool> dead;
    int32_t root = -1;

    int32_t add(ParseNode n)
    {
        nodes.push_back(std::move(n));
        dead.push_back(false);
        return static_cast<int32_t>(nodes.size() - 1);
    }

    void detach(int32_t idx)
    {
        int32_t p = nodes[idx].parent;
        if (p >= 0) {
            auto& ch = nodes[p].children;
            ch.erase(std::remove(ch.begin(), ch.end(), idx), ch.end());
        }
        std::vector<int32_t> stack{idx};
        while (!stack.empty()) {
            int32_t n = stack.back();
            stack.pop_back();
            dead[n] = true;
            for (int32_t c : nodes[n].children)
                stack.push_back(c);
        }
    }

    /// Recomputes internal-node ranges as child hulls and drops internal
    /// nodes whose children all vanished. Leaves keep their carved ranges.
    void normalize()
    {
        // post-order over the live tree
        std::vector<int32_t> order;
        std::vector<int32_t> stack{root};
        while (!stack.empty()) {
            int32_t n = stack.back();
            stack.pop_back();
            order.push_back(n);
            for (int32_t c : nodes[n].children)
                stack.push_back(c);
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int32_t n = *it;
            if (dead[n] || n == root)
                continue;
            ParseNode& node = nodes[n];
            if (node.is_leaf && node.children.empty())
                continue;
            uint32_t lo = UINT32_MAX, hi = 0;
            if (node.is_leaf && !node.text.empty()) {
                lo = node.range.lo;
                hi = node.range.lo + static_cast<uint32_t>(node.text.size());
            }
            bool any = lo != UINT32_MAX;
            for (int32_t c : node.children) {
                if (dead[c])
                    continue;
                any = true;
                lo = std::min(lo, nodes[c].range.lo);
                hi = std::max(hi, nodes[c].range.hi);
            }
            if (!any) {
                detach(n);
                continue;
            }
            node.range = {lo, hi};
        }
    }

    Tree finish(size_t state, uint32_t snapshot_len)
    {
        nodes[root].range = {0, snapshot_len};
        Tree t;
        t.state = state;
        t.kind = TreeKind::Bridging;
        std::vector<std::pair<int32_t, int32_t>> stack{{root, -1}};
        while (!stack.empty()) {
            auto [old_idx, new_parent] = stack.back();
            stack.pop_back();
            int32_t new_idx = static_cast<int32_t>(t.nodes.size());
            ParseNode n = nodes[old_idx];
            std::vector<int32_t> old_children = std::move(n.children);
            n.children.clear();
            n.parent = new_parent;
            t.nodes.push_back(std::move(n));
            if (new_parent >= 0)
                t.nodes[new_parent].children.push_back(new_idx);
            for (auto it = old_children.rbegin(); it != old_children.rend(); ++it)
                stack.push_back({*it, new_idx});
        }
        return t;
    }
};

struct BridgeFail {
    std::string reason;
};

/// Copies the subtree rooted at `src_root` of T_p, keeping only characters
/// alive at state t and rewriting ranges into state-t coordinates.
/// Returns -1 when nothing survives.
int32_t extract_subtree(Workspace& ws, const Tree& src_tree, int32_t src_root,
                        const CorrespondenceChain& chain, size_t p, size_t t)
{
    const CharRange span = src_tree.nodes[src_root].range;
    std::vector<int64_t> img(span.size(), -1);
    for (uint32_t x = span.lo; x < span.hi; ++x)
        img[x - span.lo] = chain.map_back(x, p, t);

    struct Frame {
        int32_t src;
        int32_t dst_parent;
    };
    int32_t new_root = -1;
    std::vector<Frame> stack{{src_root, -1}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const ParseNode& sn = src_tree.nodes[f.src];
        int64_t lo = -1, hi = -1;
        for (uint32_t x = sn.range.lo; x < sn.range.hi; ++x) {
            int64_t v = img[x - span.lo];
            if (v >= 0) {
                if (lo < 0)
                    lo = v;
                hi = v;
            }
        }
        if (lo < 0)
            continue;  // node fully pruned
        ParseNode copy;
        copy.type = sn.type;
        copy.is_leaf = sn.is_leaf;
        copy.is_transient = sn.is_transient;
        copy.range = {static_cast<uint32_t>(lo), static_cast<uint32_t>(hi) + 1};
        if (sn.is_leaf) {
            for (uint32_t x = sn.range.lo; x < sn.range.hi; ++x)
                if (img[x - span.lo] >= 0)
                    copy.text.push_back(sn.text[x - sn.range.lo]);
        }
        copy.parent = f.dst_parent;
        int32_t idx = ws.add(std::move(copy));
        if (f.dst_parent >= 0)
            ws.nodes[f.dst_parent].children.push_back(idx);
        else
            new_root = idx;
        for (auto it = sn.children.rbegin(); it != sn.children.rend(); ++it)
            stack.push_back({*it, idx});
    }
    return new_root;
}

class Bridger {
public:
    Bridger(std::vector<Tree>& trees, const CorrespondenceChain& chain,
            const std::vector<SpanMap>& spans, const std::vector<Text>& snapshots,
            const std::vector<EditEvent>& events, const TrackResult& pass1)
        : trees_(trees), chain_(chain), spans_(spans), snapshots_(snapshots),
          events_(events), pass1_(pass1)
    {
    }

    std::vector<BridgeOutcome> run();

private:
    void build_one(size_t t);
    Workspace copy_base(size_t t);

    /// Delete-edit pruning: the characters vanish from the snapshot, so all
    /// later positions compact down (§5.1 semantics).
    void prune_compact(Workspace& ws, const std::vector<uint32_t>& positions);

    /// Carves characters out of the leaves that held them without shifting
    /// any coordinates: the characters stay in the snapshot but re-enter
    /// inside the incoming subtree.
    void carve_from_leaves(Workspace& ws, const std::vector<uint32_t>& positions);

    void shift_for_insert(Workspace& ws, uint32_t at, uint32_t len, const Text& inserted);
    void corresponding_insert(Workspace& ws, size_t t, size_t next_parsed, uint32_t seg_lo);
    void add_transient(Workspace& ws, CharRange segment, const Text& text);
    int32_t resolve_in_base(Workspace& ws, const NodeRef& parsed_node,
                            std::optional<size_t> t0);
    void attach_child(Workspace& ws, int32_t parent, int32_t child);
    void extend_ancestors(Workspace& ws, int32_t node);
    std::optional<size_t> last_parsed_before(size_t t) const;

    std::vector<Tree>& trees_;
    const CorrespondenceChain& chain_;
    const std::vector<SpanMap>& spans_;
    const std::vector<Text>& snapshots_;
    const std::vector<EditEvent>& events_;
    const TrackResult& pass1_;
};

std::optional<size_t> Bridger::last_parsed_before(size_t t) const
{
    for (size_t i = t; i-- > 0;) {
        if (trees_[i].kind == TreeKind::Parsed)
            return i;
        if (trees_[i].kind == TreeKind::Absent)
            return std::nullopt;
    }
    return std::nullopt;  // session starts unparseable
}

Workspace Bridger::copy_base(size_t t)
{
    Workspace ws;
    if (t == 0) {
        // base is the empty file before the first event
        ParseNode root;
        root.type = 2;  // adapters register "module" first after the reserved ids
        root.range = {0, 0};
        for (const Tree& tr : trees_) {
            if (tr.exists()) {
                root.type = tr.nodes[0].type;
                break;
            }
        }
        ws.root = ws.add(std::move(root));
        return ws;
    }
    const Tree& base = trees_[t - 1];
    bool base_parsed = base.kind == TreeKind::Parsed;
    ws.nodes.reserve(base.size());
    for (uint32_t i = 0; i < base.nodes.size(); ++i) {
        ParseNode n = base.nodes[i];
        if (base_parsed) {
            n.anchor_state = static_cast<int32_t>(t - 1);
            n.anchor_node = i;
        }
        ws.add(std::move(n));
    }
    ws.root = 0;
    return ws;
}

void Bridger::prune_compact(Workspace& ws, const std::vector<uint32_t>& positions)
{
    if (positions.empty())
        return;
    auto removed_before = [&](uint32_t x) {
        return static_cast<uint32_t>(
            std::lower_bound(positions.begin(), positions.end(), x) - positions.begin());
    };
    std::vector<int32_t> to_detach;
    for (size_t i = 0; i < ws.nodes.size(); ++i) {
        if (ws.dead[i])
            continue;
        ParseNode& n = ws.nodes[i];
        uint32_t lo_shift = removed_before(n.range.lo);
        uint32_t hi_shift = removed_before(n.range.hi);
        if (n.is_leaf && hi_shift > lo_shift) {
            // a leaf that grew children keeps its text as a range prefix
            Text kept;
            kept.reserve(n.text.size());
            uint32_t text_end = n.range.lo + static_cast<uint32_t>(n.text.size());
            for (uint32_t p = n.range.lo; p < text_end; ++p) {
                if (!std::binary_search(positions.begin(), positions.end(), p))
                    kept.push_back(n.text[p - n.range.lo]);
            }
            n.text = std::move(kept);
        }
        n.range.lo -= lo_shift;
        n.range.hi -= hi_shift;
        if (n.range.empty() && static_cast<int32_t>(i) != ws.root)
            to_detach.push_back(static_cast<int32_t>(i));
    }
    for (int32_t idx : to_detach)
        if (!ws.dead[idx])
            ws.detach(idx);
}

void Bridger::carve_from_leaves(Workspace& ws, const std::vector<uint32_t>& positions)
{
    std::vector<int32_t> to_detach;
    for (size_t i = 0; i < ws.nodes.size(); ++i) {
        if (ws.dead[i])
            continue;
        ParseNode& n = ws.nodes[i];
        if (!n.is_leaf)
            continue;
        for (uint32_t q : positions) {
            if (!n.range.contains(q) || n.range.empty())
                continue;
            if (!n.children.empty()) {
                // leaf that already grew children: adjust the text prefix
                // only, the range must keep covering the children
                uint32_t cut = q - n.range.lo;
                if (cut < n.text.size())
                    n.text.erase(n.text.begin() + cut);
                continue;
            }
            if (q == n.range.lo) {
                n.range.lo += 1;
                if (!n.text.empty())
                    n.text.erase(n.text.begin());
            } else {
                // carving an interior or trailing char truncates the leaf;
                // anything right of it becomes uncovered
                uint32_t cut = q - n.range.lo;
                n.text = n.text.substr(0, cut);
                n.range.hi = q;
            }
        }
        if (n.range.empty() && static_cast<int32_t>(i) != ws.root)
            to_detach.push_back(static_cast<int32_t>(i));
    }
    for (int32_t idx : to_detach)
        if (!ws.dead[idx])
            ws.detach(idx);
    ws.normalize();
}

void Bridger::shift_for_insert(Workspace& ws, uint32_t at, uint32_t len, const Text& inserted)
{
    for (size_t i = 0; i < ws.nodes.size(); ++i) {
        if (ws.dead[i])
            continue;
        ParseNode& n = ws.nodes[i];
        uint32_t lo = n.range.lo, hi = n.range.hi;
        bool absorbs = n.is_leaf && n.children.empty() && lo < at && at < hi;
        if (lo >= at)
            n.range.lo = lo + len;
        if (hi > at)
            n.range.hi = hi + len;
        if (absorbs && at - lo <= n.text.size())
            n.text = n.text.substr(0, at - lo) + inserted + n.text.substr(at - lo);
    }
}

void Bridger::extend_ancestors(Workspace& ws, int32_t node)
{
    int32_t p = ws.nodes[node].parent;
    while (p >= 0) {
        ParseNode& pn = ws.nodes[p];
        bool grew = false;
        if (ws.nodes[node].range.lo < pn.range.lo) {
            pn.range.lo = ws.nodes[node].range.lo;
            grew = true;
        }
        if (ws.nodes[node].range.hi > pn.range.hi) {
            pn.range.hi = ws.nodes[node].range.hi;
            grew = true;
        }
        if (!grew)
            break;
        node = p;
        p = pn.parent;
    }
}

void Bridger::attach_child(Workspace& ws, int32_t parent, int32_t child)
{
    auto& ch = ws.nodes[parent].children;
    const CharRange r = ws.nodes[child].range;
    size_t pos = 0;
    for (; pos < ch.size(); ++pos) {
        const CharRange& cr = ws.nodes[ch[pos]].range;
        if (cr.lo >= r.hi)
            break;
        if (cr.overlaps(r))
            throw BridgeFail{"overlapping-subtree"};
    }
    ch.insert(ch.begin() + static_cast<long>(pos), child);
    ws.nodes[child].parent = parent;
    extend_ancestors(ws, child);
}

int32_t Bridger::resolve_in_base(Workspace& ws, const NodeRef& parsed_node,
                                 std::optional<size_t> t0)
{
    if (!t0)
        throw BridgeFail{"ancestor-without-temporal-anchor"};
    NodeRef want = parsed_node;
    if (parsed_node.state != *t0) {
        uint32_t lid = pass1_.lineage_id(parsed_node);
        std::optional<NodeRef> inst;
        if (lid != UINT32_MAX)
            inst = pass1_.instance_at(lid, *t0);
        if (!inst)
            throw BridgeFail{"ancestor-without-temporal-anchor"};
        want = *inst;
    }
    for (size_t i = 0; i < ws.nodes.size(); ++i) {
        if (!ws.dead[i] && ws.nodes[i].anchor_state == static_cast<int32_t>(want.state)
            && ws.nodes[i].anchor_node == want.node)
            return static_cast<int32_t>(i);
    }
    throw BridgeFail{"ancestor-without-temporal-anchor"};
}

void Bridger::corresponding_insert(Workspace& ws, size_t t, size_t p, uint32_t seg_lo)
{
    const Tree& future = trees_[p];
    const EditEvent& ev = events_[t];
    const uint32_t at = static_cast<uint32_t>(ev.index);
    const uint32_t len = static_cast<uint32_t>(ev.text.size());

    int64_t i_p64 = chain_.map_forward(seg_lo, t, p);
    assert(i_p64 >= 0);
    uint32_t i_p = static_cast<uint32_t>(i_p64);

    int32_t s = lowest_containing(future, {i_p, i_p + 1});
    if (s <= 0) {
        shift_for_insert(ws, at, len, ev.text);
        return;
    }

    // highest node on the root->s path with no pass-1 temporal parent,
    // i.e. the outermost structure created after the last parsed state
    std::vector<int32_t> path;
    for (int32_t n = s; n > 0; n = future.nodes[n].parent)
        path.push_back(n);
    int32_t s_prime_src = -1;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (!pass1_.parent_of(NodeRef{p, static_cast<uint32_t>(*it)})) {
            s_prime_src = *it;
            break;
        }
    }
    bool replace = false;
    if (s_prime_src < 0) {
        s_prime_src = s;  // the edit happened inside an existing node
        replace = true;
    }

    std::optional<size_t> t0 = last_parsed_before(t);

    int32_t target = -1;
    if (replace) {
        const TemporalLink* link =
            pass1_.parent_of(NodeRef{p, static_cast<uint32_t>(s_prime_src)});
        assert(link);
        target = resolve_in_base(ws, link->parent, t0);
    } else {
        int32_t parent_idx = future.nodes[s_prime_src].parent;
        if (parent_idx == 0) {
            target = ws.root;
        } else {
            const TemporalLink* link =
                pass1_.parent_of(NodeRef{p, static_cast<uint32_t>(parent_idx)});
            if (!link)
                throw BridgeFail{"ancestor-without-temporal-anchor"};
            target = resolve_in_base(ws, link->parent, t0);
        }
    }

    // characters of s' that existed before this edit re-enter inside s';
    // carve them out of their old leaves (base coordinates, pre-shift).
    // In the replace branch the target subtree is subsumed wholesale, so
    // its own characters stay put.
    const CharRange sp_span = future.nodes[s_prime_src].range;
    const CharRange target_range = ws.nodes[target].range;
    std::vector<uint32_t> reentering;
    for (uint32_t x = sp_span.lo; x < sp_span.hi; ++x) {
        int64_t prev = t == 0 ? -1 : chain_.map_back(x, p, t - 1);
        if (prev < 0)
            continue;
        uint32_t q = static_cast<uint32_t>(prev);
        if (replace && target_range.contains(q))
            continue;
        reentering.push_back(q);
    }
    std::sort(reentering.begin(), reentering.end());
    reentering.erase(std::unique(reentering.begin(), reentering.end()), reentering.end());
    carve_from_leaves(ws, reentering);
    if (ws.dead[target])
        throw BridgeFail{"ancestor-without-temporal-anchor"};

    shift_for_insert(ws, at, len, ev.text);

    int32_t s_prime = extract_subtree(ws, future, s_prime_src, chain_, p, t);
    if (s_prime < 0)
        return;  // the edit contributed no surviving structure

    if (replace) {
        int32_t tp = ws.nodes[target].parent;
        if (tp < 0)
            throw BridgeFail{"range-inconsistency"};
        ws.nodes[s_prime].anchor_state = ws.nodes[target].anchor_state;
        ws.nodes[s_prime].anchor_node = ws.nodes[target].anchor_node;
        auto& ch = ws.nodes[tp].children;
        auto it = std::find(ch.begin(), ch.end(), target);
        assert(it != ch.end());
        size_t slot = static_cast<size_t>(it - ch.begin());
        ws.detach(target);
        ws.nodes[s_prime].parent = tp;
        ch.insert(ch.begin() + static_cast<long>(std::min(slot, ch.size())), s_prime);
        for (size_t k = 1; k < ch.size(); ++k) {
            if (ws.nodes[ch[k - 1]].range.hi > ws.nodes[ch[k]].range.lo)
                throw BridgeFail{"range-inconsistency"};
        }
        extend_ancestors(ws, s_prime);
    } else {
        attach_child(ws, target, s_prime);
    }
}

void Bridger::add_transient(Workspace& ws, CharRange segment, const Text& text)
{
    ParseNode n;
    n.type = kTransientType;
    n.range = segment;
    n.text = text;
    n.is_leaf = true;
    n.is_transient = true;
    int32_t idx = ws.add(std::move(n));

    // deepest live node containing the segment; the root is updated to span
    // the whole snapshot at finalize, so force it as the fallback host
    int32_t host = ws.root;
    bool advanced = true;
    while (advanced) {
        advanced = false;
        for (int32_t c : ws.nodes[host].children) {
            if (!ws.dead[c] && ws.nodes[c].range.contains(segment)) {
                host = c;
                advanced = true;
                break;
            }
        }
    }
    attach_child(ws, host, idx);
}

void Bridger::build_one(size_t t)
{
    const EditEvent& ev = events_[t];
    Workspace ws = copy_base(t);
    // keep the root spanning the snapshot so transient placement at the
    // edges stays inside it
    ws.nodes[ws.root].range = {0, static_cast<uint32_t>(snapshots_[t].size())};

    if (ev.kind == EditKind::Delete) {
        std::vector<uint32_t> positions;
        for (uint32_t x = 0; x < ev.text.size(); ++x)
            positions.push_back(static_cast<uint32_t>(ev.index) + x);
        prune_compact(ws, positions);
    } else {
        std::optional<size_t> next_parsed;
        for (size_t q = t + 1; q < trees_.size(); ++q) {
            if (trees_[q].kind == TreeKind::Parsed) {
                next_parsed = q;
                break;
            }
        }
        enum class Cls { Corresponding, Transient, Unrepresented };
        std::vector<Cls> cls(ev.text.size(), Cls::Transient);
        if (next_parsed) {
            for (uint32_t k = 0; k < ev.text.size(); ++k) {
                uint32_t pos_t = static_cast<uint32_t>(ev.index) + k;
                int64_t pos_p = chain_.map_forward(pos_t, t, *next_parsed);
                if (pos_p < 0)
                    continue;  // dies before the stretch ends: transient
                int32_t leaf = leaf_at(trees_[*next_parsed], static_cast<uint32_t>(pos_p));
                cls[k] = leaf >= 0 ? Cls::Corresponding : Cls::Unrepresented;
            }
        }

        std::vector<CharRange> corresponding, transient;
        uint32_t k = 0;
        while (k < ev.text.size()) {
            uint32_t start = k;
            Cls c = cls[k];
            while (k < ev.text.size() && cls[k] == c)
                ++k;
            CharRange seg{static_cast<uint32_t>(ev.index) + start,
                          static_cast<uint32_t>(ev.index) + k};
            if (c == Cls::Corresponding)
                corresponding.push_back(seg);
            else if (c == Cls::Transient)
                transient.push_back(seg);
        }

        if (corresponding.empty()) {
            shift_for_insert(ws, static_cast<uint32_t>(ev.index),
                             static_cast<uint32_t>(ev.text.size()), ev.text);
        } else {
            // the leading segment drives the structural insert; extra
            // corresponding segments of a split paste stay uncovered until
            // the next parse picks them up
            corresponding_insert(ws, t, *next_parsed, corresponding.front().lo);
        }
        for (const CharRange& seg : transient) {
            Text seg_text = ev.text.substr(seg.lo - ev.index, seg.size());
            add_transient(ws, seg, seg_text);
        }
    }

    ws.normalize();
    Tree built = ws.finish(t, static_cast<uint32_t>(snapshots_[t].size()));
    std::string why;
    if (!validate_tree(built, snapshots_[t], &why))
        throw BridgeFail{"range-inconsistency"};
    const SpanMap& sm = spans_[t];
    for (const ParseNode& n : built.nodes) {
        if (!n.is_leaf || !n.children.empty() || n.is_transient)
            continue;
        if (sm.overlaps_comment(n.range))
            throw BridgeFail{"range-inconsistency"};
    }
    trees_[t] = std::move(built);
}

std::vector<BridgeOutcome> Bridger::run()
{
    std::vector<BridgeOutcome> outcomes;
    bool chain_broken = false;
    for (size_t t = 0; t < trees_.size(); ++t) {
        if (trees_[t].kind == TreeKind::Parsed) {
            chain_broken = false;
            continue;
        }
        if (trees_[t].kind == TreeKind::Bridging)
            continue;  // already built (re-entrant call)
        BridgeOutcome oc;
        oc.state = t;
        if (chain_broken) {
            oc.status = BridgeStatus::Failed;
            oc.failure_reason = "chained";
            outcomes.push_back(oc);
            continue;
        }
        try {
            build_one(t);
            oc.status = BridgeStatus::Built;
        } catch (const BridgeFail& f) {
            oc.status = BridgeStatus::Failed;
            oc.failure_reason = f.reason;
            trees_[t] = Tree{};
            trees_[t].state = t;
            chain_broken = true;
        }
        outcomes.push_back(oc);
    }
    return outcomes;
}

}  // namespace

std::vector<ParseNode> prune_subtree(const Tree& tree, int32_t root,
                                     const std::function<bool(uint32_t)>& surviving)
{
    const ParseNode& src_root = tree.nodes[root];
    std::vector<ParseNode> out;
    auto removed_before = [&](uint32_t x) {
        uint32_t cnt = 0;
        for (uint32_t p = src_root.range.lo; p < x; ++p)
            if (!surviving(p))
                ++cnt;
        return cnt;
    };
    struct Frame {
        int32_t src;
        int32_t dst_parent;
    };
    std::vector<Frame> stack{{root, -1}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const ParseNode& sn = tree.nodes[f.src];
        uint32_t kept = 0;
        for (uint32_t p = sn.range.lo; p < sn.range.hi; ++p)
            if (surviving(p))
                ++kept;
        if (kept == 0)
            continue;
        ParseNode copy;
        copy.type = sn.type;
        copy.is_leaf = sn.is_leaf;
        copy.is_transient = sn.is_transient;
        copy.range.lo = sn.range.lo - removed_before(sn.range.lo);
        copy.range.hi = sn.range.hi - removed_before(sn.range.hi);
        if (sn.is_leaf) {
            for (uint32_t p = sn.range.lo; p < sn.range.hi; ++p)
                if (surviving(p))
                    copy.text.push_back(sn.text[p - sn.range.lo]);
        }
        copy.parent = f.dst_parent;
        int32_t idx = static_cast<int32_t>(out.size());
        out.push_back(std::move(copy));
        if (f.dst_parent >= 0)
            out[f.dst_parent].children.push_back(idx);
        for (auto it = sn.children.rbegin(); it != sn.children.rend(); ++it)
            stack.push_back({*it, idx});
    }
    return out;
}

std::vector<BridgeOutcome> bridge_session(std::vector<Tree>& trees,
                                          const CorrespondenceChain& chain,
                                          const std::vector<SpanMap>& spans,
                                          const std::vector<Text>& snapshots,
                                          const std::vector<EditEvent>& events,
                                          const TrackResult& pass1)
{
    Bridger b(trees, chain, spans, snapshots, events, pass1);
    return b.run();
}

CoverageStats coverage_stats(const std::vector<Tree>& trees,
                             const std::vector<BridgeOutcome>& outcomes)
{
    CoverageStats s;
    if (trees.empty())
        return s;
    size_t parsed = 0, bridged = 0;
    for (const Tree& t : trees) {
        if (t.kind == TreeKind::Parsed)
            ++parsed;
        else if (t.kind == TreeKind::Bridging)
            ++bridged;
    }
    s.parseable_fraction = static_cast<double>(parsed) / static_cast<double>(trees.size());
    s.bridged_fraction = static_cast<double>(bridged) / static_cast<double>(trees.size());
    s.tree_fraction = s.parseable_fraction + s.bridged_fraction;
    std::map<std::string, size_t> reasons;
    for (const BridgeOutcome& o : outcomes)
        if (o.status == BridgeStatus::Failed)
            ++reasons[o.failure_reason];
    s.failure_breakdown.assign(reasons.begin(), reasons.end());
    return s;
}

}  // namespace ptchron
