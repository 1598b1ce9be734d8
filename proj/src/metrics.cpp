#include "ptchron/metrics.hpp"

#include <algorithm>
#include <cassert>

namespace ptchron {

namespace {

bool type_in(const std::vector<TypeId>& set, TypeId t)
{
    return std::find(set.begin(), set.end(), t) != set.end();
}

std::optional<double> ratio(size_t num, size_t den)
{
    if (den == 0)
        return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

bool lineage_counted(const SessionAnalysis& a, const Lineage& lineage, CountPolicy policy)
{
    const NodeRef& first = lineage.instances.front();
    const ParseNode& n = a.trees[first.state].nodes[first.node];
    if (policy == CountPolicy::All)
        return true;
    if (n.is_transient)
        return false;
    if (n.parent < 0)
        return false;  // module root
    const GrammarTraits& tr = a.grammar->traits();
    if (type_in(tr.punctuation_types, n.type))
        return false;
    if (type_in(tr.container_types, n.type))
        return false;
    return true;
}

bool lineage_deleted(const SessionAnalysis& a, const Lineage& lineage)
{
    auto final_state = a.final_tree_state();
    if (!final_state)
        return false;
    return lineage.last_state() < *final_state;
}

bool lineage_inside_construct(const SessionAnalysis& a, const Lineage& lineage,
                              const ConstructInfo& construct)
{
    for (const NodeRef& inst : lineage.instances) {
        const Tree& tree = a.trees[inst.state];
        int32_t n = tree.nodes[inst.node].parent;
        while (n >= 0) {
            if (type_in(construct.body_types, tree.nodes[n].type)) {
                int32_t owner = tree.nodes[n].parent;
                if (owner >= 0 && type_in(construct.node_types, tree.nodes[owner].type))
                    return true;
            }
            n = tree.nodes[n].parent;
        }
    }
    return false;
}

DeletionStats node_deletion_rate(const SessionAnalysis& a, CountPolicy policy)
{
    DeletionStats s;
    for (const Lineage& l : a.tracking.lineages()) {
        if (!lineage_counted(a, l, policy))
            continue;
        ++s.num_nodes;
        if (lineage_deleted(a, l))
            ++s.num_deleted;
    }
    s.rate = ratio(s.num_deleted, s.num_nodes);
    return s;
}

DeletionStats node_deletion_rate_scoped(const SessionAnalysis& a, const std::string& construct,
                                        bool inside, CountPolicy policy)
{
    DeletionStats s;
    const GrammarTraits& tr = a.grammar->traits();
    const ConstructInfo* ci = nullptr;
    for (const ConstructInfo& c : tr.constructs)
        if (c.name == construct)
            ci = &c;
    if (!ci)
        return s;
    for (const Lineage& l : a.tracking.lineages()) {
        if (!lineage_counted(a, l, policy))
            continue;
        if (lineage_inside_construct(a, l, *ci) != inside)
            continue;
        ++s.num_nodes;
        if (lineage_deleted(a, l))
            ++s.num_deleted;
    }
    s.rate = ratio(s.num_deleted, s.num_nodes);
    return s;
}

std::vector<ConstructDeletion> deletion_by_construct(const SessionAnalysis& a,
                                                     CountPolicy policy)
{
    std::vector<ConstructDeletion> out;
    for (const ConstructInfo& c : a.grammar->traits().constructs) {
        ConstructDeletion cd;
        cd.construct = c.name;
        cd.inside = node_deletion_rate_scoped(a, c.name, true, policy);
        cd.outside = node_deletion_rate_scoped(a, c.name, false, policy);
        out.push_back(std::move(cd));
    }
    return out;
}

std::vector<LifetimeRecord> node_lifetimes(const SessionAnalysis& a)
{
    size_t states_with_trees = 0;
    for (const Tree& t : a.trees)
        if (t.exists())
            ++states_with_trees;
    std::vector<LifetimeRecord> out;
    if (states_with_trees == 0)
        return out;
    out.reserve(a.tracking.lineages().size());
    for (const Lineage& l : a.tracking.lineages()) {
        LifetimeRecord r;
        r.lineage_id = l.id;
        r.first_state = l.first_state();
        r.last_state = l.last_state();
        r.states_present = l.instances.size();
        r.lifetime_fraction =
            static_cast<double>(r.states_present) / static_cast<double>(states_with_trees);
        out.push_back(r);
    }
    return out;
}

ContextSwitchStats context_switch_frequency(const SessionAnalysis& a, int threshold)
{
    ContextSwitchStats cs;
    std::optional<std::pair<size_t, int32_t>> prev;  // (state, leaf)

    for (size_t t = 0; t < a.states(); ++t) {
        JumpRecord rec;
        rec.edit_state = t;
        int32_t leaf = edited_leaf(a, t);
        if (leaf < 0) {
            rec.skipped = true;
            cs.jumps.push_back(rec);
            continue;  // whitespace/comment edit: does not become "previous"
        }
        if (!prev) {
            rec.skipped = true;
            cs.jumps.push_back(rec);
            prev = {t, leaf};
            continue;
        }
        // image of the previously edited leaf's lineage in this tree
        uint32_t lid = a.tracking.lineage_id(NodeRef{prev->first,
                                                     static_cast<uint32_t>(prev->second)});
        std::optional<NodeRef> image;
        if (lid != UINT32_MAX)
            image = a.tracking.instance_at(lid, t);
        if (!image) {
            // nearest surviving static ancestor's lineage
            const Tree& ptree = a.trees[prev->first];
            int32_t anc = ptree.nodes[prev->second].parent;
            while (anc >= 0 && !image) {
                uint32_t alid = a.tracking.lineage_id(
                    NodeRef{prev->first, static_cast<uint32_t>(anc)});
                if (alid != UINT32_MAX)
                    image = a.tracking.instance_at(alid, t);
                anc = ptree.nodes[anc].parent;
            }
        }
        if (!image) {
            rec.skipped = true;
            cs.jumps.push_back(rec);
            prev = {t, leaf};
            continue;
        }
        rec.distance = path_length(a.trees[t], leaf, static_cast<int32_t>(image->node));
        cs.jumps.push_back(rec);
        prev = {t, leaf};
    }

    for (const JumpRecord& j : cs.jumps) {
        if (j.skipped)
            continue;
        if (j.distance >= 1)
            ++cs.s1_count;
        if (j.distance >= threshold)
            ++cs.s_threshold_count;
    }
    cs.frequency = ratio(cs.s_threshold_count, cs.s1_count);
    return cs;
}

std::vector<TreeSizePoint> tree_size_series(const SessionAnalysis& a)
{
    std::vector<TreeSizePoint> out;
    out.reserve(a.trees.size());
    for (const Tree& t : a.trees) {
        TreeSizePoint p;
        p.state = t.state;
        p.kind = t.kind;
        if (t.exists())
            p.node_count = t.size();
        out.push_back(p);
    }
    return out;
}

CommentRestorationStats comment_restoration_stats(const SessionAnalysis& a)
{
    CommentRestorationStats st;
    st.total_lineages = a.tracking.lineages().size();

    for (const Lineage& l : a.tracking.lineages()) {
        bool commented = false;
        bool restored = false;
        for (size_t k = 1; k < l.instances.size() && !restored; ++k) {
            const TemporalLink* link = a.tracking.parent_of(l.instances[k]);
            if (link && link->via_comment) {
                commented = true;
                restored = true;
            }
        }
        if (!restored) {
            // never restored: did its characters end up inside a comment?
            const NodeRef& last = l.instances.back();
            const ParseNode& node = a.trees[last.state].nodes[last.node];
            if (!node.range.empty()) {
                uint32_t pos = node.range.lo;
                size_t s = last.state;
                for (size_t q = s + 1; q < a.states(); ++q) {
                    int64_t img = a.chain.map_forward(pos, s, q);
                    if (img < 0)
                        break;  // deleted
                    if (!a.trees[q].exists())
                        continue;
                    if (a.spans[q].in_comment(static_cast<uint32_t>(img)))
                        commented = true;
                    break;
                }
            }
        }
        if (commented) {
            ++st.commented;
            if (restored)
                ++st.restored;
        }
    }
    st.commented_fraction = ratio(st.commented, st.total_lineages);
    st.restored_fraction = ratio(st.restored, st.commented);
    return st;
}

}  // namespace ptchron
