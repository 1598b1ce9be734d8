#pragma once

#include "ptchron/lexer.hpp"
#include "ptchron/parse_tree.hpp"

#include <map>
#include <string>
#include <vector>

namespace ptchron {

// Every adapter reserves type id 1 for bridging's transient nodes.
inline constexpr TypeId kInvalidType = 0;
inline constexpr TypeId kTransientType = 1;

/// Label interning shared by the grammar adapters. Ids are assigned in
/// registration order, so they are stable for a given adapter build.
class LabelTable {
public:
    LabelTable()
    {
        add("invalid");
        add("transient");
    }

    TypeId add(const std::string& label)
    {
        auto it = by_name_.find(label);
        if (it != by_name_.end())
            return it->second;
        TypeId id = static_cast<TypeId>(names_.size());
        names_.push_back(label);
        by_name_[label] = id;
        return id;
    }

    TypeId get(const std::string& label) const
    {
        auto it = by_name_.find(label);
        return it == by_name_.end() ? kInvalidType : it->second;
    }

    const std::string& name(TypeId id) const { return names_[id]; }

private:
    std::vector<std::string> names_;
    std::map<std::string, TypeId> by_name_;
};

/// Accumulates nodes during recursive descent; finish() renumbers them in
/// preorder so node uids are (state, preorder position).
class TreeBuilder {
public:
    int leaf(TypeId type, const Token& tok)
    {
        ParseNode n;
        n.type = type;
        n.range = tok.range;
        n.text = tok.text;
        n.is_leaf = true;
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size() - 1);
    }

    int internal(TypeId type, std::vector<int32_t> children)
    {
        ParseNode n;
        n.type = type;
        if (!children.empty()) {
            n.range.lo = nodes_[children.front()].range.lo;
            n.range.hi = nodes_[children.back()].range.hi;
        }
        n.children = std::move(children);
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size() - 1);
    }

    void set_range(int idx, CharRange r) { nodes_[idx].range = r; }

    Tree finish(int root, size_t state)
    {
        Tree t;
        t.state = state;
        t.kind = TreeKind::Parsed;
        t.nodes.reserve(nodes_.size());
        std::vector<int32_t> remap(nodes_.size(), -1);
        // iterative preorder
        std::vector<std::pair<int32_t, int32_t>> stack;  // (old index, new parent)
        stack.push_back({root, -1});
        while (!stack.empty()) {
            auto [old_idx, new_parent] = stack.back();
            stack.pop_back();
            int32_t new_idx = static_cast<int32_t>(t.nodes.size());
            remap[old_idx] = new_idx;
            ParseNode n = nodes_[old_idx];
            std::vector<int32_t> old_children = std::move(n.children);
            n.children.clear();
            n.parent = new_parent;
            t.nodes.push_back(std::move(n));
            if (new_parent >= 0)
                t.nodes[new_parent].children.push_back(new_idx);
            for (auto it = old_children.rbegin(); it != old_children.rend(); ++it)
                stack.push_back({*it, new_idx});
        }
        // children were pushed reversed, so they pop (and append to the new
        // child lists) left to right; preorder and ordering both hold
        return t;
    }

private:
    std::vector<ParseNode> nodes_;
};

/// Token cursor with throw-on-mismatch helpers; the adapters catch Fail and
/// report the snapshot unparseable.
struct Cursor {
    struct Fail {};

    const std::vector<Token>& toks;
    size_t pos = 0;

    explicit Cursor(const std::vector<Token>& t) : toks(t) {}

    const Token& peek(size_t k = 0) const
    {
        size_t i = pos + k;
        return i < toks.size() ? toks[i] : toks.back();
    }
    bool at(TokKind k) const { return peek().kind == k; }
    bool at_op(const char32_t* s) const
    {
        return peek().kind == TokKind::Op && peek().text == s;
    }
    bool at_kw(const char32_t* s) const
    {
        return peek().kind == TokKind::Keyword && peek().text == s;
    }
    Token take()
    {
        if (pos >= toks.size())
            throw Fail{};
        return toks[pos++];
    }
    Token expect(TokKind k)
    {
        if (!at(k))
            throw Fail{};
        return take();
    }
    Token expect_op(const char32_t* s)
    {
        if (!at_op(s))
            throw Fail{};
        return take();
    }
    Token expect_kw(const char32_t* s)
    {
        if (!at_kw(s))
            throw Fail{};
        return take();
    }
};

}  // namespace ptchron
