#include "grammar_common.hpp"

#include "ptchron/parse_tree.hpp"

namespace ptchron {

// Reference mini-language: assignments, arithmetic and comparison
// expressions, `if`/`for` with indented suites, `def`, calls, strings,
// `#` comments, `pass`. Small enough that goldens can be verified by hand.
namespace {

class MiniGrammar final : public GrammarAdapter {
public:
    MiniGrammar()
    {
        module_ = labels_.add("module");
        assignment_ = labels_.add("assignment");
        binary_op_ = labels_.add("binary_op");
        paren_expr_ = labels_.add("paren_expr");
        call_ = labels_.add("call");
        arguments_ = labels_.add("arguments");
        parameters_ = labels_.add("parameters");
        if_stmt_ = labels_.add("if_statement");
        for_stmt_ = labels_.add("for_statement");
        def_stmt_ = labels_.add("function_definition");
        suite_ = labels_.add("suite");
        identifier_ = labels_.add("identifier");
        number_ = labels_.add("number");
        string_ = labels_.add("string");
        pass_ = labels_.add("pass");
        for (const char* kw : {"if", "for", "def", "in"})
            labels_.add(kw);
        for (const char* op : {"=", "==", "!=", "<", "<=", ">", ">=", "+", "-", "*", "/",
                               "(", ")", ":", ","})
            labels_.add(op);

        traits_.constructs = {
            {"if", {if_stmt_}, {suite_}},
            {"loop", {for_stmt_}, {suite_}},
            {"function", {def_stmt_}, {suite_}},
            {"call", {call_}, {arguments_}},
        };
        traits_.identifier_types = {identifier_};
        for (const char* p : {"if", "for", "def", "in", "=", "==", "!=", "<", "<=", ">",
                              ">=", "+", "-", "*", "/", "(", ")", ":", ","})
            traits_.punctuation_types.push_back(labels_.get(p));
        traits_.container_types = {module_, suite_, arguments_, parameters_};

        lex_opt_.keywords = {U"if", U"for", U"def", U"in", U"pass"};
    }

    std::string name() const override { return "mini"; }
    const GrammarTraits& traits() const override { return traits_; }
    std::string label(TypeId t) const override { return labels_.name(t); }
    TypeId type_of(const std::string& l) const override { return labels_.get(l); }

    SpanMap scan_spans(const Text& text) const override
    {
        return lex(text, lex_opt_).spans;
    }

    ParseOutcome parse(const Text& text, size_t state) const override;

private:
    friend struct MiniParser;
    LabelTable labels_;
    GrammarTraits traits_;
    LexOptions lex_opt_;
    TypeId module_, assignment_, binary_op_, paren_expr_, call_, arguments_, parameters_,
        if_stmt_, for_stmt_, def_stmt_, suite_, identifier_, number_, string_, pass_;
};

struct MiniParser {
    const MiniGrammar& g;
    Cursor cur;
    TreeBuilder b;

    MiniParser(const MiniGrammar& gr, const std::vector<Token>& toks) : g(gr), cur(toks) {}

    TypeId op_type(const Token& t) const { return g.labels_.get(to_utf8(t.text)); }

    int op_leaf(const Token& t) { return b.leaf(op_type(t), t); }

    int statement()
    {
        if (cur.at_kw(U"pass")) {
            int leaf = b.leaf(g.pass_, cur.take());
            cur.expect(TokKind::Newline);
            return leaf;
        }
        if (cur.at_kw(U"if")) {
            int kw = op_leaf(cur.take());
            int cond = expr();
            int colon = op_leaf(cur.expect_op(U":"));
            int body = suite();
            return b.internal(g.if_stmt_, {kw, cond, colon, body});
        }
        if (cur.at_kw(U"for")) {
            int kw = op_leaf(cur.take());
            int target = b.leaf(g.identifier_, cur.expect(TokKind::Identifier));
            int in_kw = op_leaf(cur.expect_kw(U"in"));
            int iter = expr();
            int colon = op_leaf(cur.expect_op(U":"));
            int body = suite();
            return b.internal(g.for_stmt_, {kw, target, in_kw, iter, colon, body});
        }
        if (cur.at_kw(U"def")) {
            int kw = op_leaf(cur.take());
            int name = b.leaf(g.identifier_, cur.expect(TokKind::Identifier));
            int params = parameters();
            int colon = op_leaf(cur.expect_op(U":"));
            int body = suite();
            return b.internal(g.def_stmt_, {kw, name, params, colon, body});
        }
        if (cur.at(TokKind::Identifier) && cur.peek(1).kind == TokKind::Op
            && cur.peek(1).text == U"=") {
            int target = b.leaf(g.identifier_, cur.take());
            int eq = op_leaf(cur.take());
            int value = expr();
            cur.expect(TokKind::Newline);
            return b.internal(g.assignment_, {target, eq, value});
        }
        int e = expr();
        cur.expect(TokKind::Newline);
        return e;
    }

    int parameters()
    {
        std::vector<int32_t> kids;
        kids.push_back(op_leaf(cur.expect_op(U"(")));
        if (!cur.at_op(U")")) {
            kids.push_back(b.leaf(g.identifier_, cur.expect(TokKind::Identifier)));
            while (cur.at_op(U",")) {
                kids.push_back(op_leaf(cur.take()));
                kids.push_back(b.leaf(g.identifier_, cur.expect(TokKind::Identifier)));
            }
        }
        kids.push_back(op_leaf(cur.expect_op(U")")));
        return b.internal(g.parameters_, std::move(kids));
    }

    int suite()
    {
        cur.expect(TokKind::Newline);
        cur.expect(TokKind::Indent);
        std::vector<int32_t> stmts;
        stmts.push_back(statement());
        while (!cur.at(TokKind::Dedent))
            stmts.push_back(statement());
        cur.expect(TokKind::Dedent);
        return b.internal(g.suite_, std::move(stmts));
    }

    bool at_comp_op() const
    {
        return cur.at_op(U"==") || cur.at_op(U"!=") || cur.at_op(U"<") || cur.at_op(U"<=")
               || cur.at_op(U">") || cur.at_op(U">=");
    }

    int expr()
    {
        int left = arith();
        if (at_comp_op()) {
            int op = op_leaf(cur.take());
            int right = arith();
            return b.internal(g.binary_op_, {left, op, right});
        }
        return left;
    }

    int arith()
    {
        int left = term();
        while (cur.at_op(U"+") || cur.at_op(U"-")) {
            int op = op_leaf(cur.take());
            int right = term();
            left = b.internal(g.binary_op_, {left, op, right});
        }
        return left;
    }

    int term()
    {
        int left = factor();
        while (cur.at_op(U"*") || cur.at_op(U"/")) {
            int op = op_leaf(cur.take());
            int right = factor();
            left = b.internal(g.binary_op_, {left, op, right});
        }
        return left;
    }

    int factor()
    {
        int node = atom();
        while (cur.at_op(U"(")) {
            std::vector<int32_t> args;
            args.push_back(op_leaf(cur.take()));
            if (!cur.at_op(U")")) {
                args.push_back(expr());
                while (cur.at_op(U",")) {
                    args.push_back(op_leaf(cur.take()));
                    args.push_back(expr());
                }
            }
            args.push_back(op_leaf(cur.expect_op(U")")));
            int arguments = b.internal(g.arguments_, std::move(args));
            node = b.internal(g.call_, {node, arguments});
        }
        return node;
    }

    int atom()
    {
        if (cur.at(TokKind::Identifier))
            return b.leaf(g.identifier_, cur.take());
        if (cur.at(TokKind::Number))
            return b.leaf(g.number_, cur.take());
        if (cur.at(TokKind::String))
            return b.leaf(g.string_, cur.take());
        if (cur.at_op(U"(")) {
            int open = op_leaf(cur.take());
            int inner = expr();
            int close = op_leaf(cur.expect_op(U")"));
            return b.internal(g.paren_expr_, {open, inner, close});
        }
        throw Cursor::Fail{};
    }
};

ParseOutcome MiniGrammar::parse(const Text& text, size_t state) const
{
    LexResult lx = lex(text, lex_opt_);
    if (!lx.ok)
        return {};
    MiniParser p(*this, lx.tokens);
    try {
        std::vector<int32_t> stmts;
        while (!p.cur.at(TokKind::End))
            stmts.push_back(p.statement());
        int root = p.b.internal(module_, std::move(stmts));
        p.b.set_range(root, {0, static_cast<uint32_t>(text.size())});
        ParseOutcome out;
        out.ok = true;
        out.tree = p.b.finish(root, state);
        return out;
    } catch (const Cursor::Fail&) {
        return {};
    }
}

}  // namespace

const GrammarAdapter* mini_grammar()
{
    static MiniGrammar g;
    return &g;
}

}  // namespace ptchron
