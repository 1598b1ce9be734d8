#include "grammar_common.hpp"

#include "ptchron/parse_tree.hpp"

namespace ptchron {

// Python adapter covering the statement and expression forms that show up
// in introductory coursework. Anything outside the subset parses as
// unparseable and is handled by bridging, same as a mid-edit state.
namespace {

const char* kPyKeywords[] = {
    "if",   "elif",   "else",  "while",  "for",    "in",     "def",    "return",
    "pass", "break",  "continue", "import", "from", "as",    "class",  "not",
    "and",  "or",     "is",    "None",   "True",   "False",  "lambda", "with",
    "try",  "except", "finally", "raise", "assert", "del",   "global", "nonlocal"};

const char* kPyOps[] = {"=",  "==", "!=", "<",  "<=", ">",  ">=", "+",  "-",  "*",
                        "/",  "//", "%",  "**", "(",  ")",  "[",  "]",  "{",  "}",
                        ",",  ":",  ".",  ";",  "@",  "+=", "-=", "*=", "/=", "//=",
                        "%=", "**=", "->"};

class PythonGrammar final : public GrammarAdapter {
public:
    PythonGrammar()
    {
        module_ = labels_.add("module");
        assignment_ = labels_.add("assignment");
        aug_assignment_ = labels_.add("aug_assignment");
        binary_op_ = labels_.add("binary_op");
        bool_op_ = labels_.add("bool_op");
        unary_op_ = labels_.add("unary_op");
        comparison_ = labels_.add("comparison");
        cond_expr_ = labels_.add("conditional_expression");
        lambda_ = labels_.add("lambda");
        call_ = labels_.add("call");
        arguments_ = labels_.add("arguments");
        kwarg_ = labels_.add("keyword_argument");
        star_arg_ = labels_.add("star_argument");
        attribute_ = labels_.add("attribute");
        subscript_ = labels_.add("subscript");
        slice_ = labels_.add("slice");
        paren_expr_ = labels_.add("paren_expr");
        tuple_ = labels_.add("tuple");
        list_ = labels_.add("list");
        dict_ = labels_.add("dict");
        set_ = labels_.add("set");
        pair_ = labels_.add("pair");
        comprehension_ = labels_.add("comprehension");
        comp_for_ = labels_.add("comp_for");
        comp_if_ = labels_.add("comp_if");
        if_stmt_ = labels_.add("if_statement");
        elif_clause_ = labels_.add("elif_clause");
        else_clause_ = labels_.add("else_clause");
        while_stmt_ = labels_.add("while_statement");
        for_stmt_ = labels_.add("for_statement");
        def_stmt_ = labels_.add("function_definition");
        parameters_ = labels_.add("parameters");
        param_default_ = labels_.add("parameter_default");
        star_param_ = labels_.add("star_parameter");
        decorator_ = labels_.add("decorator");
        class_stmt_ = labels_.add("class_definition");
        return_stmt_ = labels_.add("return_statement");
        import_stmt_ = labels_.add("import_statement");
        import_from_ = labels_.add("import_from");
        alias_ = labels_.add("alias");
        dotted_name_ = labels_.add("dotted_name");
        with_stmt_ = labels_.add("with_statement");
        with_item_ = labels_.add("with_item");
        try_stmt_ = labels_.add("try_statement");
        except_clause_ = labels_.add("except_clause");
        finally_clause_ = labels_.add("finally_clause");
        raise_stmt_ = labels_.add("raise_statement");
        assert_stmt_ = labels_.add("assert_statement");
        del_stmt_ = labels_.add("del_statement");
        global_stmt_ = labels_.add("global_statement");
        suite_ = labels_.add("suite");
        identifier_ = labels_.add("identifier");
        number_ = labels_.add("number");
        string_ = labels_.add("string");
        for (const char* kw : kPyKeywords)
            labels_.add(kw);
        for (const char* op : kPyOps)
            labels_.add(op);

        traits_.constructs = {
            {"if", {if_stmt_, elif_clause_, else_clause_}, {suite_}},
            {"loop", {while_stmt_, for_stmt_}, {suite_}},
            {"function", {def_stmt_}, {suite_}},
            {"call", {call_}, {arguments_}},
        };
        traits_.identifier_types = {identifier_};
        for (const char* p :
             {"if", "elif", "else", "while", "for", "in", "def", "return", "import",
              "from", "as", "class", "not", "and", "or", "is", "lambda", "with", "try",
              "except", "finally", "raise", "assert", "del", "global", "nonlocal"})
            traits_.punctuation_types.push_back(labels_.get(p));
        for (const char* p : kPyOps)
            traits_.punctuation_types.push_back(labels_.get(p));
        traits_.container_types = {module_, suite_, arguments_, parameters_};

        for (const char* kw : kPyKeywords)
            lex_opt_.keywords.push_back(from_utf8(kw));
        lex_opt_.triple_strings = true;
        lex_opt_.string_prefixes = true;
    }

    std::string name() const override { return "python"; }
    const GrammarTraits& traits() const override { return traits_; }
    std::string label(TypeId t) const override { return labels_.name(t); }
    TypeId type_of(const std::string& l) const override { return labels_.get(l); }

    SpanMap scan_spans(const Text& text) const override
    {
        return lex(text, lex_opt_).spans;
    }

    ParseOutcome parse(const Text& text, size_t state) const override;

private:
    friend struct PyParser;
    LabelTable labels_;
    GrammarTraits traits_;
    LexOptions lex_opt_;
    TypeId module_, assignment_, aug_assignment_, binary_op_, bool_op_, unary_op_,
        comparison_, cond_expr_, lambda_, call_, arguments_, kwarg_, star_arg_, attribute_,
        subscript_, slice_, paren_expr_, tuple_, list_, dict_, set_, pair_, comprehension_,
        comp_for_, comp_if_, if_stmt_, elif_clause_, else_clause_, while_stmt_, for_stmt_,
        def_stmt_, parameters_, param_default_, star_param_, decorator_, class_stmt_,
        return_stmt_, import_stmt_, import_from_, alias_, dotted_name_, with_stmt_,
        with_item_, try_stmt_, except_clause_, finally_clause_, raise_stmt_, assert_stmt_,
        del_stmt_, global_stmt_, suite_, identifier_, number_, string_;
};

struct PyParser {
    const PythonGrammar& g;
    Cursor cur;
    TreeBuilder b;

    PyParser(const PythonGrammar& gr, const std::vector<Token>& toks) : g(gr), cur(toks) {}

    int tok_leaf(const Token& t)
    {
        TypeId ty = g.labels_.get(to_utf8(t.text));
        if (ty == kInvalidType)
            throw Cursor::Fail{};
        return b.leaf(ty, t);
    }
    int ident_leaf() { return b.leaf(g.identifier_, cur.expect(TokKind::Identifier)); }

    // ---- statements ----

    int statement()
    {
        if (cur.at_kw(U"if"))
            return if_statement();
        if (cur.at_kw(U"while")) {
            int kw = tok_leaf(cur.take());
            int cond = testlist();
            int colon = tok_leaf(cur.expect_op(U":"));
            int body = suite();
            return b.internal(g.while_stmt_, {kw, cond, colon, body});
        }
        if (cur.at_kw(U"for")) {
            int kw = tok_leaf(cur.take());
            int target = testlist(true);
            int in_kw = tok_leaf(cur.expect_kw(U"in"));
            int iter = testlist();
            int colon = tok_leaf(cur.expect_op(U":"));
            int body = suite();
            return b.internal(g.for_stmt_, {kw, target, in_kw, iter, colon, body});
        }
        if (cur.at_kw(U"def") || cur.at_op(U"@"))
            return def_statement();
        if (cur.at_kw(U"class"))
            return class_statement();
        if (cur.at_kw(U"with"))
            return with_statement();
        if (cur.at_kw(U"try"))
            return try_statement();
        return simple_line();
    }

    int if_statement()
    {
        std::vector<int32_t> kids;
        kids.push_back(tok_leaf(cur.expect_kw(U"if")));
        kids.push_back(testlist());
        kids.push_back(tok_leaf(cur.expect_op(U":")));
        kids.push_back(suite());
        while (cur.at_kw(U"elif")) {
            int kw = tok_leaf(cur.take());
            int cond = testlist();
            int colon = tok_leaf(cur.expect_op(U":"));
            int body = suite();
            kids.push_back(b.internal(g.elif_clause_, {kw, cond, colon, body}));
        }
        if (cur.at_kw(U"else")) {
            int kw = tok_leaf(cur.take());
            int colon = tok_leaf(cur.expect_op(U":"));
            int body = suite();
            kids.push_back(b.internal(g.else_clause_, {kw, colon, body}));
        }
        return b.internal(g.if_stmt_, std::move(kids));
    }

    int def_statement()
    {
        std::vector<int32_t> kids;
        while (cur.at_op(U"@")) {
            int at = tok_leaf(cur.take());
            int name = dotted_or_call();
            cur.expect(TokKind::Newline);
            kids.push_back(b.internal(g.decorator_, {at, name}));
        }
        kids.push_back(tok_leaf(cur.expect_kw(U"def")));
        kids.push_back(ident_leaf());
        kids.push_back(parameters());
        if (cur.at_op(U"->")) {  // annotation tolerated, kept as plain children
            kids.push_back(tok_leaf(cur.take()));
            kids.push_back(test());
        }
        kids.push_back(tok_leaf(cur.expect_op(U":")));
        kids.push_back(suite());
        return b.internal(g.def_stmt_, std::move(kids));
    }

    int dotted_or_call()
    {
        int node = ident_leaf();
        while (cur.at_op(U".")) {
            int dot = tok_leaf(cur.take());
            int name = ident_leaf();
            node = b.internal(g.attribute_, {node, dot, name});
        }
        if (cur.at_op(U"("))
            node = b.internal(g.call_, {node, call_arguments()});
        return node;
    }

    int parameters()
    {
        std::vector<int32_t> kids;
        kids.push_back(tok_leaf(cur.expect_op(U"(")));
        bool first = true;
        while (!cur.at_op(U")")) {
            if (!first)
                kids.push_back(tok_leaf(cur.expect_op(U",")));
            first = false;
            if (cur.at_op(U")"))  // trailing comma
                break;
            if (cur.at_op(U"*") || cur.at_op(U"**")) {
                int star = tok_leaf(cur.take());
                int name = ident_leaf();
                kids.push_back(b.internal(g.star_param_, {star, name}));
                continue;
            }
            int name = ident_leaf();
            if (cur.at_op(U"=")) {
                int eq = tok_leaf(cur.take());
                int value = test();
                kids.push_back(b.internal(g.param_default_, {name, eq, value}));
            } else {
                kids.push_back(name);
            }
        }
        kids.push_back(tok_leaf(cur.expect_op(U")")));
        return b.internal(g.parameters_, std::move(kids));
    }

    int class_statement()
    {
        std::vector<int32_t> kids;
        kids.push_back(tok_leaf(cur.expect_kw(U"class")));
        kids.push_back(ident_leaf());
        if (cur.at_op(U"("))
            kids.push_back(call_arguments());
        kids.push_back(tok_leaf(cur.expect_op(U":")));
        kids.push_back(suite());
        return b.internal(g.class_stmt_, std::move(kids));
    }

    int with_statement()
    {
        std::vector<int32_t> kids;
        kids.push_back(tok_leaf(cur.expect_kw(U"with")));
        while (true) {
            int e = test();
            if (cur.at_kw(U"as")) {
                int as_kw = tok_leaf(cur.take());
                int target = primary();
                e = b.internal(g.with_item_, {e, as_kw, target});
            }
            kids.push_back(e);
            if (!cur.at_op(U","))
                break;
            kids.push_back(tok_leaf(cur.take()));
        }
        kids.push_back(tok_leaf(cur.expect_op(U":")));
        kids.push_back(suite());
        return b.internal(g.with_stmt_, std::move(kids));
    }

    int try_statement()
    {
        std::vector<int32_t> kids;
        kids.push_back(tok_leaf(cur.expect_kw(U"try")));
        kids.push_back(tok_leaf(cur.expect_op(U":")));
        kids.push_back(suite());
        bool any_handler = false;
        while (cur.at_kw(U"except")) {
            any_handler = true;
            std::vector<int32_t> ek;
            ek.push_back(tok_leaf(cur.take()));
            if (!cur.at_op(U":")) {
                ek.push_back(test());
                if (cur.at_kw(U"as")) {
                    ek.push_back(tok_leaf(cur.take()));
                    ek.push_back(ident_leaf());
                }
            }
            ek.push_back(tok_leaf(cur.expect_op(U":")));
            ek.push_back(suite());
            kids.push_back(b.internal(g.except_clause_, std::move(ek)));
        }
        if (cur.at_kw(U"else")) {
            int kw = tok_leaf(cur.take());
            int colon = tok_leaf(cur.expect_op(U":"));
            int body = suite();
            kids.push_back(b.internal(g.else_clause_, {kw, colon, body}));
        }
        if (cur.at_kw(U"finally")) {
            int kw = tok_leaf(cur.take());
            int colon = tok_leaf(cur.expect_op(U":"));
            int body = suite();
            kids.push_back(b.internal(g.finally_clause_, {kw, colon, body}));
            any_handler = true;
        }
        if (!any_handler)
            throw Cursor::Fail{};
        return b.internal(g.try_stmt_, std::move(kids));
    }

    /// One or more `;`-separated simple statements terminated by NEWLINE.
    /// A single statement returns it directly; several return each appended
    /// to `extra` with the first returned.
    int simple_line()
    {
        int first = simple_statement();
        while (cur.at_op(U";")) {
            // the `;` leaf rides along as a sibling so its chars stay covered
            pending_.push_back(tok_leaf(cur.take()));
            if (cur.at(TokKind::Newline))
                break;
            pending_.push_back(simple_statement());
        }
        cur.expect(TokKind::Newline);
        return first;
    }

    std::vector<int32_t> pending_;  // extra statements from `;` lines

    int simple_statement()
    {
        if (cur.at_kw(U"pass") || cur.at_kw(U"break") || cur.at_kw(U"continue"))
            return tok_leaf(cur.take());
        if (cur.at_kw(U"return")) {
            int kw = tok_leaf(cur.take());
            if (cur.at(TokKind::Newline) || cur.at_op(U";"))
                return b.internal(g.return_stmt_, {kw});
            int value = testlist();
            return b.internal(g.return_stmt_, {kw, value});
        }
        if (cur.at_kw(U"raise")) {
            int kw = tok_leaf(cur.take());
            if (cur.at(TokKind::Newline) || cur.at_op(U";"))
                return b.internal(g.raise_stmt_, {kw});
            int value = test();
            if (cur.at_kw(U"from")) {
                int from_kw = tok_leaf(cur.take());
                int src = test();
                return b.internal(g.raise_stmt_, {kw, value, from_kw, src});
            }
            return b.internal(g.raise_stmt_, {kw, value});
        }
        if (cur.at_kw(U"assert")) {
            std::vector<int32_t> kids{tok_leaf(cur.take()), test()};
            if (cur.at_op(U",")) {
                kids.push_back(tok_leaf(cur.take()));
                kids.push_back(test());
            }
            return b.internal(g.assert_stmt_, std::move(kids));
        }
        if (cur.at_kw(U"del")) {
            std::vector<int32_t> kids{tok_leaf(cur.take()), primary()};
            while (cur.at_op(U",")) {
                kids.push_back(tok_leaf(cur.take()));
                kids.push_back(primary());
            }
            return b.internal(g.del_stmt_, std::move(kids));
        }
        if (cur.at_kw(U"global") || cur.at_kw(U"nonlocal")) {
            std::vector<int32_t> kids{tok_leaf(cur.take()), ident_leaf()};
            while (cur.at_op(U",")) {
                kids.push_back(tok_leaf(cur.take()));
                kids.push_back(ident_leaf());
            }
            return b.internal(g.global_stmt_, std::move(kids));
        }
        if (cur.at_kw(U"import")) {
            std::vector<int32_t> kids{tok_leaf(cur.take()), import_alias()};
            while (cur.at_op(U",")) {
                kids.push_back(tok_leaf(cur.take()));
                kids.push_back(import_alias());
            }
            return b.internal(g.import_stmt_, std::move(kids));
        }
        if (cur.at_kw(U"from")) {
            std::vector<int32_t> kids{tok_leaf(cur.take()), dotted_name()};
            kids.push_back(tok_leaf(cur.expect_kw(U"import")));
            if (cur.at_op(U"*")) {
                kids.push_back(tok_leaf(cur.take()));
            } else {
                kids.push_back(import_alias());
                while (cur.at_op(U",")) {
                    kids.push_back(tok_leaf(cur.take()));
                    kids.push_back(import_alias());
                }
            }
            return b.internal(g.import_from_, std::move(kids));
        }
        return expression_statement();
    }

    int import_alias()
    {
        int name = dotted_name();
        if (cur.at_kw(U"as")) {
            int as_kw = tok_leaf(cur.take());
            int alias = ident_leaf();
            return b.internal(g.alias_, {name, as_kw, alias});
        }
        return name;
    }

    int dotted_name()
    {
        int node = ident_leaf();
        while (cur.at_op(U".")) {
            int dot = tok_leaf(cur.take());
            int name = ident_leaf();
            node = b.internal(g.dotted_name_, {node, dot, name});
        }
        return node;
    }

    bool at_aug_op() const
    {
        return cur.at_op(U"+=") || cur.at_op(U"-=") || cur.at_op(U"*=") || cur.at_op(U"/=")
               || cur.at_op(U"//=") || cur.at_op(U"%=") || cur.at_op(U"**=");
    }

    int expression_statement()
    {
        int first = testlist();
        if (at_aug_op()) {
            int op = tok_leaf(cur.take());
            int value = testlist();
            return b.internal(g.aug_assignment_, {first, op, value});
        }
        if (cur.at_op(U"=")) {
            std::vector<int32_t> kids{first};
            while (cur.at_op(U"=")) {
                kids.push_back(tok_leaf(cur.take()));
                kids.push_back(testlist());
            }
            return b.internal(g.assignment_, std::move(kids));
        }
        return first;
    }

    int suite()
    {
        if (cur.at(TokKind::Newline)) {
            cur.take();
            cur.expect(TokKind::Indent);
            std::vector<int32_t> stmts;
            stmts.push_back(statement());
            flush_pending(stmts);
            while (!cur.at(TokKind::Dedent)) {
                stmts.push_back(statement());
                flush_pending(stmts);
            }
            cur.expect(TokKind::Dedent);
            return b.internal(g.suite_, std::move(stmts));
        }
        // inline suite: if x: return y
        std::vector<int32_t> stmts;
        stmts.push_back(simple_line());
        flush_pending(stmts);
        return b.internal(g.suite_, std::move(stmts));
    }

    void flush_pending(std::vector<int32_t>& out)
    {
        for (int32_t s : pending_)
            out.push_back(s);
        pending_.clear();
    }

    // ---- expressions ----

    /// test (',' test)* — several items become a tuple node.
    int testlist(bool target_mode = false)
    {
        int first = target_mode ? primary() : test();
        if (!cur.at_op(U","))
            return first;
        std::vector<int32_t> kids{first};
        while (cur.at_op(U",")) {
            kids.push_back(tok_leaf(cur.take()));
            if (cur.at(TokKind::Newline) || cur.at_op(U"=") || cur.at_op(U")")
                || cur.at_op(U"]") || cur.at_op(U"}") || cur.at_op(U":") || cur.at(TokKind::End)
                || cur.at_kw(U"in"))
                break;  // trailing comma
            kids.push_back(target_mode ? primary() : test());
        }
        return b.internal(g.tuple_, std::move(kids));
    }

    int test()
    {
        if (cur.at_kw(U"lambda")) {
            std::vector<int32_t> kids{tok_leaf(cur.take())};
            while (!cur.at_op(U":")) {
                kids.push_back(ident_leaf());
                if (cur.at_op(U","))
                    kids.push_back(tok_leaf(cur.take()));
                else
                    break;
            }
            kids.push_back(tok_leaf(cur.expect_op(U":")));
            kids.push_back(test());
            return b.internal(g.lambda_, std::move(kids));
        }
        int e = or_expr();
        if (cur.at_kw(U"if")) {
            int if_kw = tok_leaf(cur.take());
            int cond = or_expr();
            int else_kw = tok_leaf(cur.expect_kw(U"else"));
            int alt = test();
            return b.internal(g.cond_expr_, {e, if_kw, cond, else_kw, alt});
        }
        return e;
    }

    int or_expr()
    {
        int left = and_expr();
        if (!cur.at_kw(U"or"))
            return left;
        std::vector<int32_t> kids{left};
        while (cur.at_kw(U"or")) {
            kids.push_back(tok_leaf(cur.take()));
            kids.push_back(and_expr());
        }
        return b.internal(g.bool_op_, std::move(kids));
    }

    int and_expr()
    {
        int left = not_expr();
        if (!cur.at_kw(U"and"))
            return left;
        std::vector<int32_t> kids{left};
        while (cur.at_kw(U"and")) {
            kids.push_back(tok_leaf(cur.take()));
            kids.push_back(not_expr());
        }
        return b.internal(g.bool_op_, std::move(kids));
    }

    int not_expr()
    {
        if (cur.at_kw(U"not")) {
            int op = tok_leaf(cur.take());
            int operand = not_expr();
            return b.internal(g.unary_op_, {op, operand});
        }
        return comparison();
    }

    bool at_comp_op() const
    {
        return cur.at_op(U"==") || cur.at_op(U"!=") || cur.at_op(U"<") || cur.at_op(U"<=")
               || cur.at_op(U">") || cur.at_op(U">=") || cur.at_kw(U"in") || cur.at_kw(U"is")
               || (cur.at_kw(U"not") && cur.peek(1).kind == TokKind::Keyword
                   && cur.peek(1).text == U"in");
    }

    int comparison()
    {
        int left = arith();
        if (!at_comp_op())
            return left;
        std::vector<int32_t> kids{left};
        while (at_comp_op()) {
            kids.push_back(tok_leaf(cur.take()));  // <, in, is, not
            if (cur.at_kw(U"in") || cur.at_kw(U"not"))
                kids.push_back(tok_leaf(cur.take()));  // `not in` / `is not`
            kids.push_back(arith());
        }
        return b.internal(g.comparison_, std::move(kids));
    }

    int arith()
    {
        int left = term();
        while (cur.at_op(U"+") || cur.at_op(U"-")) {
            int op = tok_leaf(cur.take());
            int right = term();
            left = b.internal(g.binary_op_, {left, op, right});
        }
        return left;
    }

    int term()
    {
        int left = factor();
        while (cur.at_op(U"*") || cur.at_op(U"/") || cur.at_op(U"//") || cur.at_op(U"%")) {
            int op = tok_leaf(cur.take());
            int right = factor();
            left = b.internal(g.binary_op_, {left, op, right});
        }
        return left;
    }

    int factor()
    {
        if (cur.at_op(U"+") || cur.at_op(U"-")) {
            int op = tok_leaf(cur.take());
            int operand = factor();
            return b.internal(g.unary_op_, {op, operand});
        }
        return power();
    }

    int power()
    {
        int base = primary();
        if (cur.at_op(U"**")) {
            int op = tok_leaf(cur.take());
            int exp = factor();
            return b.internal(g.binary_op_, {base, op, exp});
        }
        return base;
    }

    int primary()
    {
        int node = atom();
        while (true) {
            if (cur.at_op(U"(")) {
                node = b.internal(g.call_, {node, call_arguments()});
            } else if (cur.at_op(U".")) {
                int dot = tok_leaf(cur.take());
                int name = ident_leaf();
                node = b.internal(g.attribute_, {node, dot, name});
            } else if (cur.at_op(U"[")) {
                std::vector<int32_t> kids{node, tok_leaf(cur.take())};
                kids.push_back(subscript_item());
                while (cur.at_op(U",")) {
                    kids.push_back(tok_leaf(cur.take()));
                    kids.push_back(subscript_item());
                }
                kids.push_back(tok_leaf(cur.expect_op(U"]")));
                node = b.internal(g.subscript_, std::move(kids));
            } else {
                return node;
            }
        }
    }

    int subscript_item()
    {
        std::vector<int32_t> kids;
        bool sliced = false;
        if (!cur.at_op(U":"))
            kids.push_back(test());
        while (cur.at_op(U":")) {
            sliced = true;
            kids.push_back(tok_leaf(cur.take()));
            if (!cur.at_op(U":") && !cur.at_op(U"]") && !cur.at_op(U","))
                kids.push_back(test());
        }
        if (!sliced)
            return kids.front();
        return b.internal(g.slice_, std::move(kids));
    }

    int call_arguments()
    {
        std::vector<int32_t> kids;
        kids.push_back(tok_leaf(cur.expect_op(U"(")));
        bool first = true;
        while (!cur.at_op(U")")) {
            if (!first)
                kids.push_back(tok_leaf(cur.expect_op(U",")));
            first = false;
            if (cur.at_op(U")"))
                break;
            if (cur.at_op(U"*") || cur.at_op(U"**")) {
                int star = tok_leaf(cur.take());
                int value = test();
                kids.push_back(b.internal(g.star_arg_, {star, value}));
                continue;
            }
            if (cur.at(TokKind::Identifier) && cur.peek(1).kind == TokKind::Op
                && cur.peek(1).text == U"=") {
                int name = ident_leaf();
                int eq = tok_leaf(cur.take());
                int value = test();
                kids.push_back(b.internal(g.kwarg_, {name, eq, value}));
                continue;
            }
            kids.push_back(test());
        }
        kids.push_back(tok_leaf(cur.expect_op(U")")));
        return b.internal(g.arguments_, std::move(kids));
    }

    void comp_clauses(std::vector<int32_t>& kids)
    {
        while (cur.at_kw(U"for") || cur.at_kw(U"if")) {
            if (cur.at_kw(U"for")) {
                int kw = tok_leaf(cur.take());
                int target = testlist(true);
                int in_kw = tok_leaf(cur.expect_kw(U"in"));
                int iter = or_expr();
                kids.push_back(b.internal(g.comp_for_, {kw, target, in_kw, iter}));
            } else {
                int kw = tok_leaf(cur.take());
                int cond = or_expr();
                kids.push_back(b.internal(g.comp_if_, {kw, cond}));
            }
        }
    }

    int atom()
    {
        if (cur.at(TokKind::Identifier))
            return b.leaf(g.identifier_, cur.take());
        if (cur.at(TokKind::Number))
            return b.leaf(g.number_, cur.take());
        if (cur.at(TokKind::String))
            return b.leaf(g.string_, cur.take());
        if (cur.at_kw(U"None") || cur.at_kw(U"True") || cur.at_kw(U"False"))
            return tok_leaf(cur.take());
        if (cur.at_op(U"(")) {
            int open = tok_leaf(cur.take());
            if (cur.at_op(U")")) {
                int close = tok_leaf(cur.take());
                return b.internal(g.tuple_, {open, close});
            }
            int inner = test();
            if (cur.at_kw(U"for")) {
                std::vector<int32_t> kids{open, inner};
                comp_clauses(kids);
                kids.push_back(tok_leaf(cur.expect_op(U")")));
                return b.internal(g.comprehension_, std::move(kids));
            }
            if (cur.at_op(U",")) {
                std::vector<int32_t> kids{open, inner};
                while (cur.at_op(U",")) {
                    kids.push_back(tok_leaf(cur.take()));
                    if (cur.at_op(U")"))
                        break;
                    kids.push_back(test());
                }
                kids.push_back(tok_leaf(cur.expect_op(U")")));
                return b.internal(g.tuple_, std::move(kids));
            }
            int close = tok_leaf(cur.expect_op(U")"));
            return b.internal(g.paren_expr_, {open, inner, close});
        }
        if (cur.at_op(U"[")) {
            int open = tok_leaf(cur.take());
            if (cur.at_op(U"]")) {
                int close = tok_leaf(cur.take());
                return b.internal(g.list_, {open, close});
            }
            int inner = test();
            if (cur.at_kw(U"for")) {
                std::vector<int32_t> kids{open, inner};
                comp_clauses(kids);
                kids.push_back(tok_leaf(cur.expect_op(U"]")));
                return b.internal(g.comprehension_, std::move(kids));
            }
            std::vector<int32_t> kids{open, inner};
            while (cur.at_op(U",")) {
                kids.push_back(tok_leaf(cur.take()));
                if (cur.at_op(U"]"))
                    break;
                kids.push_back(test());
            }
            kids.push_back(tok_leaf(cur.expect_op(U"]")));
            return b.internal(g.list_, std::move(kids));
        }
        if (cur.at_op(U"{")) {
            int open = tok_leaf(cur.take());
            if (cur.at_op(U"}")) {
                int close = tok_leaf(cur.take());
                return b.internal(g.dict_, {open, close});
            }
            int first = test();
            bool is_dict = cur.at_op(U":");
            if (is_dict) {
                int colon = tok_leaf(cur.take());
                int value = test();
                first = b.internal(g.pair_, {first, colon, value});
            }
            if (cur.at_kw(U"for")) {
                std::vector<int32_t> kids{open, first};
                comp_clauses(kids);
                kids.push_back(tok_leaf(cur.expect_op(U"}")));
                return b.internal(g.comprehension_, std::move(kids));
            }
            std::vector<int32_t> kids{open, first};
            while (cur.at_op(U",")) {
                kids.push_back(tok_leaf(cur.take()));
                if (cur.at_op(U"}"))
                    break;
                int item = test();
                if (is_dict) {
                    int colon = tok_leaf(cur.expect_op(U":"));
                    int value = test();
                    item = b.internal(g.pair_, {item, colon, value});
                }
                kids.push_back(item);
            }
            kids.push_back(tok_leaf(cur.expect_op(U"}")));
            return b.internal(is_dict ? g.dict_ : g.set_, std::move(kids));
        }
        throw Cursor::Fail{};
    }
};

ParseOutcome PythonGrammar::parse(const Text& text, size_t state) const
{
    LexResult lx = lex(text, lex_opt_);
    if (!lx.ok)
        return {};
    PyParser p(*this, lx.tokens);
    try {
        std::vector<int32_t> stmts;
        while (!p.cur.at(TokKind::End)) {
            stmts.push_back(p.statement());
            p.flush_pending(stmts);
        }
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

const GrammarAdapter* python_grammar();
const GrammarAdapter* mini_grammar();

const GrammarAdapter* python_grammar()
{
    static PythonGrammar g;
    return &g;
}

const GrammarAdapter* grammar_by_name(const std::string& name)
{
    if (name == "mini")
        return mini_grammar();
    if (name == "python")
        return python_grammar();
    return nullptr;
}

}  // namespace ptchron
