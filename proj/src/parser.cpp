#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "dioc/core.hpp"
#include "dioc/frontend.hpp"
#include "hash.hpp"

namespace dioc {

namespace {

enum class Tok { Ident, Int, String, Sym, Eof };

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    int line = 1;
    int col = 1;
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    static const char* two[] = {"->", "==", "!=", "<=", ">=", "&&", "||"};
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '$'))
                ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '"') {
            std::string s;
            advance(1);
            while (true) {
                if (i >= src.size()) throw ParseError("unterminated string", t.line, t.col);
                char d = src[i];
                if (d == '"') break;
                if (d == '\\' && i + 1 < src.size()) {
                    char e = src[i + 1];
                    s += e == 'n' ? '\n' : e;
                    advance(2);
                    continue;
                }
                s += d;
                advance(1);
            }
            advance(1);
            t.kind = Tok::String;
            t.text = std::move(s);
        } else {
            t.kind = Tok::Sym;
            for (const char* s : two)
                if (src.substr(i, 2) == s) t.text = s;
            if (t.text.empty()) {
                if (std::string_view(";|{}()@=<>+-*/%!,:.[]").find(c) == std::string_view::npos)
                    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
                t.text = std::string(1, c);
            }
            advance(t.text.size());
        }
        out.push_back(std::move(t));
    }
    Token eof;
    eof.line = line;
    eof.col = col;
    out.push_back(eof);
    return out;
}

class Parser {
public:
    Parser(std::string_view src, bool allow_reserved) : toks_(lex(src)), allow_reserved_(allow_reserved) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::Eof; }
    bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).text == s; }
    bool is_kw(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == s; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string near = t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
        throw ParseError(msg + " near " + near, t.line, t.col);
    }

    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    void expect_sym(const char* s) {
        if (!is_sym(s)) fail(std::string("expected '") + s + "'");
        next();
    }
    bool accept_sym(const char* s) {
        if (!is_sym(s)) return false;
        next();
        return true;
    }
    bool accept_kw(const char* s) {
        if (!is_kw(s)) return false;
        next();
        return true;
    }

    std::string ident(const char* what) {
        if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
        std::string s = next().text;
        if (!allow_reserved_ && s.find('$') != std::string::npos) fail("identifier '" + s + "' uses reserved '$'");
        return s;
    }
    Role role() { return Role(ident("role name")); }

    Index integer() {
        if (peek().kind != Tok::Int) fail("expected number");
        return static_cast<Index>(std::stoul(next().text));
    }

    // ---- expressions ----
    Expr expr() { return binary_level(0); }

    Expr binary_level(int level) {
        if (level > 5) return unary();
        Expr lhs = binary_level(level + 1);
        while (true) {
            std::optional<BinaryOp> op = binop_here(level);
            if (!op) return lhs;
            next();
            lhs = Expr::binary(*op, lhs, binary_level(level + 1));
        }
    }

    std::optional<BinaryOp> binop_here(int level) const {
        const Token& t = peek();
        if (t.kind != Tok::Sym && t.kind != Tok::Ident) return std::nullopt;
        const std::string& s = t.text;
        switch (level) {
            case 0:
                if (s == "or" || s == "||") return BinaryOp::Or;
                break;
            case 1:
                if (s == "and" || s == "&&") return BinaryOp::And;
                break;
            case 2:
                if (t.kind == Tok::Sym && s == "==") return BinaryOp::Eq;
                if (t.kind == Tok::Sym && s == "!=") return BinaryOp::Ne;
                break;
            case 3:
                if (t.kind != Tok::Sym) break;
                if (s == "<") return BinaryOp::Lt;
                if (s == "<=") return BinaryOp::Le;
                if (s == ">") return BinaryOp::Gt;
                if (s == ">=") return BinaryOp::Ge;
                break;
            case 4:
                // `->` is lexed as one symbol, so a bare `-` here is subtraction.
                if (t.kind == Tok::Sym && s == "+") return BinaryOp::Add;
                if (t.kind == Tok::Sym && s == "-") return BinaryOp::Sub;
                break;
            case 5:
                if (t.kind != Tok::Sym) break;
                if (s == "*") return BinaryOp::Mul;
                if (s == "/") return BinaryOp::Div;
                if (s == "%") return BinaryOp::Mod;
                break;
        }
        return std::nullopt;
    }

    Expr unary() {
        if (accept_sym("!") || accept_kw("not")) return Expr::unary(UnaryOp::Not, unary());
        if (accept_sym("-")) {
            Expr e = unary();
            if (e->kind == ExprKind::Literal && e->literal.is_int()) return Expr::literal(Value(-e->literal.as_int()));
            return Expr::unary(UnaryOp::Neg, e);
        }
        return primary();
    }

    std::optional<Value> literal_here() {
        const Token& t = peek();
        if (t.kind == Tok::Int) return Value(static_cast<std::int64_t>(std::stoll(next().text)));
        if (t.kind == Tok::String) return Value(next().text);
        if (t.kind == Tok::Ident) {
            if (t.text == "true") return next(), Value(true);
            if (t.text == "false") return next(), Value(false);
            if (t.text == "null") return next(), Value::null();
            if (t.text == "err") return next(), Value::err();
        }
        if (is_sym("-") && peek(1).kind == Tok::Int) {
            next();
            return Value(-static_cast<std::int64_t>(std::stoll(next().text)));
        }
        return std::nullopt;
    }

    Expr primary() {
        if (auto v = literal_here()) return Expr::literal(*v);
        if (accept_sym("(")) {
            Expr e = expr();
            expect_sym(")");
            return e;
        }
        if (peek().kind == Tok::Ident) {
            std::string name = ident("expression");
            if (accept_sym("(")) {
                std::vector<Expr> args;
                if (!is_sym(")")) {
                    args.push_back(expr());
                    while (accept_sym(",")) args.push_back(expr());
                }
                expect_sym(")");
                return Expr::call(name, args);
            }
            return Expr::var(name);
        }
        fail("expected expression");
    }

    ScopeProps props() {
        ScopeProps out;
        expect_sym("{");
        while (!is_sym("}")) {
            std::string key = ident("property name");
            while (accept_sym(".")) key += "." + ident("property name");
            if (key.rfind("N.", 0) == 0) key = key.substr(2);
            expect_sym("=");
            if (peek().kind != Tok::String) fail("expected string property value");
            out[key] = next().text;
            if (!accept_sym(",")) accept_sym(";");
        }
        expect_sym("}");
        return out;
    }

    // ---- choreographies ----
    DiocProc dioc_block() {
        expect_sym("{");
        DiocProc p = is_sym("}") ? make_skip() : dioc_seq();
        expect_sym("}");
        return p;
    }

    DiocProc dioc_seq() {
        std::vector<DiocProc> items{dioc_par()};
        while (accept_sym(";")) {
            if (is_sym("}") || at_end()) break;
            items.push_back(dioc_par());
        }
        DiocProc acc = items.back();
        for (std::size_t i = items.size() - 1; i-- > 0;) acc = make_seq(items[i], acc);
        return acc;
    }

    DiocProc dioc_par() {
        std::vector<DiocProc> items{dioc_stmt()};
        while (accept_sym("|")) items.push_back(dioc_stmt());
        DiocProc acc = items.back();
        for (std::size_t i = items.size() - 1; i-- > 0;) acc = make_par(items[i], acc);
        return acc;
    }

    DiocProc dioc_stmt() {
        Index idx = 0;
        if (accept_sym("[")) {
            idx = integer();
            if (idx == 0) fail("index must be positive");
            expect_sym("]");
        }
        if (is_sym("{")) {
            if (idx) fail("a block cannot carry an index");
            return dioc_block();
        }
        if (peek().kind == Tok::Int && (peek().text == "1" || peek().text == "0")) {
            if (idx) fail("1 and 0 cannot carry an index");
            return next().text == "1" ? make_skip() : make_end();
        }
        if (accept_kw("if")) {
            Expr b = expr();
            expect_sym("@");
            Role r = role();
            DiocProc t = dioc_block();
            DiocProc e = accept_kw("else") ? dioc_block() : make_skip();
            return make_if(idx, r, b, t, e);
        }
        if (accept_kw("while")) {
            Expr b = expr();
            expect_sym("@");
            Role r = role();
            return make_while(idx, r, b, dioc_block());
        }
        if (is_kw("scope") && is_sym("@", 1)) {
            next();
            next();
            Role r = role();
            DiocProc body = dioc_block();
            ScopeProps p;
            if (accept_kw("prop")) p = props();
            return make_scope(idx, r, body, p);
        }
        if (peek().kind == Tok::Ident && is_sym(":", 1)) {
            std::string op = ident("operation");
            next();
            Role from = role();
            expect_sym("(");
            Expr e = expr();
            expect_sym(")");
            expect_sym("->");
            Role to = role();
            expect_sym("(");
            std::string x = ident("variable");
            expect_sym(")");
            if (from == to) fail("interaction sender and receiver must differ");
            return make_interaction(idx, op, from, e, to, x);
        }
        if (peek().kind == Tok::Ident && is_sym("@", 1)) {
            std::string x = ident("variable");
            next();
            Role r = role();
            expect_sym("=");
            return make_assign(idx, x, r, expr());
        }
        fail("expected choreography statement");
    }

    DiocProgram dioc_program() {
        DiocProgram prog;
        while (true) {
            if (is_kw("include")) {
                int line = peek().line;
                while (!at_end() && peek().line == line) next();
                continue;
            }
            if (is_kw("roles") && peek(1).kind == Tok::Ident) {
                next();
                prog.declared_roles.insert(role());
                while (accept_sym(",")) prog.declared_roles.insert(role());
                accept_sym(";");
                continue;
            }
            break;
        }
        if (accept_kw("aioc")) {
            prog.proc = dioc_block();
        } else {
            prog.proc = at_end() ? make_skip() : dioc_seq();
        }
        if (!at_end()) fail("unexpected trailing input");
        return prog;
    }

    // ---- processes ----
    std::optional<DpocIndex> dpoc_index() {
        if (!accept_sym("[")) return std::nullopt;
        DpocIndex i{integer(), IndexVariant::Plain};
        if (peek().kind == Tok::Ident) {
            std::string v = next().text;
            if (v == "t") i.variant = IndexVariant::True;
            else if (v == "f") i.variant = IndexVariant::False;
            else if (v == "r") i.variant = IndexVariant::Recv;
            else if (v == "c") i.variant = IndexVariant::Close;
            else fail("unknown index variant '" + v + "'");
        }
        expect_sym("]");
        return i;
    }

    OperationName dpoc_op(Index prefix) {
        std::string name = ident("operation");
        if (!accept_sym("*")) return OperationName::user(name, prefix);
        std::string tail = ident("auxiliary operation suffix");
        if (tail.size() < 2 || tail[0] != '_' ||
            !std::all_of(tail.begin() + 1, tail.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail("malformed auxiliary operation");
        AuxKind k;
        if (name == "cnd") k = AuxKind::Cnd;
        else if (name == "wb") k = AuxKind::Wb;
        else if (name == "we") k = AuxKind::We;
        else if (name == "sb") k = AuxKind::Sb;
        else if (name == "se") k = AuxKind::Se;
        else fail("unknown auxiliary operation '" + name + "'");
        OperationName op = OperationName::auxiliary(k, static_cast<Index>(std::stoul(tail.substr(1))));
        op.prefix = prefix ? prefix : op.owner;
        return op;
    }

    DpocProc dpoc_block() {
        expect_sym("{");
        DpocProc p = is_sym("}") ? make_one() : dpoc_seq();
        expect_sym("}");
        return p;
    }

    DpocProc dpoc_seq() {
        std::vector<DpocProc> items{dpoc_par()};
        while (accept_sym(";")) {
            if (is_sym("}") || at_end()) break;
            items.push_back(dpoc_par());
        }
        return dseq_all(items);
    }

    DpocProc dpoc_par() {
        std::vector<DpocProc> items{dpoc_stmt()};
        while (accept_sym("|")) items.push_back(dpoc_stmt());
        return dpar_all(items);
    }

    DpocProc dpoc_stmt() {
        std::optional<DpocIndex> idx = dpoc_index();
        if (is_sym("{")) return dpoc_block();
        if (peek().kind == Tok::Int && (peek().text == "1" || peek().text == "0") && !is_sym(".", 1))
            return next().text == "1" ? make_one() : make_zero();
        DpocIndex ix = idx.value_or(DpocIndex{});
        if (accept_kw("if")) {
            Expr b = expr();
            DpocProc t = dpoc_block();
            DpocProc e = accept_kw("else") ? dpoc_block() : make_one();
            return make_dif(ix, b, t, e);
        }
        if (accept_kw("while")) {
            Expr b = expr();
            return make_dwhile(ix, b, dpoc_block());
        }
        if (is_kw("scope") && is_sym("@", 1)) {
            next();
            next();
            Role lead = role();
            DpocProc body = dpoc_block();
            std::optional<std::vector<Role>> rs;
            if (accept_kw("roles")) {
                rs.emplace();
                expect_sym("{");
                if (!is_sym("}")) {
                    rs->push_back(role());
                    while (accept_sym(",")) rs->push_back(role());
                }
                expect_sym("}");
            }
            ScopeProps p;
            if (accept_kw("prop")) p = props();
            if (rs) return make_scope_coord(ix, lead, body, *rs, p);
            return make_scope_simple(ix, lead, body);
        }
        Index prefix = 0;
        if (peek().kind == Tok::Int && is_sym(".", 1)) {
            prefix = integer();
            next();
        }
        if (peek().kind == Tok::Ident && (prefix || is_sym(":", 1) || (is_sym("*", 1) && is_sym(":", 3)))) {
            OperationName op = dpoc_op(prefix ? prefix : ix.base);
            if (!idx) ix = DpocIndex{op.prefix, IndexVariant::Plain};
            if (!op.prefix) op.prefix = ix.base;
            expect_sym(":");
            if (op.aux == AuxKind::Sb && (is_kw("no") || is_kw("code")) && !is_kw("from", 1)) {
                std::optional<DpocProc> payload;
                if (next().text == "code") payload = dpoc_block();
                if (!accept_kw("to")) fail("expected 'to'");
                return make_send_update(ix, op, payload, role());
            }
            if (peek().kind == Tok::Ident && is_kw("from", 1)) {
                std::string x = ident("variable");
                next();
                return make_recv(ix, op, x, role());
            }
            Expr e = expr();
            if (!accept_kw("to")) fail("expected 'to'");
            return make_send(ix, op, e, role());
        }
        if (peek().kind == Tok::Ident && is_sym("=", 1)) {
            std::string x = ident("variable");
            next();
            return make_dassign(ix, x, expr());
        }
        fail("expected process statement");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool allow_reserved_;
};

void check_indexes(const DiocProc& p) {
    AnnotationReport rep = well_annotated(p);
    if (!rep.ok) throw ParseError(rep.diagnostic, 0, 0);
}

}  // namespace

DiocProc annotate(const DiocProc& p) {
    Index next = max_index(p) + 1;
    return annotate_from(p, next);
}

DiocProgram parse_dioc(std::string_view src) {
    Parser ps(src, false);
    DiocProgram prog = ps.dioc_program();
    prog.proc = annotate(prog.proc);
    check_indexes(prog.proc);
    return prog;
}

UpdateRepo parse_updates(std::string_view src, int repo_id) {
    Parser ps(src, false);
    UpdateRepo repo;
    repo.id = repo_id;
    while (!ps.at_end()) {
        if (!ps.accept_kw("update")) ps.fail("expected 'update'");
        Update u;
        u.name = ps.ident("update name");
        if (repo.find(u.name)) ps.fail("duplicate update name '" + u.name + "'");
        if (ps.accept_kw("target")) u.target = ps.ident("scope name");
        Index next = 10000 * static_cast<Index>(repo.entries.size() + 1);
        u.body = annotate_from(ps.dioc_block(), next);
        check_indexes(u.body);
        u.hash = fnv1a64(pretty(strip_indexes(u.body)));
        repo.entries.push_back(std::move(u));
    }
    return repo;
}

DpocProc parse_dpoc(std::string_view src) {
    Parser ps(src, true);
    DpocProc p = ps.at_end() ? make_one() : ps.dpoc_seq();
    if (!ps.at_end()) ps.fail("unexpected trailing input");
    return p;
}

Network parse_network(std::string_view src) {
    Parser ps(src, true);
    Network net;
    while (!ps.at_end()) {
        if (!ps.accept_kw("role")) ps.fail("expected 'role'");
        RoleProc rp;
        rp.role = ps.role();
        rp.proc = ps.dpoc_block();
        if (ps.accept_kw("state")) {
            ps.expect_sym("{");
            while (!ps.is_sym("}")) {
                std::string x = ps.ident("variable");
                ps.expect_sym("=");
                std::optional<Value> v = ps.literal_here();
                if (!v) ps.fail("expected literal");
                rp.state[x] = *v;
                ps.accept_sym(";");
            }
            ps.expect_sym("}");
        }
        if (find_role(net, rp.role)) ps.fail("duplicate role '" + rp.role.name() + "'");
        net.push_back(std::move(rp));
        std::sort(net.begin(), net.end(), [](const RoleProc& a, const RoleProc& b) { return a.role < b.role; });
    }
    return net;
}

FunctionEnv parse_functions(std::string_view src) {
    Parser ps(src, false);
    FunctionEnv env;
    while (!ps.at_end()) {
        FunctionStub stub;
        stub.name = ps.ident("function name");
        ps.expect_sym("(");
        while (!ps.is_sym(")")) {
            if (ps.is_kw("_")) {
                ps.next();
                stub.patterns.push_back(std::nullopt);
            } else {
                std::optional<Value> v = ps.literal_here();
                if (!v) ps.fail("expected literal or '_'");
                stub.patterns.push_back(*v);
            }
            if (!ps.accept_sym(",")) break;
        }
        ps.expect_sym(")");
        ps.expect_sym("=");
        if (ps.is_kw("seq") && ps.is_sym("(", 1)) {
            ps.next();
            ps.next();
            while (!ps.is_sym(")")) {
                std::optional<Value> v = ps.literal_here();
                if (!v) ps.fail("expected literal");
                stub.results.push_back(*v);
                if (!ps.accept_sym(",")) break;
            }
            ps.expect_sym(")");
            if (stub.results.empty()) ps.fail("seq() needs at least one value");
        } else {
            std::optional<Value> v = ps.literal_here();
            if (!v) ps.fail("expected literal");
            stub.results.push_back(*v);
        }
        ps.accept_sym(";");
        env.add(std::move(stub));
    }
    return env;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

UpdateRepo load_updates(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        for (const auto& e : fs::directory_iterator(path))
            if (e.is_regular_file() && e.path().extension() == ".upd") files.push_back(e.path());
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(path);
    }
    UpdateRepo all;
    for (const auto& f : files) {
        UpdateRepo r = parse_updates(read_file(f));
        for (auto& u : r.entries) {
            if (all.find(u.name)) throw std::runtime_error("duplicate update '" + u.name + "' in " + f.string());
            all.entries.push_back(std::move(u));
        }
    }
    return all;
}

}  // namespace dioc
