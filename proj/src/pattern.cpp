#include "taxolex/pattern.hpp"

#include <cctype>
#include <utility>

#include "taxolex/errors.hpp"

namespace taxolex {

namespace {

PatternPtr node(Pattern p) { return std::make_shared<Pattern>(std::move(p)); }

}  // namespace

PatternPtr make_symbol(std::string name, std::string qualifier) {
    Pattern p;
    p.kind = Pattern::Kind::Symbol;
    p.name = std::move(name);
    p.qualifier = std::move(qualifier);
    return node(std::move(p));
}

PatternPtr make_concat(std::vector<PatternPtr> children) {
    if (children.size() == 1) return children.front();
    Pattern p;
    p.kind = Pattern::Kind::Concat;
    p.children = std::move(children);
    return node(std::move(p));
}

PatternPtr make_alt(std::vector<PatternPtr> children) {
    if (children.size() == 1) return children.front();
    Pattern p;
    p.kind = Pattern::Kind::Alt;
    p.children = std::move(children);
    return node(std::move(p));
}

PatternPtr make_star(PatternPtr child) {
    Pattern p;
    p.kind = Pattern::Kind::Star;
    p.children.push_back(std::move(child));
    return node(std::move(p));
}

PatternPtr make_plus(PatternPtr child) {
    Pattern p;
    p.kind = Pattern::Kind::Plus;
    p.children.push_back(std::move(child));
    return node(std::move(p));
}

PatternPtr make_optional(PatternPtr child) {
    Pattern p;
    p.kind = Pattern::Kind::Optional;
    p.children.push_back(std::move(child));
    return node(std::move(p));
}

PatternPtr make_repeat(PatternPtr child, std::uint32_t min, std::uint32_t max) {
    if (min > max) throw ValidationError("repeat bounds out of order: {" +
                                         std::to_string(min) + "," + std::to_string(max) + "}");
    Pattern p;
    p.kind = Pattern::Kind::Repeat;
    p.children.push_back(std::move(child));
    p.min = min;
    p.max = max;
    return node(std::move(p));
}

bool pattern_equal(const Pattern& a, const Pattern& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Pattern::Kind::Symbol:
            return a.name == b.name && a.qualifier == b.qualifier;
        case Pattern::Kind::Repeat:
            if (a.min != b.min || a.max != b.max) return false;
            [[fallthrough]];
        default: {
            if (a.children.size() != b.children.size()) return false;
            for (std::size_t i = 0; i < a.children.size(); ++i) {
                if (!pattern_equal(*a.children[i], *b.children[i])) return false;
            }
            return true;
        }
    }
}

bool nullable(const Pattern& p) {
    switch (p.kind) {
        case Pattern::Kind::Symbol:
            return false;
        case Pattern::Kind::Concat:
            for (const auto& c : p.children) {
                if (!nullable(*c)) return false;
            }
            return true;
        case Pattern::Kind::Alt:
            for (const auto& c : p.children) {
                if (nullable(*c)) return true;
            }
            return false;
        case Pattern::Kind::Star:
        case Pattern::Kind::Optional:
            return true;
        case Pattern::Kind::Plus:
            return nullable(*p.children[0]);
        case Pattern::Kind::Repeat:
            return p.min == 0 || nullable(*p.children[0]);
    }
    return false;
}

bool can_match_nonempty(const Pattern& p) {
    switch (p.kind) {
        case Pattern::Kind::Symbol:
            return true;
        case Pattern::Kind::Concat:
        case Pattern::Kind::Alt:
            for (const auto& c : p.children) {
                if (can_match_nonempty(*c)) return true;
            }
            return false;
        case Pattern::Kind::Star:
        case Pattern::Kind::Plus:
        case Pattern::Kind::Optional:
            return can_match_nonempty(*p.children[0]);
        case Pattern::Kind::Repeat:
            return p.max >= 1 && can_match_nonempty(*p.children[0]);
    }
    return false;
}

namespace {

// L(list[0] ... list[n-1]) minus the empty sequence.
PatternPtr nonempty_concat(const std::vector<PatternPtr>& list, std::size_t from) {
    const PatternPtr& head = list[from];
    if (from + 1 == list.size()) return nonempty(head);

    std::vector<PatternPtr> branches;
    if (can_match_nonempty(*head)) {
        // The head contributes at least one symbol; the tail stays as-is.
        std::vector<PatternPtr> parts;
        parts.push_back(nonempty(head));
        for (std::size_t i = from + 1; i < list.size(); ++i) parts.push_back(list[i]);
        branches.push_back(make_concat(std::move(parts)));
    }
    bool tail_nonempty = false;
    for (std::size_t i = from + 1; i < list.size(); ++i) {
        if (can_match_nonempty(*list[i])) tail_nonempty = true;
    }
    if (nullable(*head) && tail_nonempty) {
        // The head matches nothing; the symbol comes from the tail.
        branches.push_back(nonempty_concat(list, from + 1));
    }
    return make_alt(std::move(branches));
}

}  // namespace

PatternPtr nonempty(const PatternPtr& p) {
    if (!can_match_nonempty(*p)) {
        throw ValidationError("pattern can only match the empty sequence");
    }
    if (!nullable(*p)) return p;
    switch (p->kind) {
        case Pattern::Kind::Symbol:
            return p;  // unreachable: symbols are not nullable
        case Pattern::Kind::Concat:
            return nonempty_concat(p->children, 0);
        case Pattern::Kind::Alt: {
            std::vector<PatternPtr> branches;
            for (const auto& c : p->children) {
                if (can_match_nonempty(*c)) branches.push_back(nonempty(c));
            }
            return make_alt(std::move(branches));
        }
        case Pattern::Kind::Star:
        case Pattern::Kind::Plus:
            // Any non-empty word starts with a non-empty factor of the body.
            return make_concat({nonempty(p->children[0]), make_star(p->children[0])});
        case Pattern::Kind::Optional:
            return nonempty(p->children[0]);
        case Pattern::Kind::Repeat: {
            const PatternPtr& body = p->children[0];
            if (!nullable(*body)) return make_repeat(body, std::max(p->min, 1u), p->max);
            if (p->max == 1) return nonempty(body);
            return make_concat({nonempty(body), make_repeat(body, 0, p->max - 1)});
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
    enum class Kind { Symbol, LParen, RParen, Pipe, Star, Plus, Question, Repeat, End };
    Kind kind = Kind::End;
    std::string name;
    std::string qualifier;
    std::uint32_t min = 0;
    std::uint32_t max = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_separators();
        Token t;
        t.pos = pos_;
        if (pos_ >= text_.size()) {
            t.kind = Token::Kind::End;
            return t;
        }
        char c = text_[pos_];
        switch (c) {
            case '(': ++pos_; t.kind = Token::Kind::LParen; return t;
            case ')': ++pos_; t.kind = Token::Kind::RParen; return t;
            case '|': ++pos_; t.kind = Token::Kind::Pipe; return t;
            case '*': ++pos_; t.kind = Token::Kind::Star; return t;
            case '+': ++pos_; t.kind = Token::Kind::Plus; return t;
            case '?': ++pos_; t.kind = Token::Kind::Question; return t;
            case '{': return lex_repeat();
            default: break;
        }
        if (c >= 'a' && c <= 'z') return lex_symbol();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

private:
    void skip_separators() {
        while (pos_ < text_.size() &&
               (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ',')) {
            ++pos_;
        }
    }

    std::string lex_identifier() {
        std::size_t begin = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
            if (!ok) break;
            ++pos_;
        }
        return text_.substr(begin, pos_ - begin);
    }

    Token lex_symbol() {
        Token t;
        t.pos = pos_;
        t.kind = Token::Kind::Symbol;
        t.name = lex_identifier();
        if (pos_ < text_.size() && text_[pos_] == ':') {
            ++pos_;
            if (pos_ >= text_.size() || text_[pos_] < 'a' || text_[pos_] > 'z') {
                throw ParseError("expected qualifier after ':'", pos_);
            }
            t.qualifier = lex_identifier();
        }
        return t;
    }

    std::uint32_t lex_number() {
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            throw ParseError("expected number in repeat bounds", pos_);
        }
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > 4096) throw ParseError("repeat bound too large", pos_);
            ++pos_;
        }
        return static_cast<std::uint32_t>(v);
    }

    Token lex_repeat() {
        Token t;
        t.pos = pos_;
        t.kind = Token::Kind::Repeat;
        ++pos_;  // '{'
        t.min = lex_number();
        t.max = t.min;
        if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            t.max = lex_number();
        }
        if (pos_ >= text_.size() || text_[pos_] != '}') {
            throw ParseError("expected '}' closing repeat bounds", pos_);
        }
        ++pos_;
        if (t.min > t.max) {
            throw ParseError("repeat bounds out of order", t.pos);
        }
        return t;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, const SymbolChecker& check)
        : lexer_(text), check_(check) {
        advance();
    }

    PatternPtr parse() {
        PatternPtr p = parse_alt();
        expect(Token::Kind::End, "unexpected trailing input");
        return p;
    }

private:
    void advance() { current_ = lexer_.next(); }

    void expect(Token::Kind kind, const char* message) {
        if (current_.kind != kind) throw ParseError(message, current_.pos);
    }

    PatternPtr parse_alt() {
        std::vector<PatternPtr> branches;
        branches.push_back(parse_concat());
        while (current_.kind == Token::Kind::Pipe) {
            advance();
            branches.push_back(parse_concat());
        }
        return make_alt(std::move(branches));
    }

    bool starts_atom() const {
        return current_.kind == Token::Kind::Symbol || current_.kind == Token::Kind::LParen;
    }

    PatternPtr parse_concat() {
        if (!starts_atom()) {
            throw ParseError("expected a symbol or '('", current_.pos);
        }
        std::vector<PatternPtr> parts;
        while (starts_atom()) {
            parts.push_back(parse_repeat());
        }
        return make_concat(std::move(parts));
    }

    PatternPtr parse_repeat() {
        PatternPtr atom = parse_atom();
        switch (current_.kind) {
            case Token::Kind::Star: advance(); return make_star(std::move(atom));
            case Token::Kind::Plus: advance(); return make_plus(std::move(atom));
            case Token::Kind::Question: advance(); return make_optional(std::move(atom));
            case Token::Kind::Repeat: {
                std::uint32_t lo = current_.min, hi = current_.max;
                advance();
                return make_repeat(std::move(atom), lo, hi);
            }
            default:
                return atom;
        }
    }

    PatternPtr parse_atom() {
        if (current_.kind == Token::Kind::LParen) {
            advance();
            PatternPtr inner = parse_alt();
            expect(Token::Kind::RParen, "expected ')'");
            advance();
            return inner;
        }
        expect(Token::Kind::Symbol, "expected a symbol or '('");
        Token t = current_;
        advance();
        if (t.name == kNullTerminal) {
            throw ParseError("the reserved 'null' symbol may not appear in a pattern", t.pos);
        }
        if (check_ && !check_(t.name, t.qualifier)) {
            std::string shown = t.qualifier.empty() ? t.name : t.name + ":" + t.qualifier;
            throw ParseError("unknown symbol '" + shown + "'", t.pos);
        }
        return make_symbol(t.name, t.qualifier);
    }

    Lexer lexer_;
    const SymbolChecker& check_;
    Token current_;
};

}  // namespace

PatternPtr parse_pattern(const std::string& text, const SymbolChecker& check) {
    if (text.empty()) throw ParseError("empty pattern", 0);
    Parser parser(text, check);
    return parser.parse();
}

PatternPtr parse_pattern(const std::string& text, const Taxonomy& alphabet) {
    return parse_pattern(text, [&alphabet](const std::string& name, const std::string& qual) {
        return alphabet.allows(name, qual);
    });
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_node(const Pattern& p, std::string& out, bool parenthesize_group);

void print_group(const Pattern& p, std::string& out) {
    // Operand of a closure operator: always parenthesized.
    out += '(';
    print_node(p, out, false);
    out += ')';
}

void print_node(const Pattern& p, std::string& out, bool parenthesize_group) {
    switch (p.kind) {
        case Pattern::Kind::Symbol:
            out += p.name;
            if (!p.qualifier.empty()) {
                out += ':';
                out += p.qualifier;
            }
            return;
        case Pattern::Kind::Concat: {
            if (parenthesize_group) out += '(';
            bool first = true;
            for (const auto& c : p.children) {
                if (!first) out += ' ';
                first = false;
                // Nested alternations and concatenations keep explicit parens
                // so the printed form reparses to the same tree.
                bool needs = c->kind == Pattern::Kind::Alt || c->kind == Pattern::Kind::Concat;
                print_node(*c, out, needs);
            }
            if (parenthesize_group) out += ')';
            return;
        }
        case Pattern::Kind::Alt: {
            if (parenthesize_group) out += '(';
            bool first = true;
            for (const auto& c : p.children) {
                if (!first) out += " | ";
                first = false;
                print_node(*c, out, c->kind == Pattern::Kind::Alt);
            }
            if (parenthesize_group) out += ')';
            return;
        }
        case Pattern::Kind::Star:
            print_group(*p.children[0], out);
            out += '*';
            return;
        case Pattern::Kind::Plus:
            print_group(*p.children[0], out);
            out += '+';
            return;
        case Pattern::Kind::Optional:
            print_group(*p.children[0], out);
            out += '?';
            return;
        case Pattern::Kind::Repeat:
            print_group(*p.children[0], out);
            out += '{' + std::to_string(p.min) + ',' + std::to_string(p.max) + '}';
            return;
    }
}

}  // namespace

std::string pretty_print(const Pattern& p) {
    std::string out;
    print_node(p, out, false);
    return out;
}

PatternPtr substitute_symbols(
    const PatternPtr& p,
    const std::function<PatternPtr(const std::string&, const std::string&)>& resolve) {
    if (p->kind == Pattern::Kind::Symbol) {
        PatternPtr replacement = resolve(p->name, p->qualifier);
        return replacement ? replacement : p;
    }
    std::vector<PatternPtr> children;
    children.reserve(p->children.size());
    bool changed = false;
    for (const auto& c : p->children) {
        PatternPtr nc = substitute_symbols(c, resolve);
        changed = changed || nc != c;
        children.push_back(std::move(nc));
    }
    if (!changed) return p;
    Pattern copy = *p;
    copy.children = std::move(children);
    return std::make_shared<Pattern>(std::move(copy));
}

}  // namespace taxolex
