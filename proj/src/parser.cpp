#include "conftc/parser.hpp"

#include <cctype>
#include <sstream>

namespace conftc {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(msg + " (line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ")"),
      line(line),
      col(col) {}

namespace {

enum class Tok { Integer, GenA, LBracket, RBracket, LParen, RParen, Comma, At, Plus, Minus, Star, Caret, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token cur_;

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            bump();
        cur_ = {Tok::End, "", line_, col_};
        if (pos_ >= text_.size())
            return;
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur_.kind = Tok::Integer;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                cur_.text += text_[pos_];
                bump();
            }
            return;
        }
        switch (c) {
            case 'A': cur_.kind = Tok::GenA; break;
            case '[': cur_.kind = Tok::LBracket; break;
            case ']': cur_.kind = Tok::RBracket; break;
            case '(': cur_.kind = Tok::LParen; break;
            case ')': cur_.kind = Tok::RParen; break;
            case ',': cur_.kind = Tok::Comma; break;
            case '@': cur_.kind = Tok::At; break;
            case '+': cur_.kind = Tok::Plus; break;
            case '-': cur_.kind = Tok::Minus; break;
            case '*': cur_.kind = Tok::Star; break;
            case '^': cur_.kind = Tok::Caret; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        cur_.text = c;
        bump();
    }
};

const char* tok_name(Tok k) {
    switch (k) {
        case Tok::Integer: return "integer";
        case Tok::GenA: return "'A'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::At: return "'@'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Caret: return "'^'";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Parser {
public:
    explicit Parser(const std::string& text) : lex_(text) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        if (lex_.peek().kind != Tok::End)
            fail("expected '+', '-', or end of input");
        return e;
    }

private:
    Lexer lex_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + ", got " + tok_name(lex_.peek().kind), lex_.peek().line,
                         lex_.peek().col);
    }

    Token expect(Tok kind, const std::string& what) {
        if (lex_.peek().kind != kind)
            fail("expected " + what);
        return lex_.take();
    }

    int small_int(const Token& t, const std::string& what) const {
        if (t.text.size() > 9)
            throw ParseError(what + " too large", t.line, t.col);
        return std::stoi(t.text);
    }

    ExprPtr parse_expr() {
        auto e = std::make_unique<ExprNode>();
        int sign = 1;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            sign = -1;
        }
        while (true) {
            e->terms.push_back(parse_term(sign));
            if (lex_.peek().kind == Tok::Plus) {
                lex_.take();
                sign = 1;
            } else if (lex_.peek().kind == Tok::Minus) {
                lex_.take();
                sign = -1;
            } else {
                break;
            }
        }
        return e;
    }

    TermNode parse_term(int sign) {
        TermNode t;
        t.sign = sign;
        if (lex_.peek().kind == Tok::Integer) {
            Token c = lex_.take();
            t.coeff = Int(c.text);
            if (lex_.peek().kind != Tok::Star)
                return t;  // bare integer term
            lex_.take();
        }
        t.factors.push_back(parse_factor());
        while (lex_.peek().kind == Tok::Star) {
            lex_.take();
            t.factors.push_back(parse_factor());
        }
        return t;
    }

    FactorNode parse_factor() {
        FactorNode f;
        if (lex_.peek().kind == Tok::GenA) {
            f.base = parse_atom();
            return f;
        }
        if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            f.base = parse_expr();
            expect(Tok::RParen, "')'");
            if (lex_.peek().kind == Tok::Caret) {
                lex_.take();
                Token p = expect(Tok::Integer, "integer power");
                f.power = small_int(p, "power");
            }
            return f;
        }
        fail("expected generator or '('");
    }

    AtomNode parse_atom() {
        Token a = expect(Tok::GenA, "'A'");
        AtomNode atom;
        atom.line = a.line;
        atom.col = a.col;
        expect(Tok::LBracket, "'['");
        atom.i = small_int(expect(Tok::Integer, "index"), "index");
        expect(Tok::Comma, "','");
        atom.j = small_int(expect(Tok::Integer, "index"), "index");
        expect(Tok::RBracket, "']'");
        if (lex_.peek().kind == Tok::At) {
            lex_.take();
            Token s = expect(Tok::Integer, "slot");
            atom.slot = small_int(s, "slot");
            if (atom.slot < 1)
                throw ParseError("slot must be positive", s.line, s.col);
        }
        if (atom.j < 1)
            throw ParseError("generator indices must be positive", atom.line, atom.col);
        if (atom.j >= atom.i)
            throw ParseError("generator A[" + std::to_string(atom.i) + "," +
                                 std::to_string(atom.j) + "] requires j < i",
                             atom.line, atom.col);
        return atom;
    }
};

void check_indices(const RingSpec& spec, const AtomNode& a) {
    if (a.i > spec.points())
        throw ParseError("index " + std::to_string(a.i) + " exceeds point count " +
                             std::to_string(spec.points()),
                         a.line, a.col);
}

}  // namespace

ExprPtr parse(const std::string& text) {
    return Parser(text).run();
}

Element evaluate_ring(const RingSpec& spec, const ExprNode& ast) {
    Element acc(spec);
    for (const TermNode& t : ast.terms) {
        Element prod = Element::one(spec);
        for (const FactorNode& f : t.factors) {
            Element base;
            if (const auto* atom = std::get_if<AtomNode>(&f.base)) {
                if (atom->slot != 0)
                    throw ParseError("slot notation is not allowed in a plain ring expression",
                                     atom->line, atom->col);
                check_indices(spec, *atom);
                base = Element::from_word(spec, {Generator{atom->i, atom->j}});
            } else {
                base = evaluate_ring(spec, *std::get<ExprPtr>(f.base));
            }
            prod = prod * base.pow(f.power);
        }
        Int c = t.coeff.value_or(1);
        if (t.sign < 0)
            c = -c;
        acc = acc + prod * c;
    }
    return acc;
}

TensorElement evaluate_tensor(const RingSpec& spec, int s, const ExprNode& ast) {
    TensorElement acc(spec, s);
    for (const TermNode& t : ast.terms) {
        TensorElement prod = TensorElement::one(spec, s);
        for (const FactorNode& f : t.factors) {
            TensorElement base(spec, s);
            if (const auto* atom = std::get_if<AtomNode>(&f.base)) {
                if (atom->slot == 0)
                    throw ParseError("tensor expression requires a slot on every generator",
                                     atom->line, atom->col);
                if (atom->slot > s)
                    throw ParseError("slot " + std::to_string(atom->slot) +
                                         " exceeds tensor factor count " + std::to_string(s),
                                     atom->line, atom->col);
                check_indices(spec, *atom);
                base = inject(Element::from_word(spec, {Generator{atom->i, atom->j}}),
                              atom->slot, s);
            } else {
                base = evaluate_tensor(spec, s, *std::get<ExprPtr>(f.base));
            }
            prod = prod * base.pow(f.power);
        }
        Int c = t.coeff.value_or(1);
        if (t.sign < 0)
            c = -c;
        acc = acc + prod * c;
    }
    return acc;
}

}  // namespace conftc
