#include "tvmc/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace tvmc::ltl {

// Factories are static members, so they can reach the private constructor.
#define TVMC_MAKE(op, a, l, r) FormulaPtr(new Formula(op, a, l, r))

FormulaPtr Formula::make_true() {
    static const FormulaPtr f = TVMC_MAKE(Op::True, "", nullptr, nullptr);
    return f;
}
FormulaPtr Formula::make_false() {
    static const FormulaPtr f = TVMC_MAKE(Op::False, "", nullptr, nullptr);
    return f;
}
FormulaPtr Formula::atom(std::string name) { return TVMC_MAKE(Op::Atom, std::move(name), nullptr, nullptr); }
FormulaPtr Formula::neg_atom(std::string name) { return TVMC_MAKE(Op::NegAtom, std::move(name), nullptr, nullptr); }
FormulaPtr Formula::not_(FormulaPtr f) { return TVMC_MAKE(Op::Not, "", std::move(f), nullptr); }
FormulaPtr Formula::and_(FormulaPtr l, FormulaPtr r) { return TVMC_MAKE(Op::And, "", std::move(l), std::move(r)); }
FormulaPtr Formula::or_(FormulaPtr l, FormulaPtr r) { return TVMC_MAKE(Op::Or, "", std::move(l), std::move(r)); }
FormulaPtr Formula::implies(FormulaPtr l, FormulaPtr r) {
    return TVMC_MAKE(Op::Implies, "", std::move(l), std::move(r));
}
FormulaPtr Formula::next(FormulaPtr f) { return TVMC_MAKE(Op::Next, "", std::move(f), nullptr); }
FormulaPtr Formula::finally(FormulaPtr f) { return TVMC_MAKE(Op::Finally, "", std::move(f), nullptr); }
FormulaPtr Formula::globally(FormulaPtr f) { return TVMC_MAKE(Op::Globally, "", std::move(f), nullptr); }
FormulaPtr Formula::until(FormulaPtr l, FormulaPtr r) { return TVMC_MAKE(Op::Until, "", std::move(l), std::move(r)); }
FormulaPtr Formula::release(FormulaPtr l, FormulaPtr r) {
    return TVMC_MAKE(Op::Release, "", std::move(l), std::move(r));
}

#undef TVMC_MAKE

int compare(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return 0;
    if (!a) return b ? -1 : 0;
    if (!b) return 1;
    if (a->op() != b->op()) return a->op() < b->op() ? -1 : 1;
    if (int c = a->atom().compare(b->atom()); c != 0) return c < 0 ? -1 : 1;
    if (int c = compare(a->lhs(), b->lhs()); c != 0) return c;
    return compare(a->rhs(), b->rhs());
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

namespace {

// Printing precedence: atoms 5, unary 4, U/R 3, & 2, | 1, -> 0.
int precedence(Op op) {
    switch (op) {
        case Op::True:
        case Op::False:
        case Op::Atom: return 5;
        case Op::NegAtom:
        case Op::Not:
        case Op::Next:
        case Op::Finally:
        case Op::Globally: return 4;
        case Op::Until:
        case Op::Release: return 3;
        case Op::And: return 2;
        case Op::Or: return 1;
        case Op::Implies: return 0;
    }
    return 5;
}

void print(const FormulaPtr& f, std::string& out, int min_prec) {
    const int prec = precedence(f->op());
    const bool parens = prec < min_prec;
    if (parens) out += '(';
    switch (f->op()) {
        case Op::True: out += "true"; break;
        case Op::False: out += "false"; break;
        case Op::Atom: out += f->atom(); break;
        case Op::NegAtom:
            out += '!';
            out += f->atom();
            break;
        case Op::Not:
            out += '!';
            print(f->lhs(), out, 4);
            break;
        case Op::Next:
        case Op::Finally:
        case Op::Globally:
            out += f->op() == Op::Next ? 'X' : (f->op() == Op::Finally ? 'F' : 'G');
            out += ' ';
            print(f->lhs(), out, 4);
            break;
        case Op::Until:
        case Op::Release:
            print(f->lhs(), out, 4);
            out += f->op() == Op::Until ? " U " : " R ";
            print(f->rhs(), out, 3); // right-assoc
            break;
        case Op::And:
            print(f->lhs(), out, 2);
            out += " & ";
            print(f->rhs(), out, 3); // left-assoc: parenthesize an And on the right
            break;
        case Op::Or:
            print(f->lhs(), out, 1);
            out += " | ";
            print(f->rhs(), out, 2);
            break;
        case Op::Implies:
            print(f->lhs(), out, 1); // right-assoc
            out += " -> ";
            print(f->rhs(), out, 0);
            break;
    }
    if (parens) out += ')';
}

} // namespace

std::string to_string(const FormulaPtr& f) {
    if (!f) throw std::invalid_argument("to_string: null formula");
    std::string out;
    print(f, out, 0);
    return out;
}

namespace {

enum class Tok { True, False, Ident, Bang, Amp, Pipe, Arrow, Next, Finally, Globally, Until, Release, LParen, RParen, End };

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::True: return "'true'";
        case Tok::False: return "'false'";
        case Tok::Ident: return "atom";
        case Tok::Bang: return "'!'";
        case Tok::Amp: return "'&'";
        case Tok::Pipe: return "'|'";
        case Tok::Arrow: return "'->'";
        case Tok::Next: return "'X'";
        case Tok::Finally: return "'F'";
        case Tok::Globally: return "'G'";
        case Tok::Until: return "'U'";
        case Tok::Release: return "'R'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::End: return "end of input";
    }
    return "?";
}

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        const int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        const char c = text_[pos_];
        if (c == '(') return advance({Tok::LParen, "(", line, col}, 1);
        if (c == ')') return advance({Tok::RParen, ")", line, col}, 1);
        if (c == '!') return advance({Tok::Bang, "!", line, col}, 1);
        if (c == '&') return advance({Tok::Amp, "&", line, col}, 1);
        if (c == '|') return advance({Tok::Pipe, "|", line, col}, 1);
        if (c == '-') {
            if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') return advance({Tok::Arrow, "->", line, col}, 2);
            fail("unknown operator '-'", line, col);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            std::string word(text_.substr(pos_, end - pos_));
            if (end < text_.size() && text_[end] == '~') {
                word += '~';
                ++end;
            }
            const auto len = end - pos_;
            if (word == "true") return advance({Tok::True, word, line, col}, len);
            if (word == "false") return advance({Tok::False, word, line, col}, len);
            if (word == "X") return advance({Tok::Next, word, line, col}, len);
            if (word == "F") return advance({Tok::Finally, word, line, col}, len);
            if (word == "G") return advance({Tok::Globally, word, line, col}, len);
            if (word == "U") return advance({Tok::Until, word, line, col}, len);
            if (word == "R") return advance({Tok::Release, word, line, col}, len);
            return advance({Tok::Ident, word, line, col}, len);
        }
        fail(std::string("unknown operator '") + c + "'", line, col);
        return {};
    }

    [[noreturn]] static void fail(std::string msg, int line, int col, std::vector<std::string> expected = {}) {
        std::ostringstream os;
        os << msg << " at " << line << ":" << col;
        throw ParseError(os.str(), line, col, std::move(expected));
    }

private:
    Token advance(Token t, std::size_t len) {
        pos_ += len;
        col_ += static_cast<int>(len);
        return t;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++col_;
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text), cur_(lexer_.next()) {}

    FormulaPtr run() {
        FormulaPtr f = parse_implies();
        if (cur_.kind != Tok::End) unexpected({"'&'", "'|'", "'->'", "'U'", "'R'", "end of input"});
        return f;
    }

private:
    FormulaPtr parse_implies() {
        FormulaPtr l = parse_or();
        if (cur_.kind == Tok::Arrow) {
            eat();
            return Formula::implies(std::move(l), parse_implies());
        }
        return l;
    }

    FormulaPtr parse_or() {
        FormulaPtr l = parse_and();
        while (cur_.kind == Tok::Pipe) {
            eat();
            l = Formula::or_(std::move(l), parse_and());
        }
        return l;
    }

    FormulaPtr parse_and() {
        FormulaPtr l = parse_until();
        while (cur_.kind == Tok::Amp) {
            eat();
            l = Formula::and_(std::move(l), parse_until());
        }
        return l;
    }

    FormulaPtr parse_until() {
        FormulaPtr l = parse_unary();
        if (cur_.kind == Tok::Until) {
            eat();
            return Formula::until(std::move(l), parse_until());
        }
        if (cur_.kind == Tok::Release) {
            eat();
            return Formula::release(std::move(l), parse_until());
        }
        return l;
    }

    FormulaPtr parse_unary() {
        switch (cur_.kind) {
            case Tok::Bang: eat(); return Formula::not_(parse_unary());
            case Tok::Next: eat(); return Formula::next(parse_unary());
            case Tok::Finally: eat(); return Formula::finally(parse_unary());
            case Tok::Globally: eat(); return Formula::globally(parse_unary());
            default: return parse_primary();
        }
    }

    FormulaPtr parse_primary() {
        switch (cur_.kind) {
            case Tok::True: eat(); return Formula::make_true();
            case Tok::False: eat(); return Formula::make_false();
            case Tok::Ident: {
                std::string name = cur_.text;
                eat();
                return Formula::atom(std::move(name));
            }
            case Tok::LParen: {
                const Token open = cur_;
                eat();
                FormulaPtr f = parse_implies();
                if (cur_.kind != Tok::RParen)
                    Lexer::fail("unbalanced parenthesis opened at " + std::to_string(open.line) + ":" +
                                    std::to_string(open.column) + "; found " + tok_name(cur_.kind),
                                cur_.line, cur_.column, {"')'"});
                eat();
                return f;
            }
            default: unexpected({"'true'", "'false'", "atom", "'!'", "'X'", "'F'", "'G'", "'('"});
        }
        return nullptr;
    }

    [[noreturn]] void unexpected(std::vector<std::string> expected) {
        Lexer::fail(std::string("unexpected ") + tok_name(cur_.kind), cur_.line, cur_.column, std::move(expected));
    }

    void eat() { cur_ = lexer_.next(); }

    Lexer lexer_;
    Token cur_;
};

} // namespace

FormulaPtr parse(std::string_view text) { return Parser(text).run(); }

bool is_nnf(const FormulaPtr& f) {
    if (!f) return false;
    switch (f->op()) {
        case Op::Not:
        case Op::Implies: return false;
        case Op::True:
        case Op::False:
        case Op::Atom:
        case Op::NegAtom: return true;
        default:
            if (f->is_unary()) return is_nnf(f->lhs());
            return is_nnf(f->lhs()) && is_nnf(f->rhs());
    }
}

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool negated) {
    switch (f->op()) {
        case Op::True: return negated ? Formula::make_false() : Formula::make_true();
        case Op::False: return negated ? Formula::make_true() : Formula::make_false();
        case Op::Atom: return negated ? Formula::neg_atom(f->atom()) : f;
        case Op::NegAtom: return negated ? Formula::atom(f->atom()) : f;
        case Op::Not: return nnf(f->lhs(), !negated);
        case Op::Implies:
            // a -> b == !a | b
            return negated ? Formula::and_(nnf(f->lhs(), false), nnf(f->rhs(), true))
                           : Formula::or_(nnf(f->lhs(), true), nnf(f->rhs(), false));
        case Op::And:
            return negated ? Formula::or_(nnf(f->lhs(), true), nnf(f->rhs(), true))
                           : Formula::and_(nnf(f->lhs(), false), nnf(f->rhs(), false));
        case Op::Or:
            return negated ? Formula::and_(nnf(f->lhs(), true), nnf(f->rhs(), true))
                           : Formula::or_(nnf(f->lhs(), false), nnf(f->rhs(), false));
        case Op::Next: return Formula::next(nnf(f->lhs(), negated));
        case Op::Finally: return negated ? Formula::globally(nnf(f->lhs(), true)) : Formula::finally(nnf(f->lhs(), false));
        case Op::Globally: return negated ? Formula::finally(nnf(f->lhs(), true)) : Formula::globally(nnf(f->lhs(), false));
        case Op::Until:
            return negated ? Formula::release(nnf(f->lhs(), true), nnf(f->rhs(), true))
                           : Formula::until(nnf(f->lhs(), false), nnf(f->rhs(), false));
        case Op::Release:
            return negated ? Formula::until(nnf(f->lhs(), true), nnf(f->rhs(), true))
                           : Formula::release(nnf(f->lhs(), false), nnf(f->rhs(), false));
    }
    throw std::logic_error("nnf: unhandled operator");
}

} // namespace

FormulaPtr to_nnf(const FormulaPtr& f) {
    if (!f) throw std::invalid_argument("to_nnf: null formula");
    return nnf(f, false);
}

FormulaPtr negate(const FormulaPtr& f) {
    if (!f) throw std::invalid_argument("negate: null formula");
    return nnf(f, true);
}

std::string bar(const std::string& name) { return name + complement_marker; }

bool is_barred(const std::string& name) { return !name.empty() && name.back() == complement_marker; }

FormulaPtr complement_close(const FormulaPtr& f) {
    if (!f) throw std::invalid_argument("complement_close: null formula");
    switch (f->op()) {
        case Op::Not:
        case Op::Implies:
            throw std::invalid_argument("complement_close: formula must be in negation normal form");
        case Op::True:
        case Op::False:
        case Op::Atom: return f;
        case Op::NegAtom: return Formula::atom(bar(f->atom()));
        default:
            if (f->is_unary()) {
                FormulaPtr l = complement_close(f->lhs());
                switch (f->op()) {
                    case Op::Next: return Formula::next(std::move(l));
                    case Op::Finally: return Formula::finally(std::move(l));
                    default: return Formula::globally(std::move(l));
                }
            }
            {
                FormulaPtr l = complement_close(f->lhs());
                FormulaPtr r = complement_close(f->rhs());
                switch (f->op()) {
                    case Op::And: return Formula::and_(std::move(l), std::move(r));
                    case Op::Or: return Formula::or_(std::move(l), std::move(r));
                    case Op::Until: return Formula::until(std::move(l), std::move(r));
                    default: return Formula::release(std::move(l), std::move(r));
                }
            }
    }
    throw std::logic_error("complement_close: unhandled operator");
}

namespace {

void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
    if (!f) return;
    if (f->op() == Op::Atom || f->op() == Op::NegAtom) out.insert(f->atom());
    collect_atoms(f->lhs(), out);
    collect_atoms(f->rhs(), out);
}

void collect_subformulas(const FormulaPtr& f, std::vector<FormulaPtr>& order,
                         std::set<FormulaPtr, FormulaLess>& seen) {
    if (!f) return;
    collect_subformulas(f->lhs(), order, seen);
    collect_subformulas(f->rhs(), order, seen);
    if (seen.insert(f).second) order.push_back(f);
}

} // namespace

std::set<std::string> atoms(const FormulaPtr& f) {
    std::set<std::string> out;
    collect_atoms(f, out);
    return out;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
    std::vector<FormulaPtr> order;
    std::set<FormulaPtr, FormulaLess> seen;
    collect_subformulas(f, order, seen);
    return order;
}

std::size_t closure_size(const FormulaPtr& f) { return subformulas(f).size(); }

} // namespace tvmc::ltl
