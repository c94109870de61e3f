#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvmc::ltl {

enum class Op {
    True,
    False,
    Atom,
    NegAtom,
    Not,
    And,
    Or,
    Implies,
    Next,
    Finally,
    Globally,
    Until,
    Release,
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable LTL syntax tree node. NegAtom is a positive-form negated atom
/// (only produced by to_nnf, never by the parser, which emits Not(Atom)).
class Formula {
public:
    Op op() const { return op_; }
    const std::string& atom() const { return atom_; }
    const FormulaPtr& lhs() const { return lhs_; }
    const FormulaPtr& rhs() const { return rhs_; }

    bool is_unary() const { return op_ == Op::Not || op_ == Op::Next || op_ == Op::Finally || op_ == Op::Globally; }
    bool is_binary() const {
        return op_ == Op::And || op_ == Op::Or || op_ == Op::Implies || op_ == Op::Until || op_ == Op::Release;
    }

    static FormulaPtr make_true();
    static FormulaPtr make_false();
    static FormulaPtr atom(std::string name);
    static FormulaPtr neg_atom(std::string name);
    static FormulaPtr not_(FormulaPtr f);
    static FormulaPtr and_(FormulaPtr l, FormulaPtr r);
    static FormulaPtr or_(FormulaPtr l, FormulaPtr r);
    static FormulaPtr implies(FormulaPtr l, FormulaPtr r);
    static FormulaPtr next(FormulaPtr f);
    static FormulaPtr finally(FormulaPtr f);
    static FormulaPtr globally(FormulaPtr f);
    static FormulaPtr until(FormulaPtr l, FormulaPtr r);
    static FormulaPtr release(FormulaPtr l, FormulaPtr r);

private:
    Formula(Op op, std::string atom, FormulaPtr lhs, FormulaPtr rhs)
        : op_(op), atom_(std::move(atom)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    Op op_;
    std::string atom_;
    FormulaPtr lhs_;
    FormulaPtr rhs_;
};

/// Structural total order; equal(a,b) iff compare(a,b)==0.
int compare(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaLess {
    bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

/// Canonical text form; parse(to_string(f)) reparses to f for parser-image
/// trees (NegAtom prints as !name and reparses as Not(Atom)).
std::string to_string(const FormulaPtr& f);

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int column, std::vector<std::string> expected_tokens)
        : std::runtime_error(std::move(msg)), line(line), column(column), expected(std::move(expected_tokens)) {}
    int line;
    int column;
    std::vector<std::string> expected;
};

/// Grammar, loosest to tightest: "->" (right-assoc), "|", "&", U/R
/// (right-assoc), unary ! X F G. "p U q & r" is (p U q) & r.
FormulaPtr parse(std::string_view text);

bool is_nnf(const FormulaPtr& f);

/// Negation normal form: no Not/Implies; negation only as NegAtom.
FormulaPtr to_nnf(const FormulaPtr& f);

/// to_nnf(Not(f)).
FormulaPtr negate(const FormulaPtr& f);

constexpr char complement_marker = '~';

/// Name of the complement atom tracking !name.
std::string bar(const std::string& name);
bool is_barred(const std::string& name);

/// Rewrites every NegAtom(p) to Atom(bar(p)). Input must be in NNF.
FormulaPtr complement_close(const FormulaPtr& f);

std::set<std::string> atoms(const FormulaPtr& f);

/// Distinct subformula count.
std::size_t closure_size(const FormulaPtr& f);

/// Subformulas in depth-first post order, deduplicated.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

} // namespace tvmc::ltl
