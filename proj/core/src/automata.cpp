#include "tvmc/automata.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tvmc::automata {

using ltl::Formula;
using ltl::FormulaLess;
using ltl::FormulaPtr;
using ltl::Op;

Guard Guard::from_literals(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    Guard g;
    g.literals_ = std::move(lits);
    return g;
}

bool Guard::eval(const std::set<std::string>& true_atoms) const {
    for (const auto& lit : literals_)
        if (true_atoms.count(lit.atom) != static_cast<std::size_t>(lit.positive)) return false;
    return true;
}

std::string Guard::to_string() const {
    if (literals_.empty()) return "true";
    std::string out;
    for (const auto& lit : literals_) {
        if (!out.empty()) out += " & ";
        if (!lit.positive) out += '!';
        out += lit.atom;
    }
    return out;
}

namespace {

void guard_literals_of(const FormulaPtr& f, std::vector<Literal>& out) {
    switch (f->op()) {
        case Op::True: return;
        case Op::Atom: out.push_back({f->atom(), true}); return;
        case Op::NegAtom: out.push_back({f->atom(), false}); return;
        case Op::Not:
            if (f->lhs()->op() == Op::Atom) {
                out.push_back({f->lhs()->atom(), false});
                return;
            }
            break;
        case Op::And:
            guard_literals_of(f->lhs(), out);
            guard_literals_of(f->rhs(), out);
            return;
        default: break;
    }
    throw ltl::ParseError("guard must be a conjunction of literals: " + ltl::to_string(f), 1, 1, {});
}

} // namespace

Guard parse_guard(std::string_view text) {
    std::vector<Literal> lits;
    guard_literals_of(ltl::parse(text), lits);
    return Guard::from_literals(std::move(lits));
}

bool guard_eval(const Guard& g, const std::map<std::string, ThreeValue>& label) {
    for (const auto& lit : g.literals()) {
        auto it = label.find(lit.atom);
        if (it == label.end()) throw std::invalid_argument("guard atom '" + lit.atom + "' is not assigned");
        if (it->second == ThreeValue::Unknown)
            throw std::invalid_argument("guard atom '" + lit.atom + "' has an unknown value");
        if ((it->second == ThreeValue::True) != lit.positive) return false;
    }
    return true;
}

std::vector<Edge> BuchiAutomaton::out_edges(std::size_t q) const {
    std::vector<Edge> out;
    for (const auto& e : edges)
        if (e.from == q) out.push_back(e);
    return out;
}

namespace {

using FormulaSet = std::set<FormulaPtr, FormulaLess>;

struct Branch {
    std::set<FormulaPtr, FormulaLess> literals;
    FormulaSet next;
    std::set<std::size_t> postponed; // indices into the eventuality family
};

struct Expander {
    const std::vector<FormulaPtr>& eventualities;
    std::vector<Branch> out;

    std::size_t eventuality_index(const FormulaPtr& f) const {
        for (std::size_t i = 0; i < eventualities.size(); ++i)
            if (ltl::equal(eventualities[i], f)) return i;
        throw std::logic_error("eventuality not registered");
    }

    void run(FormulaSet pending, FormulaSet processed, Branch cur) {
        while (!pending.empty()) {
            FormulaPtr f = *pending.begin();
            pending.erase(pending.begin());
            if (processed.count(f)) continue;
            processed.insert(f);
            switch (f->op()) {
                case Op::True: break;
                case Op::False: return; // dead branch
                case Op::Atom:
                case Op::NegAtom: {
                    const FormulaPtr opposite = f->op() == Op::Atom ? Formula::neg_atom(f->atom())
                                                                    : Formula::atom(f->atom());
                    if (cur.literals.count(opposite)) return; // contradiction
                    cur.literals.insert(f);
                    break;
                }
                case Op::Not:
                case Op::Implies: throw std::invalid_argument("translation input must be in negation normal form");
                case Op::And:
                    pending.insert(f->lhs());
                    pending.insert(f->rhs());
                    break;
                case Op::Or: {
                    FormulaSet left = pending;
                    left.insert(f->lhs());
                    run(std::move(left), processed, cur);
                    pending.insert(f->rhs());
                    break;
                }
                case Op::Next: cur.next.insert(f->lhs()); break;
                case Op::Globally:
                    cur.next.insert(f);
                    pending.insert(f->lhs());
                    break;
                case Op::Finally: {
                    FormulaSet fulfill = pending;
                    fulfill.insert(f->lhs());
                    run(std::move(fulfill), processed, cur);
                    cur.next.insert(f);
                    cur.postponed.insert(eventuality_index(f));
                    break;
                }
                case Op::Until: {
                    FormulaSet fulfill = pending;
                    fulfill.insert(f->rhs());
                    run(std::move(fulfill), processed, cur);
                    pending.insert(f->lhs());
                    cur.next.insert(f);
                    cur.postponed.insert(eventuality_index(f));
                    break;
                }
                case Op::Release: {
                    FormulaSet both = pending;
                    both.insert(f->lhs());
                    both.insert(f->rhs());
                    run(std::move(both), processed, cur);
                    pending.insert(f->rhs());
                    cur.next.insert(f);
                    break;
                }
            }
        }
        out.push_back(std::move(cur));
    }
};

FormulaSet canonical(FormulaSet z) {
    z.erase(Formula::make_true());
    return z;
}

// Element-wise structural order; the default set comparison would fall back
// to shared_ptr addresses.
struct FormulaSetLess {
    bool operator()(const FormulaSet& a, const FormulaSet& b) const {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), FormulaLess{});
    }
};

FormulaPtr conjunction(const FormulaSet& z) {
    if (z.empty()) return Formula::make_true();
    auto it = z.rbegin();
    FormulaPtr acc = *it;
    for (++it; it != z.rend(); ++it) acc = Formula::and_(*it, acc);
    return acc;
}

struct TgbaEdge {
    std::size_t from;
    Guard guard;
    std::size_t to;
    std::set<std::size_t> marks;
};

} // namespace

BuchiAutomaton ltl_to_buchi(const FormulaPtr& f) {
    if (!f) throw std::invalid_argument("ltl_to_buchi: null formula");
    if (!ltl::is_nnf(f)) throw std::invalid_argument("translation input must be in negation normal form");

    // Eventualities in structural order; each owns one acceptance index.
    std::vector<FormulaPtr> eventualities;
    for (const auto& sf : ltl::subformulas(f))
        if (sf->op() == Op::Until || sf->op() == Op::Finally) eventualities.push_back(sf);
    std::sort(eventualities.begin(), eventualities.end(), FormulaLess{});
    const std::size_t k = eventualities.size();

    // Obligation-set tableau, breadth first.
    std::map<FormulaSet, std::size_t, FormulaSetLess> state_index;
    std::vector<FormulaSet> tgba_states;
    std::vector<std::vector<TgbaEdge>> tgba_out;
    std::deque<std::size_t> queue;

    auto intern = [&](FormulaSet z) {
        auto it = state_index.find(z);
        if (it != state_index.end()) return it->second;
        const std::size_t id = tgba_states.size();
        state_index.emplace(z, id);
        tgba_states.push_back(std::move(z));
        tgba_out.emplace_back();
        queue.push_back(id);
        return id;
    };

    intern(canonical(FormulaSet{f}));
    while (!queue.empty()) {
        const std::size_t id = queue.front();
        queue.pop_front();
        Expander ex{eventualities, {}};
        ex.run(tgba_states[id], {}, Branch{});
        for (auto& b : ex.out) {
            std::vector<Literal> lits;
            for (const auto& lit : b.literals)
                lits.push_back({lit->atom(), lit->op() == Op::Atom});
            Guard g = Guard::from_literals(std::move(lits));
            std::set<std::size_t> marks;
            for (std::size_t u = 0; u < k; ++u)
                if (!b.postponed.count(u)) marks.insert(u);
            const std::size_t to = intern(canonical(std::move(b.next)));
            TgbaEdge e{id, std::move(g), to, std::move(marks)};
            const bool dup = std::any_of(tgba_out[id].begin(), tgba_out[id].end(), [&](const TgbaEdge& o) {
                return o.to == e.to && o.guard == e.guard && o.marks == e.marks;
            });
            if (!dup) tgba_out[id].push_back(std::move(e));
        }
    }

    // Degeneralize: one level per eventuality, accepting at level k, reset
    // from k; a step consumes consecutive satisfied indices. k = 0 keeps the
    // state space and accepts everywhere.
    BuchiAutomaton a;
    struct Level {
        std::size_t z;
        std::size_t level;
        auto operator<=>(const Level&) const = default;
    };
    std::map<Level, std::size_t> ba_index;
    std::vector<Level> ba_states;
    std::deque<std::size_t> ba_queue;

    auto intern_ba = [&](Level st) {
        auto it = ba_index.find(st);
        if (it != ba_index.end()) return it->second;
        const std::size_t id = ba_states.size();
        ba_index.emplace(st, id);
        ba_states.push_back(st);
        ba_queue.push_back(id);
        return id;
    };

    intern_ba({0, 0});
    std::vector<Edge> edges;
    while (!ba_queue.empty()) {
        const std::size_t id = ba_queue.front();
        ba_queue.pop_front();
        const Level st = ba_states[id];
        for (const auto& e : tgba_out[st.z]) {
            std::size_t j = 0;
            if (k > 0) {
                j = st.level == k ? 0 : st.level;
                while (j < k && e.marks.count(j)) ++j;
            }
            const std::size_t to = intern_ba({e.to, j});
            edges.push_back({id, e.guard, to});
        }
    }

    a.states.reserve(ba_states.size());
    for (std::size_t i = 0; i < ba_states.size(); ++i) {
        a.states.push_back("q" + std::to_string(i));
        if (k == 0 || ba_states[i].level == k) a.accepting.insert(i);
        const FormulaPtr eta = conjunction(tgba_states[ba_states[i].z]);
        a.eta.push_back(eta);
        a.mu.push_back(ltl::negate(eta));
    }
    a.initial = 0;

    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        if (x.from != y.from) return x.from < y.from;
        if (x.to != y.to) return x.to < y.to;
        return x.guard < y.guard;
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& x, const Edge& y) {
                                return x.from == y.from && x.to == y.to && x.guard == y.guard;
                            }),
                edges.end());
    a.edges = std::move(edges);
    return a;
}

std::vector<std::string> validate(const BuchiAutomaton& a) {
    std::vector<std::string> out;
    if (a.states.empty()) {
        out.push_back("automaton has no states");
        return out;
    }
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        if (a.states[i].empty()) out.push_back("empty state name");
        for (std::size_t j = i + 1; j < a.states.size(); ++j)
            if (a.states[i] == a.states[j]) out.push_back("duplicate state name '" + a.states[i] + "'");
    }
    if (a.initial >= a.states.size()) out.push_back("initial state out of range");
    for (auto q : a.accepting)
        if (q >= a.states.size()) out.push_back("accepting state out of range");
    for (const auto& e : a.edges)
        if (e.from >= a.states.size() || e.to >= a.states.size()) out.push_back("edge endpoint out of range");
    if (a.eta.size() != a.states.size() || a.mu.size() != a.states.size()) {
        out.push_back("annotation arrays do not match the state count");
        return out;
    }
    for (std::size_t q = 0; q < a.states.size(); ++q) {
        if (!a.eta[q] || !a.mu[q]) {
            out.push_back("state '" + a.states[q] + "' misses an annotation");
            continue;
        }
        if (!ltl::is_nnf(a.eta[q]))
            out.push_back("eta of '" + a.states[q] + "' is not in negation normal form");
        else if (!ltl::equal(a.mu[q], ltl::negate(a.eta[q])))
            out.push_back("mu of '" + a.states[q] + "' is not the negation of its eta");
    }
    return out;
}

std::string fingerprint(const BuchiAutomaton& a) {
    std::ostringstream os;
    os << "buchi;states=";
    for (const auto& s : a.states) os << s << ',';
    os << ";initial=" << a.initial << ";accepting=";
    for (auto q : a.accepting) os << q << ',';
    os << ";edges=";
    for (const auto& e : a.edges) os << e.from << '[' << e.guard.to_string() << ']' << e.to << ',';
    os << ";eta=";
    for (const auto& f : a.eta) os << (f ? ltl::to_string(f) : "?") << ',';
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << h;
    return hex.str();
}

} // namespace tvmc::automata
