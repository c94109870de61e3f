#include "tvmc/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace tvmc::oracle {

namespace {

bool holds_at(const Word& w, std::size_t pos, const std::string& atom) {
    const auto& slot = pos < w.prefix.size() ? w.prefix[pos] : w.period[pos - w.prefix.size()];
    return slot.count(atom) > 0;
}

} // namespace

bool eval_ltl_on_word(const ltl::FormulaPtr& f, const Word& w) {
    if (w.period.empty()) throw std::invalid_argument("word has an empty period");
    for (const auto& atom : ltl::atoms(f))
        if (!w.atoms.count(atom)) throw std::invalid_argument("formula atom outside the word alphabet: " + atom);

    const std::size_t n = w.prefix.size();
    const std::size_t total = n + w.period.size();
    auto succ = [&](std::size_t i) { return i + 1 < total ? i + 1 : n; };

    std::map<ltl::FormulaPtr, std::vector<char>, ltl::FormulaLess> table;
    for (const auto& sub : ltl::subformulas(f)) {
        std::vector<char> val(total, 0);
        auto of = [&](const ltl::FormulaPtr& g, std::size_t i) -> bool { return table.at(g)[i]; };
        switch (sub->op()) {
            case ltl::Op::True:
                std::fill(val.begin(), val.end(), 1);
                break;
            case ltl::Op::False:
                break;
            case ltl::Op::Atom:
                for (std::size_t i = 0; i < total; ++i) val[i] = holds_at(w, i, sub->atom());
                break;
            case ltl::Op::NegAtom:
                for (std::size_t i = 0; i < total; ++i) val[i] = !holds_at(w, i, sub->atom());
                break;
            case ltl::Op::Not:
                for (std::size_t i = 0; i < total; ++i) val[i] = !of(sub->lhs(), i);
                break;
            case ltl::Op::And:
                for (std::size_t i = 0; i < total; ++i) val[i] = of(sub->lhs(), i) && of(sub->rhs(), i);
                break;
            case ltl::Op::Or:
                for (std::size_t i = 0; i < total; ++i) val[i] = of(sub->lhs(), i) || of(sub->rhs(), i);
                break;
            case ltl::Op::Implies:
                for (std::size_t i = 0; i < total; ++i) val[i] = !of(sub->lhs(), i) || of(sub->rhs(), i);
                break;
            case ltl::Op::Next:
                for (std::size_t i = 0; i < total; ++i) val[i] = of(sub->lhs(), succ(i));
                break;
            case ltl::Op::Finally: // least fixpoint, backward sweeps to convergence
            case ltl::Op::Until: {
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (std::size_t i = total; i-- > 0;) {
                        const bool now = sub->op() == ltl::Op::Finally ? of(sub->lhs(), i)
                                                                       : bool(of(sub->rhs(), i));
                        const bool hold = sub->op() == ltl::Op::Finally || of(sub->lhs(), i);
                        const char next = char(now || (hold && val[succ(i)]));
                        if (next != val[i]) {
                            val[i] = next;
                            changed = true;
                        }
                    }
                }
                break;
            }
            case ltl::Op::Globally: // greatest fixpoint, start from all-true
            case ltl::Op::Release: {
                std::fill(val.begin(), val.end(), 1);
                bool changed = true;
                while (changed) {
                    changed = false;
                    for (std::size_t i = total; i-- > 0;) {
                        const bool now = sub->op() == ltl::Op::Globally ? of(sub->lhs(), i)
                                                                        : bool(of(sub->rhs(), i));
                        const bool release = sub->op() == ltl::Op::Globally ? false : bool(of(sub->lhs(), i));
                        const char next = char(now && (release || val[succ(i)]));
                        if (next != val[i]) {
                            val[i] = next;
                            changed = true;
                        }
                    }
                }
                break;
            }
        }
        table.emplace(sub, std::move(val));
    }
    return table.at(f)[0];
}

namespace {

Word word_of_walk(const pks::Pks& m, const std::vector<std::size_t>& path, std::size_t loop) {
    Word w;
    w.atoms.insert(m.atoms.begin(), m.atoms.end());
    for (std::size_t i = 0; i < path.size(); ++i) {
        auto& side = i < loop ? w.prefix : w.period;
        side.push_back(pks::true_atoms(m, path[i]));
    }
    return w;
}

// depth-first enumeration of lasso walks; returns false on the first violation
bool walk_satisfies(const pks::Pks& m, const ltl::FormulaPtr& f, std::vector<std::size_t>& path,
                    std::size_t max_len) {
    const std::size_t last = path.back();
    for (std::size_t j = 0; j < path.size(); ++j)
        if (std::binary_search(m.successors[last].begin(), m.successors[last].end(), path[j]))
            if (!eval_ltl_on_word(f, word_of_walk(m, path, j))) return false;
    if (path.size() < max_len)
        for (auto t : m.successors[last]) {
            path.push_back(t);
            const bool ok = walk_satisfies(m, f, path, max_len);
            path.pop_back();
            if (!ok) return false;
        }
    return true;
}

} // namespace

bool model_satisfies(const pks::Pks& m, const ltl::FormulaPtr& f, std::size_t max_len) {
    if (!pks::is_complete(m)) throw std::invalid_argument("brute-force satisfaction needs a complete model");
    if (m.states.size() > 8) throw std::invalid_argument("model too large for the brute-force oracle");
    for (const auto& atom : ltl::atoms(f))
        if (!std::binary_search(m.atoms.begin(), m.atoms.end(), atom))
            throw std::invalid_argument("formula atom not declared by the model: " + atom);
    if (max_len == 0) max_len = std::min(m.states.size() * (ltl::closure_size(f) + 1), std::size_t{10});

    for (auto s0 : m.initial) {
        std::vector<std::size_t> path{s0};
        if (!walk_satisfies(m, f, path, max_len)) return false;
    }
    return true;
}

bool accepts_word(const automata::BuchiAutomaton& a, const Word& w) {
    if (w.period.empty()) throw std::invalid_argument("word has an empty period");
    pks::Pks m;
    m.atoms.assign(w.atoms.begin(), w.atoms.end());
    const std::size_t n = w.prefix.size();
    const std::size_t total = n + w.period.size();
    for (std::size_t i = 0; i < total; ++i) {
        pks::State st;
        st.id = "w" + std::to_string(i);
        const auto& slot = i < n ? w.prefix[i] : w.period[i - n];
        for (const auto& atom : m.atoms)
            st.labels[atom] = slot.count(atom) ? ThreeValue::True : ThreeValue::False;
        m.states.push_back(std::move(st));
        m.successors.push_back({i + 1 < total ? i + 1 : n});
    }
    m.initial = {0};
    return product::find_accepting_lasso(product::intersect(m, a)).has_value();
}

bool product_nonempty_bruteforce(const product::ProductAutomaton& p) {
    auto bfs = [&](std::size_t from, std::vector<bool>& seen) {
        std::deque<std::size_t> queue{from};
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            for (auto t : p.successors[v]) {
                if (p.flagged[t] || seen[t]) continue;
                seen[t] = true;
                queue.push_back(t);
            }
        }
    };

    std::vector<bool> reach(p.nodes.size(), false);
    for (auto i : p.initial_nodes) {
        reach[i] = true;
        bfs(i, reach);
    }
    for (std::size_t v = 0; v < p.nodes.size(); ++v) {
        if (!reach[v] || p.flagged[v] || !p.accepting[v]) continue;
        std::vector<bool> loop(p.nodes.size(), false);
        bfs(v, loop); // marks nodes reachable in >= 1 step
        if (loop[v]) return true;
    }
    return false;
}

Word lasso_word(const product::ProductAutomaton& p, const product::Lasso& l) {
    Word w;
    w.atoms.insert(p.model.atoms.begin(), p.model.atoms.end());
    auto slot = [&](std::size_t node) {
        const auto s = p.nodes[node].s;
        for (const auto& [atom, v] : p.model.states[s].labels)
            if (v == ThreeValue::Unknown)
                throw std::invalid_argument("lasso word needs complete labels, state " + p.model.states[s].id);
        return pks::true_atoms(p.model, s);
    };
    for (auto i : l.prefix) w.prefix.push_back(slot(i));
    for (auto i : l.cycle) w.period.push_back(slot(i));
    return w;
}

} // namespace tvmc::oracle
