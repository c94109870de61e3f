#include "tvmc/product.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace tvmc::product {

std::size_t ProductAutomaton::index_of(Node n) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), n);
    if (it != nodes.end() && *it == n) return static_cast<std::size_t>(it - nodes.begin());
    return npos;
}

std::string ProductAutomaton::node_name(std::size_t index) const {
    const Node n = nodes.at(index);
    return "<" + model.states.at(n.s).id + "," + automaton.states.at(n.q) + ">";
}

namespace {

std::vector<std::set<std::string>> state_label_sets(const pks::Pks& m) {
    std::vector<std::set<std::string>> out(m.states.size());
    for (std::size_t s = 0; s < m.states.size(); ++s) out[s] = pks::true_atoms(m, s);
    return out;
}

// Automaton targets enabled by one label set (used with either the source or
// the target state's label).
std::set<std::size_t> enabled_targets(const automata::BuchiAutomaton& a, std::size_t q,
                                      const std::set<std::string>& label) {
    std::set<std::size_t> out;
    for (const auto& e : a.edges)
        if (e.from == q && e.guard.eval(label)) out.insert(e.to);
    return out;
}

void rebuild_from_node_set(ProductAutomaton& p, const std::set<Node>& node_set,
                           const std::map<Node, bool>& flagged_map,
                           const std::vector<std::set<std::string>>& labels) {
    p.nodes.assign(node_set.begin(), node_set.end());
    p.successors.assign(p.nodes.size(), {});
    p.accepting.assign(p.nodes.size(), false);
    p.flagged.assign(p.nodes.size(), false);
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const Node n = p.nodes[i];
        p.accepting[i] = p.automaton.accepting.count(n.q) > 0;
        auto fl = flagged_map.find(n);
        p.flagged[i] = fl != flagged_map.end() && fl->second;
        for (auto q2 : enabled_targets(p.automaton, n.q, labels[n.s]))
            for (auto s2 : p.model.successors[n.s]) {
                const std::size_t t = p.index_of({s2, q2});
                if (t != ProductAutomaton::npos) p.successors[i].push_back(t);
            }
        std::sort(p.successors[i].begin(), p.successors[i].end());
        p.successors[i].erase(std::unique(p.successors[i].begin(), p.successors[i].end()),
                              p.successors[i].end());
    }
    p.initial_nodes.clear();
    for (auto s0 : p.model.initial) {
        const std::size_t i = p.index_of({s0, p.automaton.initial});
        if (i != ProductAutomaton::npos) p.initial_nodes.push_back(i);
    }
    std::sort(p.initial_nodes.begin(), p.initial_nodes.end());
    p.initial_nodes.erase(std::unique(p.initial_nodes.begin(), p.initial_nodes.end()),
                          p.initial_nodes.end());
}

} // namespace

ProductAutomaton intersect(const pks::Pks& m, const automata::BuchiAutomaton& a) {
    if (!pks::is_complete(m)) throw std::invalid_argument("product requires a complete model");
    for (const auto& e : a.edges)
        for (const auto& lit : e.guard.literals())
            if (!std::binary_search(m.atoms.begin(), m.atoms.end(), lit.atom))
                throw std::invalid_argument("guard references unknown atom '" + lit.atom + "'");

    const auto labels = state_label_sets(m);
    std::set<Node> seen;
    std::deque<Node> queue;
    for (auto s0 : m.initial) {
        const Node n{s0, a.initial};
        if (seen.insert(n).second) queue.push_back(n);
    }
    while (!queue.empty()) {
        const Node n = queue.front();
        queue.pop_front();
        for (auto q2 : enabled_targets(a, n.q, labels[n.s]))
            for (auto s2 : m.successors[n.s]) {
                const Node t{s2, q2};
                if (seen.insert(t).second) queue.push_back(t);
            }
    }

    ProductAutomaton p;
    p.model = m;
    p.automaton = a;
    rebuild_from_node_set(p, seen, {}, labels);
    return p;
}

namespace {

// Search order: model state descending, then automaton state ascending.
std::vector<std::size_t> search_order(const ProductAutomaton& p, std::size_t node) {
    std::vector<std::size_t> succ = p.successors[node];
    std::sort(succ.begin(), succ.end(), [&](std::size_t x, std::size_t y) {
        if (p.nodes[x].s != p.nodes[y].s) return p.nodes[x].s > p.nodes[y].s;
        return p.nodes[x].q < p.nodes[y].q;
    });
    return succ;
}

struct SearchFrame {
    std::size_t node;
    std::vector<std::size_t> succ;
    std::size_t next = 0;
};

} // namespace

std::optional<Lasso> find_accepting_lasso(const ProductAutomaton& p) {
    const std::size_t n = p.nodes.size();
    std::vector<char> blue(n, 0), red(n, 0), on_path(n, 0);
    std::vector<std::size_t> path; // blue stack, as node indices

    for (auto root : p.initial_nodes) {
        if (blue[root]) continue;
        std::vector<SearchFrame> frames;
        frames.push_back({root, search_order(p, root)});
        blue[root] = 1;
        on_path[root] = 1;
        path.push_back(root);
        while (!frames.empty()) {
            SearchFrame& fr = frames.back();
            if (fr.next < fr.succ.size()) {
                const std::size_t t = fr.succ[fr.next++];
                if (!blue[t]) {
                    frames.push_back({t, search_order(p, t)});
                    blue[t] = 1;
                    on_path[t] = 1;
                    path.push_back(t);
                }
                continue;
            }
            const std::size_t seed = fr.node;
            if (p.accepting[seed] && !red[seed]) {
                // Nested search; any hit on the blue path closes a cycle
                // through the accepting seed.
                std::vector<SearchFrame> rframes;
                rframes.push_back({seed, search_order(p, seed)});
                red[seed] = 1;
                std::optional<std::size_t> hit;
                while (!rframes.empty() && !hit) {
                    SearchFrame& rf = rframes.back();
                    if (rf.next >= rf.succ.size()) {
                        rframes.pop_back();
                        continue;
                    }
                    const std::size_t t = rf.succ[rf.next++];
                    if (on_path[t]) {
                        hit = t;
                        break;
                    }
                    if (!red[t]) {
                        red[t] = 1;
                        rframes.push_back({t, search_order(p, t)});
                    }
                }
                if (hit) {
                    const auto at = std::find(path.begin(), path.end(), *hit);
                    Lasso l;
                    l.prefix.assign(path.begin(), at);
                    l.cycle.assign(at, path.end());
                    for (std::size_t i = 1; i < rframes.size(); ++i) l.cycle.push_back(rframes[i].node);
                    if (l.prefix.empty()) { // initial node sits on the cycle
                        l.prefix.push_back(l.cycle.front());
                        std::rotate(l.cycle.begin(), l.cycle.begin() + 1, l.cycle.end());
                    }
                    return l;
                }
            }
            on_path[seed] = 0;
            path.pop_back();
            frames.pop_back();
        }
    }
    return std::nullopt;
}

namespace {

bool has_edge(const ProductAutomaton& p, std::size_t from, std::size_t to) {
    return std::binary_search(p.successors[from].begin(), p.successors[from].end(), to);
}

} // namespace

std::optional<std::string> validate_lasso(const ProductAutomaton& p, const Lasso& l) {
    const auto in_range = [&](std::size_t i) { return i < p.nodes.size(); };
    for (auto i : l.prefix)
        if (!in_range(i)) return "prefix node index out of range";
    for (auto i : l.cycle)
        if (!in_range(i)) return "cycle node index out of range";
    for (auto i : l.prefix)
        if (p.flagged[i]) return "prefix visits a materialized node";
    for (auto i : l.cycle)
        if (p.flagged[i]) return "cycle visits a materialized node";
    if (l.prefix.empty()) return "prefix is empty";
    if (l.cycle.empty()) return "cycle is empty";
    if (!std::binary_search(p.initial_nodes.begin(), p.initial_nodes.end(), l.prefix.front()))
        return "prefix does not start at an initial node";
    for (std::size_t i = 0; i + 1 < l.prefix.size(); ++i)
        if (!has_edge(p, l.prefix[i], l.prefix[i + 1]))
            return "missing edge " + p.node_name(l.prefix[i]) + " -> " + p.node_name(l.prefix[i + 1]);
    if (!has_edge(p, l.prefix.back(), l.cycle.front()))
        return "missing edge " + p.node_name(l.prefix.back()) + " -> " + p.node_name(l.cycle.front());
    for (std::size_t i = 0; i + 1 < l.cycle.size(); ++i)
        if (!has_edge(p, l.cycle[i], l.cycle[i + 1]))
            return "missing edge " + p.node_name(l.cycle[i]) + " -> " + p.node_name(l.cycle[i + 1]);
    if (!has_edge(p, l.cycle.back(), l.cycle.front()))
        return "cycle does not close: missing edge " + p.node_name(l.cycle.back()) + " -> " +
               p.node_name(l.cycle.front());
    if (!std::any_of(l.cycle.begin(), l.cycle.end(), [&](std::size_t i) { return p.accepting[i]; }))
        return "cycle has no accepting node";
    return std::nullopt;
}

std::pair<std::vector<std::string>, std::vector<std::string>> project_lasso(const ProductAutomaton& p,
                                                                            const Lasso& l) {
    std::vector<std::string> stem, cycle;
    for (auto i : l.prefix) stem.push_back(p.model.states[p.nodes[i].s].id);
    for (auto i : l.cycle) cycle.push_back(p.model.states[p.nodes[i].s].id);
    while (!stem.empty() && !cycle.empty() && stem.back() == cycle.back()) {
        stem.pop_back();
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    }
    return {std::move(stem), std::move(cycle)};
}

std::vector<Scc> scc_decomposition(const ProductAutomaton& p) {
    const std::size_t n = p.nodes.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> order(n, unset), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<Scc> out;
    std::size_t counter = 0;

    struct Frame {
        std::size_t v;
        std::size_t next = 0;
    };

    for (std::size_t root = 0; root < n; ++root) {
        if (order[root] != unset) continue;
        std::vector<Frame> frames;
        frames.push_back({root});
        order[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& fr = frames.back();
            const std::size_t v = fr.v;
            if (fr.next < p.successors[v].size()) {
                const std::size_t w = p.successors[v][fr.next++];
                if (order[w] == unset) {
                    frames.push_back({w});
                    order[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], order[w]);
                }
                continue;
            }
            if (low[v] == order[v]) {
                Scc c;
                for (;;) {
                    const std::size_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    c.nodes.push_back(w);
                    if (w == v) break;
                }
                std::sort(c.nodes.begin(), c.nodes.end());
                c.trivial = c.nodes.size() == 1 && !has_edge(p, c.nodes[0], c.nodes[0]);
                c.has_accepting = std::any_of(c.nodes.begin(), c.nodes.end(),
                                              [&](std::size_t i) { return p.accepting[i]; });
                out.push_back(std::move(c));
            }
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
    }
    return out;
}

std::vector<std::size_t> fail_nodes(const ProductAutomaton& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.nodes.size(); ++i)
        if (p.successors[i].empty()) out.push_back(i);
    return out;
}

ProductAutomaton materialize_for_proof(const ProductAutomaton& p) {
    const auto labels = state_label_sets(p.model);

    std::set<Node> base(p.nodes.begin(), p.nodes.end());

    // Nodes the proof may want to cite: reachable when guards are read on
    // the destination state's label.
    std::set<Node> target_seen;
    std::deque<Node> queue;
    for (auto i : p.initial_nodes)
        if (target_seen.insert(p.nodes[i]).second) queue.push_back(p.nodes[i]);
    while (!queue.empty()) {
        const Node n = queue.front();
        queue.pop_front();
        for (auto s2 : p.model.successors[n.s])
            for (auto q2 : enabled_targets(p.automaton, n.q, labels[s2]))
                if (target_seen.insert({s2, q2}).second) queue.push_back({s2, q2});
    }

    std::set<Node> additions;
    for (const auto& n : target_seen)
        if (!base.count(n)) additions.insert(n);

    // Close the additions under real successors so the extended graph is a
    // faithful subgraph of the full product.
    std::deque<Node> work(additions.begin(), additions.end());
    while (!work.empty()) {
        const Node n = work.front();
        work.pop_front();
        for (auto q2 : enabled_targets(p.automaton, n.q, labels[n.s]))
            for (auto s2 : p.model.successors[n.s]) {
                const Node t{s2, q2};
                if (!base.count(t) && additions.insert(t).second) work.push_back(t);
            }
    }

    if (!additions.empty()) {
        // Drop additions that can reach an accepting cycle; a proof could
        // not discharge them.
        ProductAutomaton candidate;
        candidate.model = p.model;
        candidate.automaton = p.automaton;
        std::map<Node, bool> flags;
        for (std::size_t i = 0; i < p.nodes.size(); ++i) flags[p.nodes[i]] = p.flagged[i];
        for (const auto& n : additions) flags[n] = true;
        std::set<Node> all = base;
        all.insert(additions.begin(), additions.end());
        rebuild_from_node_set(candidate, all, flags, labels);

        std::vector<char> bad(candidate.nodes.size(), 0);
        for (const auto& c : scc_decomposition(candidate))
            if (!c.trivial && c.has_accepting)
                for (auto i : c.nodes) bad[i] = 1;
        // Backward closure over "can reach a bad node" (components arrive
        // children-first, so one pass over the reverse topological order
        // with a fixpoint sweep keeps it simple).
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < candidate.nodes.size(); ++i) {
                if (bad[i]) continue;
                for (auto t : candidate.successors[i])
                    if (bad[t]) {
                        bad[i] = 1;
                        changed = true;
                        break;
                    }
            }
        }
        for (std::size_t i = 0; i < candidate.nodes.size(); ++i)
            if (bad[i]) additions.erase(candidate.nodes[i]);
    }

    ProductAutomaton out;
    out.model = p.model;
    out.automaton = p.automaton;
    std::map<Node, bool> flags;
    for (std::size_t i = 0; i < p.nodes.size(); ++i) flags[p.nodes[i]] = p.flagged[i];
    for (const auto& n : additions) flags[n] = true;
    std::set<Node> all = base;
    all.insert(additions.begin(), additions.end());
    rebuild_from_node_set(out, all, flags, labels);
    return out;
}

} // namespace tvmc::product
