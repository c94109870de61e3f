#include "tvmc/proof.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tvmc/ltl.hpp"

namespace tvmc::proof {

std::string to_string(StepKind k) {
    switch (k) {
        case StepKind::Fail: return "Fail";
        case StepKind::Induction: return "Induction";
        case StepKind::Successors: return "Successors";
        case StepKind::Conclusion: return "Conclusion";
    }
    return "?";
}

namespace {

using product::ProductAutomaton;

std::string judgment_text(const ProductAutomaton& p, std::size_t node) {
    const auto n = p.nodes[node];
    return p.model.states[n.s].id + " |= mu(" + p.automaton.states[n.q] +
           ") = " + ltl::to_string(p.automaton.mu[n.q]);
}

std::string transition_fact(const ProductAutomaton& p, std::size_t model_state) {
    std::string out = p.model.states[model_state].id + " -> {";
    bool first = true;
    for (auto t : p.model.successors[model_state]) {
        if (!first) out += ", ";
        first = false;
        out += p.model.states[t].id;
    }
    return out + "}";
}

std::string dead_end_fact(const ProductAutomaton& p, std::size_t node) {
    return p.node_name(node) + " has no successors";
}

std::string conclusion_text(const std::string& property) { return "M |= " + property; }

} // namespace

Proof generate_proof(const ProductAutomaton& p, const std::string& property_text) {
    if (find_accepting_lasso(p))
        throw std::invalid_argument("cannot generate a proof for a nonempty product");

    Proof pf;
    pf.property = property_text;
    pf.model_id = pks::fingerprint(p.model);
    pf.automaton_id = automata::fingerprint(p.automaton);

    std::set<std::string> established;
    auto conclude = [&](ProofStep step) {
        for (const auto& j : step.conclusions) established.insert(j);
        pf.steps.push_back(std::move(step));
    };

    const auto fails = product::fail_nodes(p);
    const std::set<std::size_t> fail_set(fails.begin(), fails.end());
    for (auto i : fails) {
        ProofStep step;
        step.kind = StepKind::Fail;
        step.component = {p.node_name(i)};
        step.premises = {dead_end_fact(p, i)};
        step.conclusions = {judgment_text(p, i)};
        conclude(std::move(step));
    }

    for (const auto& c : scc_decomposition(p)) {
        if (c.nodes.size() == 1 && fail_set.count(c.nodes[0])) continue;
        if (!c.trivial && c.has_accepting)
            throw std::runtime_error("rule coverage breach: component through " + p.node_name(c.nodes[0]) +
                                     " is accepting and cannot be discharged");
        if (!c.trivial) {
            const std::set<std::size_t> members(c.nodes.begin(), c.nodes.end());
            std::vector<std::size_t> exits;
            for (auto i : c.nodes)
                for (auto t : p.successors[i])
                    if (!members.count(t)) exits.push_back(t);
            std::sort(exits.begin(), exits.end());
            exits.erase(std::unique(exits.begin(), exits.end()), exits.end());

            ProofStep step;
            step.kind = StepKind::Induction;
            for (auto i : c.nodes) step.component.push_back(p.node_name(i));
            for (auto t : exits) {
                step.exit_set.push_back(p.node_name(t));
                const std::string j = judgment_text(p, t);
                if (!established.count(j))
                    throw std::runtime_error("rule coverage breach: exit " + p.node_name(t) +
                                             " is not discharged yet");
                step.premises.push_back(j);
            }
            std::vector<std::size_t> model_states;
            for (auto i : c.nodes) model_states.push_back(p.nodes[i].s);
            std::sort(model_states.begin(), model_states.end());
            model_states.erase(std::unique(model_states.begin(), model_states.end()), model_states.end());
            for (auto s : model_states) step.premises.push_back(transition_fact(p, s));
            for (auto i : c.nodes) step.conclusions.push_back(judgment_text(p, i));
            conclude(std::move(step));
        } else {
            const std::size_t i = c.nodes[0];
            ProofStep step;
            step.kind = StepKind::Successors;
            step.component = {p.node_name(i)};
            step.premises = {transition_fact(p, p.nodes[i].s)};
            for (auto t : p.successors[i]) {
                const std::string j = judgment_text(p, t);
                if (!established.count(j))
                    throw std::runtime_error("rule coverage breach: successor " + p.node_name(t) +
                                             " of " + p.node_name(i) + " is not discharged yet");
                step.premises.push_back(j);
            }
            step.conclusions = {judgment_text(p, i)};
            conclude(std::move(step));
        }
    }

    ProofStep end;
    end.kind = StepKind::Conclusion;
    for (auto i : p.initial_nodes) {
        end.component.push_back(p.node_name(i));
        const std::string j = judgment_text(p, i);
        if (!established.count(j))
            throw std::runtime_error("rule coverage breach: initial node " + p.node_name(i) +
                                     " is not discharged");
        end.premises.push_back(j);
    }
    end.conclusions = {conclusion_text(property_text)};
    pf.steps.push_back(std::move(end));
    return pf;
}

namespace {

struct Checker {
    const ProductAutomaton& p;
    const Proof& pf;
    std::set<std::string> established;

    CheckResult fail(std::size_t step, std::string reason) const { return {false, step, std::move(reason)}; }

    std::optional<std::size_t> parse_node(const std::string& text) const {
        if (text.size() < 4 || text.front() != '<' || text.back() != '>') return std::nullopt;
        const auto comma = text.find(',');
        if (comma == std::string::npos) return std::nullopt;
        const std::string sid = text.substr(1, comma - 1);
        const std::string qid = text.substr(comma + 1, text.size() - comma - 2);
        const auto s = p.model.index_of(sid);
        if (!s) return std::nullopt;
        for (std::size_t q = 0; q < p.automaton.states.size(); ++q)
            if (p.automaton.states[q] == qid) {
                const std::size_t i = p.index_of({*s, q});
                return i == ProductAutomaton::npos ? std::nullopt : std::optional<std::size_t>(i);
            }
        return std::nullopt;
    }

    // premise classification + verification against the product
    std::optional<std::string> verify_premise(const std::string& text) {
        if (text.ends_with(" has no successors")) {
            const auto node = parse_node(text.substr(0, text.size() - 18));
            if (!node) return "dead-end fact names an unknown node: " + text;
            if (!p.successors[*node].empty()) return "node has successors: " + p.node_name(*node);
            return std::nullopt;
        }
        if (const auto arrow = text.find(" -> {"); arrow != std::string::npos) {
            if (text.back() != '}') return "malformed transition fact: " + text;
            const std::string sid = text.substr(0, arrow);
            const auto s = p.model.index_of(sid);
            if (!s) return "transition fact names an unknown state: " + text;
            std::set<std::string> listed;
            std::string body = text.substr(arrow + 5, text.size() - arrow - 6);
            std::size_t pos = 0;
            while (pos < body.size()) {
                auto next = body.find(", ", pos);
                if (next == std::string::npos) next = body.size();
                listed.insert(body.substr(pos, next - pos));
                pos = next + (next < body.size() ? 2 : 0);
            }
            std::set<std::string> actual;
            for (auto t : p.model.successors[*s]) actual.insert(p.model.states[t].id);
            if (listed != actual) return "transition fact does not match the model: " + text;
            return std::nullopt;
        }
        // judgment: must have been concluded earlier
        if (!established.count(text)) return "premise not established: " + text;
        return std::nullopt;
    }

    std::optional<std::string> parse_component(const std::vector<std::string>& names,
                                               std::vector<std::size_t>& out) const {
        for (const auto& name : names) {
            const auto i = parse_node(name);
            if (!i) return "unknown node: " + name;
            out.push_back(*i);
        }
        std::vector<std::size_t> sorted = out;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "duplicate node in component";
        return std::nullopt;
    }

    CheckResult run() {
        if (pf.model_id != pks::fingerprint(p.model))
            return fail(CheckResult::npos, "proof/product mismatch: model fingerprint differs");
        if (pf.automaton_id != automata::fingerprint(p.automaton))
            return fail(CheckResult::npos, "proof/product mismatch: automaton fingerprint differs");
        if (pf.steps.empty()) return fail(CheckResult::npos, "proof has no steps");

        for (std::size_t si = 0; si < pf.steps.size(); ++si) {
            const ProofStep& step = pf.steps[si];
            const bool last = si + 1 == pf.steps.size();
            if ((step.kind == StepKind::Conclusion) != last)
                return fail(si, last ? "last step must be the Conclusion" : "Conclusion before the end");

            for (const auto& premise : step.premises)
                if (auto err = verify_premise(premise)) return fail(si, *err);

            switch (step.kind) {
                case StepKind::Fail: {
                    if (step.component.size() != 1) return fail(si, "Fail step must cover exactly one node");
                    const auto node = parse_node(step.component[0]);
                    if (!node) return fail(si, "unknown node: " + step.component[0]);
                    if (!p.successors[*node].empty())
                        return fail(si, "node has successors: " + p.node_name(*node));
                    if (step.conclusions != std::vector<std::string>{judgment_text(p, *node)})
                        return fail(si, "Fail conclusion does not match the node's judgment");
                    break;
                }
                case StepKind::Induction: {
                    std::vector<std::size_t> comp;
                    if (auto err = parse_component(step.component, comp)) return fail(si, *err);
                    if (comp.empty()) return fail(si, "empty component");
                    // strong connectivity + maximality, from scratch
                    const std::set<std::size_t> members(comp.begin(), comp.end());
                    std::set<std::size_t> forward, backward;
                    std::deque<std::size_t> queue{comp[0]};
                    forward.insert(comp[0]);
                    while (!queue.empty()) {
                        const auto v = queue.front();
                        queue.pop_front();
                        for (auto t : p.successors[v])
                            if (forward.insert(t).second) queue.push_back(t);
                    }
                    queue.push_back(comp[0]);
                    backward.insert(comp[0]);
                    while (!queue.empty()) {
                        const auto v = queue.front();
                        queue.pop_front();
                        for (std::size_t u = 0; u < p.nodes.size(); ++u)
                            if (!backward.count(u) &&
                                std::binary_search(p.successors[u].begin(), p.successors[u].end(), v)) {
                                backward.insert(u);
                                queue.push_back(u);
                            }
                    }
                    std::set<std::size_t> scc;
                    for (auto v : forward)
                        if (backward.count(v)) scc.insert(v);
                    if (scc != members) return fail(si, "component is not a maximal strongly connected set");
                    for (auto v : comp)
                        if (p.accepting[v]) return fail(si, "component contains accepting node " + p.node_name(v));
                    // exits
                    std::set<std::string> actual_exits;
                    for (auto v : comp)
                        for (auto t : p.successors[v])
                            if (!members.count(t)) actual_exits.insert(p.node_name(t));
                    const std::set<std::string> claimed(step.exit_set.begin(), step.exit_set.end());
                    if (claimed != actual_exits) return fail(si, "exit set does not match the product");
                    for (const auto& name : step.exit_set) {
                        const auto t = parse_node(name);
                        if (!t) return fail(si, "unknown exit node: " + name);
                        if (!established.count(judgment_text(p, *t)))
                            return fail(si, "exit judgment not established for " + name);
                    }
                    std::set<std::string> expected;
                    for (auto v : comp) expected.insert(judgment_text(p, v));
                    if (std::set<std::string>(step.conclusions.begin(), step.conclusions.end()) != expected)
                        return fail(si, "Induction conclusions do not cover exactly the component");
                    break;
                }
                case StepKind::Successors: {
                    if (step.component.size() != 1)
                        return fail(si, "Successors step must cover exactly one node");
                    const auto node = parse_node(step.component[0]);
                    if (!node) return fail(si, "unknown node: " + step.component[0]);
                    for (auto t : p.successors[*node])
                        if (!established.count(judgment_text(p, t)))
                            return fail(si, "successor judgment not established for " + p.node_name(t));
                    if (step.conclusions != std::vector<std::string>{judgment_text(p, *node)})
                        return fail(si, "Successors conclusion does not match the node's judgment");
                    break;
                }
                case StepKind::Conclusion: {
                    for (auto i : p.initial_nodes)
                        if (std::find(step.premises.begin(), step.premises.end(), judgment_text(p, i)) ==
                            step.premises.end())
                            return fail(si, "initial node undischarged: " + p.node_name(i));
                    if (step.conclusions != std::vector<std::string>{conclusion_text(pf.property)})
                        return fail(si, "conclusion text does not match the property");
                    break;
                }
            }
            for (const auto& c : step.conclusions) established.insert(c);
        }
        return {true, CheckResult::npos, ""};
    }
};

std::string escape_cell(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '|') out += "\\|";
        else out += c;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) out += sep;
        out += part;
    }
    return out;
}

} // namespace

CheckResult check_proof(const ProductAutomaton& p, const Proof& pf) { return Checker{p, pf, {}}.run(); }

std::string render_proof_markdown(const Proof& pf) {
    std::ostringstream os;
    os << "| Step | Component | Rule |\n";
    os << "| --- | --- | --- |\n";
    for (std::size_t i = 0; i < pf.steps.size(); ++i) {
        if (pf.steps[i].kind == StepKind::Fail) {
            // merge the run of Fail steps into one row
            std::vector<std::string> nodes, rules;
            while (i < pf.steps.size() && pf.steps[i].kind == StepKind::Fail) {
                nodes.insert(nodes.end(), pf.steps[i].component.begin(), pf.steps[i].component.end());
                rules.push_back(join(pf.steps[i].premises, "; ") + " => " +
                                join(pf.steps[i].conclusions, "; "));
                ++i;
            }
            --i;
            os << "| Fail | " << escape_cell(join(nodes, ", ")) << " | "
               << escape_cell(join(rules, " ; ")) << " |\n";
            continue;
        }
        const ProofStep& step = pf.steps[i];
        std::string component = join(step.component, ", ");
        if (!step.exit_set.empty()) component += " with exits " + join(step.exit_set, ", ");
        os << "| " << to_string(step.kind) << " | " << escape_cell(component) << " | "
           << escape_cell(join(step.premises, "; ") + " => " + join(step.conclusions, "; ")) << " |\n";
    }
    return os.str();
}

} // namespace tvmc::proof
