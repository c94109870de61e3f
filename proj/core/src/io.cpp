#include "tvmc/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tvmc/product.hpp"

namespace tvmc::io {

using nlohmann::json;

namespace {

constexpr const char* tool_version = "0.1.0";

[[noreturn]] void bad(const std::string& what) { throw IoError(what); }

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        bad(std::string{"invalid document: "} + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void reject_marker(const std::string& atom) {
    if (atom.find(ltl::complement_marker) != std::string::npos)
        bad("atom name uses the reserved complement marker: " + atom);
}

std::size_t state_index(const pks::Pks& m, const std::string& id, const char* where) {
    if (const auto i = m.index_of(id)) return *i;
    bad(std::string{where} + " names an unknown state: " + id);
}

} // namespace

pks::Pks pks_from_json(std::string_view text) {
    const json doc = parse_document(text);
    pks::Pks m;
    try {
        for (const auto& atom : doc.at("atoms")) {
            m.atoms.push_back(atom.get<std::string>());
            reject_marker(m.atoms.back());
        }
        std::sort(m.atoms.begin(), m.atoms.end());
        if (std::adjacent_find(m.atoms.begin(), m.atoms.end()) != m.atoms.end()) bad("duplicate atom");

        for (const auto& st : doc.at("states")) {
            pks::State state;
            state.id = st.at("id").get<std::string>();
            for (const auto& [atom, v] : st.at("labels").items()) {
                reject_marker(atom);
                const auto value = v.get<std::string>();
                if (value.size() != 1) bad("label must be one of T/F/U, got: " + value);
                state.labels[atom] = three_value_from_char(value[0]);
            }
            m.states.push_back(std::move(state));
        }
        m.successors.resize(m.states.size());

        for (const auto& id : doc.at("initial"))
            m.initial.push_back(state_index(m, id.get<std::string>(), "initial"));
        std::sort(m.initial.begin(), m.initial.end());
        m.initial.erase(std::unique(m.initial.begin(), m.initial.end()), m.initial.end());

        for (const auto& t : doc.at("transitions")) {
            if (!t.is_array() || t.size() != 2) bad("transition must be a [from, to] pair");
            const auto from = state_index(m, t.at(0).get<std::string>(), "transition");
            m.successors[from].push_back(state_index(m, t.at(1).get<std::string>(), "transition"));
        }
        for (auto& succ : m.successors) {
            std::sort(succ.begin(), succ.end());
            succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        }
    } catch (const json::exception& e) {
        bad(std::string{"invalid model document: "} + e.what());
    } catch (const std::invalid_argument& e) {
        bad(std::string{"invalid model document: "} + e.what());
    }
    for (const auto& violation : pks::validate(m))
        if (violation.error) bad("invalid model: " + violation.message);
    return m;
}

std::string pks_to_json(const pks::Pks& m) {
    json doc;
    doc["atoms"] = m.atoms;
    doc["states"] = json::array();
    for (const auto& st : m.states) {
        json labels = json::object();
        for (const auto& [atom, v] : st.labels) labels[atom] = std::string(1, to_char(v));
        doc["states"].push_back({{"id", st.id}, {"labels", labels}});
    }
    doc["initial"] = json::array();
    for (auto i : m.initial) doc["initial"].push_back(m.states[i].id);
    doc["transitions"] = json::array();
    for (std::size_t s = 0; s < m.successors.size(); ++s)
        for (auto t : m.successors[s]) doc["transitions"].push_back({m.states[s].id, m.states[t].id});
    return dump(doc);
}

automata::BuchiAutomaton automaton_from_json(std::string_view text) {
    const json doc = parse_document(text);
    automata::BuchiAutomaton a;
    try {
        for (const auto& name : doc.at("states")) a.states.push_back(name.get<std::string>());
        auto index_of = [&](const std::string& name) -> std::size_t {
            for (std::size_t q = 0; q < a.states.size(); ++q)
                if (a.states[q] == name) return q;
            bad("unknown automaton state: " + name);
        };
        a.initial = index_of(doc.at("initial").get<std::string>());
        for (const auto& name : doc.at("accepting")) a.accepting.insert(index_of(name.get<std::string>()));
        for (const auto& e : doc.at("edges")) {
            automata::Edge edge;
            edge.from = index_of(e.at("from").get<std::string>());
            edge.to = index_of(e.at("to").get<std::string>());
            edge.guard = automata::parse_guard(e.at("guard").get<std::string>());
            a.edges.push_back(std::move(edge));
        }
        std::sort(a.edges.begin(), a.edges.end(), [](const automata::Edge& x, const automata::Edge& y) {
            return std::tie(x.from, x.to, x.guard) < std::tie(y.from, y.to, y.guard);
        });

        a.eta.resize(a.states.size());
        for (const auto& [name, f] : doc.at("eta").items())
            a.eta[index_of(name)] = ltl::to_nnf(ltl::parse(f.get<std::string>()));
        a.mu.resize(a.states.size());
        if (doc.contains("mu"))
            for (const auto& [name, f] : doc.at("mu").items())
                a.mu[index_of(name)] = ltl::to_nnf(ltl::parse(f.get<std::string>()));
        for (std::size_t q = 0; q < a.states.size(); ++q) {
            if (!a.eta[q]) bad("missing eta annotation for state " + a.states[q]);
            if (!a.mu[q]) a.mu[q] = ltl::negate(a.eta[q]);
        }
    } catch (const json::exception& e) {
        bad(std::string{"invalid automaton document: "} + e.what());
    } catch (const ltl::ParseError& e) {
        bad(std::string{"invalid automaton document: "} + e.what());
    }
    for (const auto& violation : automata::validate(a)) bad("invalid automaton: " + violation);
    return a;
}

std::string automaton_to_json(const automata::BuchiAutomaton& a) {
    json doc;
    doc["states"] = a.states;
    doc["initial"] = a.states[a.initial];
    doc["accepting"] = json::array();
    for (auto q : a.accepting) doc["accepting"].push_back(a.states[q]);
    doc["edges"] = json::array();
    for (const auto& e : a.edges)
        doc["edges"].push_back(
            {{"from", a.states[e.from]}, {"guard", e.guard.to_string()}, {"to", a.states[e.to]}});
    doc["eta"] = json::object();
    doc["mu"] = json::object();
    for (std::size_t q = 0; q < a.states.size(); ++q) {
        doc["eta"][a.states[q]] = ltl::to_string(a.eta[q]);
        doc["mu"][a.states[q]] = ltl::to_string(a.mu[q]);
    }
    return dump(doc);
}

namespace {

proof::StepKind step_kind_from(const std::string& name) {
    if (name == "Fail") return proof::StepKind::Fail;
    if (name == "Induction") return proof::StepKind::Induction;
    if (name == "Successors") return proof::StepKind::Successors;
    if (name == "Conclusion") return proof::StepKind::Conclusion;
    bad("unknown proof step kind: " + name);
}

} // namespace

proof::Proof proof_from_json(std::string_view text) {
    const json doc = parse_document(text);
    proof::Proof pf;
    try {
        pf.property = doc.at("property").get<std::string>();
        pf.model_id = doc.at("model").get<std::string>();
        pf.automaton_id = doc.at("automaton").get<std::string>();
        for (const auto& s : doc.at("steps")) {
            proof::ProofStep step;
            step.kind = step_kind_from(s.at("kind").get<std::string>());
            for (const auto& n : s.at("component")) step.component.push_back(n.get<std::string>());
            if (s.contains("exit"))
                for (const auto& n : s.at("exit")) step.exit_set.push_back(n.get<std::string>());
            for (const auto& p : s.at("premises")) step.premises.push_back(p.get<std::string>());
            for (const auto& c : s.at("conclusions")) step.conclusions.push_back(c.get<std::string>());
            pf.steps.push_back(std::move(step));
        }
        if (doc.contains("conclusion")) {
            const auto stated = doc.at("conclusion").get<std::string>();
            if (pf.steps.empty() || pf.steps.back().conclusions != std::vector<std::string>{stated})
                bad("document conclusion does not match the final step");
        }
    } catch (const json::exception& e) {
        bad(std::string{"invalid proof document: "} + e.what());
    }
    return pf;
}

std::string proof_to_json(const proof::Proof& pf) {
    json doc;
    doc["property"] = pf.property;
    doc["model"] = pf.model_id;
    doc["automaton"] = pf.automaton_id;
    doc["steps"] = json::array();
    for (const auto& step : pf.steps) {
        json s;
        s["kind"] = proof::to_string(step.kind);
        s["component"] = step.component;
        if (step.kind == proof::StepKind::Induction) s["exit"] = step.exit_set;
        s["premises"] = step.premises;
        s["conclusions"] = step.conclusions;
        doc["steps"].push_back(std::move(s));
    }
    doc["conclusion"] =
        pf.steps.empty() || pf.steps.back().conclusions.empty() ? "" : pf.steps.back().conclusions[0];
    return dump(doc);
}

namespace {

json product_json(const product::ProductAutomaton& p) {
    json doc;
    doc["nodes"] = json::array();
    doc["edges"] = json::array();
    json initial = json::array(), accepting = json::array(), flagged = json::array();
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        doc["nodes"].push_back(p.node_name(i));
        if (p.accepting[i]) accepting.push_back(p.node_name(i));
        if (p.flagged[i]) flagged.push_back(p.node_name(i));
        for (auto t : p.successors[i]) doc["edges"].push_back({p.node_name(i), p.node_name(t)});
    }
    for (auto i : p.initial_nodes) initial.push_back(p.node_name(i));
    doc["initial"] = std::move(initial);
    doc["accepting"] = std::move(accepting);
    doc["flagged"] = std::move(flagged);
    doc["model"] = pks::fingerprint(p.model);
    doc["automaton"] = automata::fingerprint(p.automaton);
    return doc;
}

json lasso_json(const engine::Verdict& v) {
    const auto& p = v.lasso_product();
    json c;
    c["from"] = v.lasso_from;
    c["prefix"] = json::array();
    for (auto i : v.lasso->prefix) c["prefix"].push_back(p.node_name(i));
    c["cycle"] = json::array();
    for (auto i : v.lasso->cycle) c["cycle"].push_back(p.node_name(i));
    const auto [stem, cycle] = product::project_lasso(p, *v.lasso);
    c["projection"] = {{"stem", stem}, {"cycle", cycle}, {"text", projection_text(stem, cycle)}};
    return c;
}

} // namespace

std::string product_to_json(const product::ProductAutomaton& p) { return dump(product_json(p)); }

std::string result_to_json(const engine::Verdict& v, const std::string& property_text,
                           const ResultOptions& opt) {
    json doc;
    doc["property"] = property_text;
    doc["verdict"] = engine::to_string(v.value);
    if (v.lasso && opt.emit_counterexample) doc["counterexample"] = lasso_json(v);
    if (v.proof && opt.emit_proof) {
        doc["proof"] = parse_document(proof_to_json(*v.proof));
        doc["proof"]["from"] = v.proof_from;
    }
    if (opt.emit_product) {
        doc["products"] = json::object();
        doc["products"]["pessimistic"] = product_json(v.pessimistic_product);
        doc["products"]["optimistic"] = product_json(v.optimistic_product);
        if (v.proof_product) doc["products"]["proof"] = product_json(*v.proof_product);
    }
    doc["provenance"] = {{"tool", "tvmc"},
                         {"version", tool_version},
                         {"automaton", automata::fingerprint(v.pessimistic_product.automaton)},
                         {"pessimistic_model", pks::fingerprint(v.pessimistic_product.model)},
                         {"optimistic_model", pks::fingerprint(v.optimistic_product.model)}};
    return dump(doc);
}

std::string result_to_markdown(const engine::Verdict& v, const std::string& property_text,
                               const ResultOptions& opt) {
    std::ostringstream os;
    os << "# Verification result\n\n";
    os << "- property: `" << property_text << "`\n";
    os << "- verdict: **" << engine::to_string(v.value) << "**\n";
    if (v.lasso && opt.emit_counterexample) {
        const auto& p = v.lasso_product();
        os << "\n## Counterexample (" << v.lasso_from << " completion)\n\n";
        const auto [stem, cycle] = product::project_lasso(p, *v.lasso);
        os << "- projection: " << projection_text(stem, cycle) << "\n";
        os << "- run:";
        for (auto i : v.lasso->prefix) os << " " << p.node_name(i);
        os << " (";
        for (std::size_t k = 0; k < v.lasso->cycle.size(); ++k)
            os << (k ? " " : "") << p.node_name(v.lasso->cycle[k]);
        os << ")^ω\n";
    }
    if (v.proof && opt.emit_proof) {
        os << "\n## Proof (" << v.proof_from << " completion)\n\n";
        os << proof::render_proof_markdown(*v.proof);
    }
    os << "\n## Provenance\n\n";
    os << "- tool: tvmc " << tool_version << "\n";
    os << "- automaton: " << automata::fingerprint(v.pessimistic_product.automaton) << "\n";
    os << "- pessimistic model: " << pks::fingerprint(v.pessimistic_product.model) << "\n";
    os << "- optimistic model: " << pks::fingerprint(v.optimistic_product.model) << "\n";
    return os.str();
}

std::string result_to_plain(const engine::Verdict& v, const std::string& property_text,
                            const ResultOptions& opt) {
    std::ostringstream os;
    os << "verdict: " << engine::to_string(v.value) << "\n";
    os << "property: " << property_text << "\n";
    if (v.lasso && opt.emit_counterexample) {
        const auto& p = v.lasso_product();
        const auto [stem, cycle] = product::project_lasso(p, *v.lasso);
        os << "counterexample (" << v.lasso_from << "): " << projection_text(stem, cycle) << "\n";
        os << "run:";
        for (auto i : v.lasso->prefix) os << " " << p.node_name(i);
        os << " (";
        for (std::size_t k = 0; k < v.lasso->cycle.size(); ++k)
            os << (k ? " " : "") << p.node_name(v.lasso->cycle[k]);
        os << ")^ω\n";
    }
    if (v.proof && opt.emit_proof)
        os << "proof (" << v.proof_from << "): " << v.proof->steps.size()
           << " steps, conclusion " << v.proof->steps.back().conclusions[0] << "\n";
    return os.str();
}

std::string projection_text(const std::vector<std::string>& stem, const std::vector<std::string>& cycle) {
    std::string out;
    for (const auto& s : stem) out += s + ", ";
    out += "(";
    for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? ", " : "") + cycle[i];
    out += ")^ω";
    return out;
}

std::string load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) bad("cannot read " + path);
    return os.str();
}

void save_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot open " + path + " for writing");
    out << content;
    if (!out) bad("cannot write " + path);
}

std::string fingerprint_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace tvmc::io
