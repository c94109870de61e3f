#include "tvmc/pks.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "tvmc/ltl.hpp"

namespace tvmc::pks {

std::optional<std::size_t> Pks::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].id == id) return i;
    return std::nullopt;
}

ThreeValue Pks::label(std::size_t state, const std::string& atom) const {
    const auto& labels = states.at(state).labels;
    auto it = labels.find(atom);
    if (it == labels.end())
        throw std::invalid_argument("no label for atom '" + atom + "' at state '" + states.at(state).id + "'");
    return it->second;
}

namespace {

bool well_formed_atom(const std::string& name) {
    if (name.empty()) return false;
    const std::size_t n = name.size() - (ltl::is_barred(name) ? 1 : 0);
    if (n == 0) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const char c = name[i];
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok || (i == 0 && c >= '0' && c <= '9')) return false;
    }
    return true;
}

} // namespace

std::vector<Violation> validate(const Pks& m) {
    std::vector<Violation> out;
    auto error = [&](std::string msg) { out.push_back({true, std::move(msg)}); };
    auto warning = [&](std::string msg) { out.push_back({false, std::move(msg)}); };

    if (m.states.empty()) {
        error("structure has no states");
        return out;
    }
    for (std::size_t i = 0; i < m.states.size(); ++i)
        for (std::size_t j = i + 1; j < m.states.size(); ++j)
            if (m.states[i].id == m.states[j].id) error("duplicate state id '" + m.states[i].id + "'");
    for (const auto& s : m.states)
        if (s.id.empty()) error("empty state id");

    for (const auto& a : m.atoms)
        if (!well_formed_atom(a)) error("malformed atom name '" + a + "'");
    for (std::size_t i = 0; i + 1 < m.atoms.size(); ++i) {
        if (m.atoms[i] == m.atoms[i + 1]) error("duplicate atom '" + m.atoms[i] + "'");
        if (m.atoms[i] > m.atoms[i + 1]) error("atom set not sorted at '" + m.atoms[i + 1] + "'");
    }

    if (m.initial.empty()) error("initial-state set is empty");
    for (auto i : m.initial)
        if (i >= m.states.size()) error("initial state index out of range");

    if (m.successors.size() != m.states.size()) {
        error("successor table size does not match state count");
        return out;
    }
    for (std::size_t s = 0; s < m.states.size(); ++s) {
        if (m.successors[s].empty()) error("non-total state '" + m.states[s].id + "' (no successors)");
        for (auto t : m.successors[s])
            if (t >= m.states.size()) error("dangling transition from '" + m.states[s].id + "'");
    }

    for (std::size_t s = 0; s < m.states.size(); ++s) {
        for (const auto& a : m.atoms)
            if (!m.states[s].labels.count(a))
                error("state '" + m.states[s].id + "' misses a label for atom '" + a + "'");
        for (const auto& [a, v] : m.states[s].labels)
            if (!std::binary_search(m.atoms.begin(), m.atoms.end(), a))
                error("state '" + m.states[s].id + "' labels undeclared atom '" + a + "'");
    }

    // Complement pairing, where barred atoms exist at all.
    for (const auto& a : m.atoms) {
        if (!ltl::is_barred(a)) continue;
        const std::string base = a.substr(0, a.size() - 1);
        if (!std::binary_search(m.atoms.begin(), m.atoms.end(), base)) {
            error("barred atom '" + a + "' has no base atom");
            continue;
        }
        for (std::size_t s = 0; s < m.states.size(); ++s) {
            auto bi = m.states[s].labels.find(base);
            auto ci = m.states[s].labels.find(a);
            if (bi == m.states[s].labels.end() || ci == m.states[s].labels.end()) continue;
            if (ci->second != comp(bi->second))
                error("complement mismatch for '" + a + "' at state '" + m.states[s].id + "'");
        }
    }

    if (!out.empty() && std::any_of(out.begin(), out.end(), [](const Violation& v) { return v.error; }))
        return out; // reachability over broken indices is meaningless

    const auto reach = reachable(m);
    for (std::size_t s = 0; s < m.states.size(); ++s)
        if (!reach[s]) warning("unreachable state '" + m.states[s].id + "'");
    return out;
}

bool is_complete(const Pks& m) {
    for (const auto& s : m.states)
        for (const auto& [a, v] : s.labels)
            if (v == ThreeValue::Unknown) return false;
    return true;
}

bool is_closed(const Pks& m) {
    for (const auto& a : m.atoms) {
        if (ltl::is_barred(a)) continue;
        const std::string barred = ltl::bar(a);
        if (!std::binary_search(m.atoms.begin(), m.atoms.end(), barred)) return false;
        for (std::size_t s = 0; s < m.states.size(); ++s)
            if (m.label(s, barred) != comp(m.label(s, a))) return false;
    }
    return !m.atoms.empty();
}

Pks complement_close(const Pks& m) {
    for (const auto& a : m.atoms)
        if (ltl::is_barred(a)) throw std::invalid_argument("structure already carries barred atom '" + a + "'");
    Pks out = m;
    for (const auto& a : m.atoms) out.atoms.push_back(ltl::bar(a));
    std::sort(out.atoms.begin(), out.atoms.end());
    for (auto& s : out.states) {
        std::map<std::string, ThreeValue> extended = s.labels;
        for (const auto& [a, v] : s.labels) extended[ltl::bar(a)] = comp(v);
        s.labels = std::move(extended);
    }
    return out;
}

namespace {

Pks complete_with(const Pks& m, ThreeValue fill) {
    Pks out = m;
    for (auto& s : out.states)
        for (auto& [a, v] : s.labels)
            if (v == ThreeValue::Unknown) v = fill;
    return out;
}

} // namespace

Pks pessimistic(const Pks& m) { return complete_with(m, ThreeValue::False); }
Pks optimistic(const Pks& m) { return complete_with(m, ThreeValue::True); }

std::vector<std::pair<std::size_t, std::string>> unknown_positions(const Pks& m) {
    std::vector<std::pair<std::size_t, std::string>> out;
    for (std::size_t s = 0; s < m.states.size(); ++s)
        for (const auto& [a, v] : m.states[s].labels)
            if (v == ThreeValue::Unknown && !ltl::is_barred(a)) out.emplace_back(s, a);
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        if (m.states[x.first].id != m.states[y.first].id) return m.states[x.first].id < m.states[y.first].id;
        return x.second < y.second;
    });
    return out;
}

void for_each_completion(const Pks& m, const std::function<void(const Pks&)>& fn, std::size_t cap) {
    const auto unknowns = unknown_positions(m);
    if (unknowns.size() > cap) {
        std::ostringstream os;
        os << "completion enumeration over " << unknowns.size() << " unknowns exceeds the cap of " << cap;
        throw std::invalid_argument(os.str());
    }
    const bool closed = std::any_of(m.atoms.begin(), m.atoms.end(),
                                    [](const std::string& a) { return ltl::is_barred(a); });
    const std::size_t k = unknowns.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Pks c = m;
        for (std::size_t i = 0; i < k; ++i) {
            const bool high = (mask >> (k - 1 - i)) & 1; // first unknown = most significant: F..F first
            c.states[unknowns[i].first].labels[unknowns[i].second] =
                high ? ThreeValue::True : ThreeValue::False;
        }
        if (closed) {
            for (auto& s : c.states)
                for (const auto& a : c.atoms)
                    if (ltl::is_barred(a)) {
                        const std::string base = a.substr(0, a.size() - 1);
                        auto it = s.labels.find(base);
                        if (it != s.labels.end()) s.labels[a] = comp(it->second);
                    }
        }
        fn(c);
    }
}

std::vector<Pks> enumerate_completions(const Pks& m, std::size_t cap) {
    std::vector<Pks> out;
    for_each_completion(m, [&](const Pks& c) { out.push_back(c); }, cap);
    return out;
}

std::set<std::string> true_atoms(const Pks& m, std::size_t state) {
    std::set<std::string> out;
    for (const auto& [a, v] : m.states.at(state).labels)
        if (v == ThreeValue::True) out.insert(a);
    return out;
}

std::vector<bool> reachable(const Pks& m) {
    std::vector<bool> seen(m.states.size(), false);
    std::deque<std::size_t> queue;
    for (auto i : m.initial)
        if (i < m.states.size() && !seen[i]) {
            seen[i] = true;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        const auto s = queue.front();
        queue.pop_front();
        for (auto t : m.successors[s])
            if (t < m.states.size() && !seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
    }
    return seen;
}

namespace {

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
}

} // namespace

std::string fingerprint(const Pks& m) {
    std::ostringstream os;
    os << "pks;atoms=";
    for (const auto& a : m.atoms) os << a << ',';
    os << ";states=";
    for (const auto& s : m.states) {
        os << s.id << '{';
        for (const auto& [a, v] : s.labels) os << a << ':' << to_char(v) << ',';
        os << '}';
    }
    os << ";initial=";
    for (auto i : m.initial) os << i << ',';
    os << ";edges=";
    for (std::size_t s = 0; s < m.successors.size(); ++s)
        for (auto t : m.successors[s]) os << s << '>' << t << ',';
    std::uint64_t h = 1469598103934665603ull;
    const std::string dump = os.str();
    fnv_mix(h, dump);
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << h;
    return hex.str();
}

} // namespace tvmc::pks
