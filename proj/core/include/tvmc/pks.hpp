#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tvmc/three_value.hpp"

namespace tvmc::pks {

struct State {
    std::string id;
    std::map<std::string, ThreeValue> labels; // total over the atom set
};

/// Kripke structure with three-valued labels. A structure with no Unknown
/// label doubles as the classical (complete) case.
struct Pks {
    std::vector<std::string> atoms;                   // sorted, unique
    std::vector<State> states;
    std::vector<std::size_t> initial;                 // indices, sorted, nonempty
    std::vector<std::vector<std::size_t>> successors; // per state, sorted, unique

    std::optional<std::size_t> index_of(std::string_view id) const;
    ThreeValue label(std::size_t state, const std::string& atom) const; // throws on unknown atom
};

struct Violation {
    bool error; // false = warning (e.g. unreachable state)
    std::string message;
};

/// Structural checks: nonempty/unique states, initial set nonempty and in
/// range, transition endpoints in range, totality (every state has a
/// successor), labels total over the atom set and only over it, atom names
/// well-formed (complement marker only as a final character), complement
/// pairing where barred atoms exist. Unreachable states are warnings.
std::vector<Violation> validate(const Pks& m);

bool is_complete(const Pks& m); // no Unknown label anywhere

/// True when every atom has its barred partner and labels are complementary.
bool is_closed(const Pks& m);

/// Adds bar(p) for every atom p with label comp(L(s,p)). Input must not
/// already contain barred atoms.
Pks complement_close(const Pks& m);

/// Every Unknown label becomes False (barred atoms included).
Pks pessimistic(const Pks& m);

/// Every Unknown label becomes True (barred atoms included).
Pks optimistic(const Pks& m);

/// Unknown (state, atom) pairs over unbarred atoms, sorted by
/// (state id, atom name). Barred atoms are derived, never enumerated.
std::vector<std::pair<std::size_t, std::string>> unknown_positions(const Pks& m);

/// Calls fn for all 2^k completions; assignments enumerate in lexicographic
/// order over unknown_positions with False before True. Barred atoms are
/// recomputed as complements of their base atom. Throws when k exceeds cap.
void for_each_completion(const Pks& m, const std::function<void(const Pks&)>& fn, std::size_t cap = 20);

std::vector<Pks> enumerate_completions(const Pks& m, std::size_t cap = 20);

/// Atoms labeled True at the state (for guard evaluation on complete labels).
std::set<std::string> true_atoms(const Pks& m, std::size_t state);

/// Per-state reachability from the initial set.
std::vector<bool> reachable(const Pks& m);

/// Content fingerprint (FNV-1a over a canonical dump), stable across runs.
std::string fingerprint(const Pks& m);

} // namespace tvmc::pks
