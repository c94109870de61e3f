#pragma once

#include <ostream>
#include <stdexcept>

namespace tvmc {

/// Kleene three-valued truth domain.
enum class ThreeValue { False, Unknown, True };

constexpr ThreeValue comp(ThreeValue v) {
    switch (v) {
        case ThreeValue::True: return ThreeValue::False;
        case ThreeValue::False: return ThreeValue::True;
        default: return ThreeValue::Unknown;
    }
}

// Truth order False < Unknown < True; meet/join are min/max in that order.
constexpr ThreeValue meet(ThreeValue a, ThreeValue b) { return a < b ? a : b; }
constexpr ThreeValue join(ThreeValue a, ThreeValue b) { return a < b ? b : a; }

constexpr char to_char(ThreeValue v) {
    switch (v) {
        case ThreeValue::True: return 'T';
        case ThreeValue::False: return 'F';
        default: return 'U';
    }
}

inline ThreeValue three_value_from_char(char c) {
    switch (c) {
        case 'T': return ThreeValue::True;
        case 'F': return ThreeValue::False;
        case 'U': return ThreeValue::Unknown;
        default: throw std::invalid_argument(std::string("not a three-valued literal: ") + c);
    }
}

inline std::ostream& operator<<(std::ostream& os, ThreeValue v) { return os << to_char(v); }

} // namespace tvmc
