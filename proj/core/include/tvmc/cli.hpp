#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

namespace tvmc::cli {

inline constexpr int exit_ok = 0;             // analysis completed (any verdict)
inline constexpr int exit_input_error = 2;    // bad file / syntax / validation
inline constexpr int exit_internal_error = 3; // evidence self-check failed

struct CheckOptions {
    std::string model_path;
    std::string property;       // LTL text
    std::string automaton_path; // optional override for the negated property
    std::string format = "json"; // json | markdown | plain
    bool emit_proof = true;
    bool emit_counterexample = true;
    bool emit_product = false;
    bool strict_validate = false; // validation warnings become errors
};

struct OracleOptions {
    std::string model_path;
    std::string property;
    std::string format = "json";
    std::size_t cap = 20; // max unknown labels to enumerate
};

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err);

/// Argument parsing + dispatch for the `tvmc` binary.
int run(int argc, const char* const* argv);

} // namespace tvmc::cli
