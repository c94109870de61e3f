#include "tvmc/cli.hpp"

#include <cstdint>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvmc/engine.hpp"
#include "tvmc/io.hpp"
#include "tvmc/oracle.hpp"

namespace tvmc::cli {

namespace {

int input_error(std::ostream& err, const std::string& msg) {
    err << "error: " << msg << "\n";
    return exit_input_error;
}

std::string describe_parse_error(const ltl::ParseError& e) {
    std::string msg = e.what();
    if (!e.expected.empty()) {
        msg += " (expected ";
        for (std::size_t i = 0; i < e.expected.size(); ++i) msg += (i ? ", " : "") + e.expected[i];
        msg += ")";
    }
    return msg;
}

} // namespace

int cmd_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    pks::Pks model;
    ltl::FormulaPtr property;
    automata::BuchiAutomaton automaton;
    bool have_automaton = false;
    try {
        model = io::pks_from_json(io::load_file(opt.model_path));
        if (opt.strict_validate)
            for (const auto& violation : pks::validate(model))
                if (!violation.error) return input_error(err, "strict validation: " + violation.message);
        property = ltl::parse(opt.property);
        if (!opt.automaton_path.empty()) {
            automaton = io::automaton_from_json(io::load_file(opt.automaton_path));
            have_automaton = true;
        }
    } catch (const io::IoError& e) {
        return input_error(err, e.what());
    } catch (const ltl::ParseError& e) {
        return input_error(err, "property: " + describe_parse_error(e));
    }

    engine::Verdict verdict;
    try {
        verdict = engine::check(model, property, have_automaton ? &automaton : nullptr, opt.property);
    } catch (const engine::InputError& e) {
        return input_error(err, e.what());
    } catch (const engine::InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal_error;
    }

    const io::ResultOptions ropt{opt.emit_proof, opt.emit_counterexample, opt.emit_product};
    if (opt.format == "json") out << io::result_to_json(verdict, opt.property, ropt);
    else if (opt.format == "markdown") out << io::result_to_markdown(verdict, opt.property, ropt);
    else if (opt.format == "plain") out << io::result_to_plain(verdict, opt.property, ropt);
    else return input_error(err, "unknown format: " + opt.format);
    return exit_ok;
}

int cmd_oracle(const OracleOptions& opt, std::ostream& out, std::ostream& err) {
    pks::Pks model;
    ltl::FormulaPtr property;
    try {
        model = io::pks_from_json(io::load_file(opt.model_path));
        property = ltl::parse(opt.property);
    } catch (const io::IoError& e) {
        return input_error(err, e.what());
    } catch (const ltl::ParseError& e) {
        return input_error(err, "property: " + describe_parse_error(e));
    }

    const auto unknowns = pks::unknown_positions(model);
    std::vector<std::pair<std::string, bool>> rows; // assignment text, satisfies
    try {
        pks::for_each_completion(
            model,
            [&](const pks::Pks& completion) {
                std::string desc;
                for (const auto& [state, atom] : unknowns) {
                    if (!desc.empty()) desc += " ";
                    desc += completion.states[state].id + "." + atom + "=" +
                            to_char(completion.label(state, atom));
                }
                if (desc.empty()) desc = "(none)";
                rows.emplace_back(desc, oracle::model_satisfies(completion, property));
            },
            opt.cap);
    } catch (const std::invalid_argument& e) {
        return input_error(err, e.what());
    }

    std::size_t satisfied = 0;
    for (const auto& [desc, ok] : rows) satisfied += ok ? 1 : 0;
    const std::string summary =
        satisfied == rows.size() ? "all" : (satisfied == 0 ? "none" : "mixed");

    if (opt.format == "json") {
        nlohmann::json doc;
        doc["property"] = opt.property;
        doc["completions"] = nlohmann::json::array();
        for (const auto& [desc, ok] : rows)
            doc["completions"].push_back({{"assignment", desc}, {"satisfies", ok}});
        doc["total"] = rows.size();
        doc["satisfied"] = satisfied;
        doc["summary"] = summary;
        out << doc.dump(2) << "\n";
    } else if (opt.format == "markdown") {
        out << "| Completion | Result |\n| --- | --- |\n";
        for (const auto& [desc, ok] : rows)
            out << "| " << desc << " | " << (ok ? "satisfies" : "violates") << " |\n";
        out << "\nsummary: " << summary << " (" << satisfied << "/" << rows.size() << ")\n";
    } else if (opt.format == "plain") {
        for (const auto& [desc, ok] : rows)
            out << desc << ": " << (ok ? "satisfies" : "violates") << "\n";
        out << "summary: " << summary << " (" << satisfied << "/" << rows.size() << ")\n";
    } else {
        return input_error(err, "unknown format: " + opt.format);
    }
    return exit_ok;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"three-valued LTL model checking over partial Kripke structures"};
    app.require_subcommand(1);

    CheckOptions check_opt;
    auto* check = app.add_subcommand("check", "verdict + evidence for a property over a model");
    check->add_option("--model", check_opt.model_path, "model document (JSON)")->required();
    check->add_option("--property", check_opt.property, "LTL property")->required();
    check->add_option("--automaton", check_opt.automaton_path,
                      "automaton document overriding the negated-property translation");
    check->add_option("--format", check_opt.format, "output format")
        ->check(CLI::IsMember({"json", "markdown", "plain"}));
    check->add_flag("--emit-proof,!--no-emit-proof", check_opt.emit_proof, "include the proof");
    check->add_flag("--emit-counterexample,!--no-emit-counterexample", check_opt.emit_counterexample,
                    "include the counterexample");
    check->add_flag("--emit-product", check_opt.emit_product, "include product graphs");
    check->add_flag("--strict-validate", check_opt.strict_validate, "treat validation warnings as errors");
    std::uint64_t seed = 0; // reserved; nothing in the pipeline is randomized
    check->add_option("--seed", seed, "reserved for deterministic runs");

    OracleOptions oracle_opt;
    auto* oracle = app.add_subcommand("oracle", "brute-force satisfaction over every completion");
    oracle->add_option("--model", oracle_opt.model_path, "model document (JSON)")->required();
    oracle->add_option("--property", oracle_opt.property, "LTL property")->required();
    oracle->add_option("--format", oracle_opt.format, "output format")
        ->check(CLI::IsMember({"json", "markdown", "plain"}));
    oracle->add_option("--cap", oracle_opt.cap, "max unknown labels to enumerate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    if (check->parsed()) return cmd_check(check_opt, std::cout, std::cerr);
    return cmd_oracle(oracle_opt, std::cout, std::cerr);
}

} // namespace tvmc::cli
