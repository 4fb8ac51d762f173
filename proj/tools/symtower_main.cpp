// Command-line surface over the symbol-calculus engine. Tower state lives in
// a JSON session file; every result embeds the tower declaration and the
// generator convention so outputs are self-describing.

#include <CLI11.hpp>
#include <cctype>
#include <fstream>
#include <iostream>

#include "symtower/errors.hpp"
#include "symtower/numoracle.hpp"
#include "symtower/parse.hpp"
#include "symtower/residue.hpp"
#include "symtower/serialize.hpp"
#include "symtower/splitting.hpp"

namespace {

using namespace symtower;

struct Options {
    bool json = false;
    bool trace = false;
    std::int64_t seed = 0;
    std::string session_path = "symtower.session.json";
};

struct Session {
    TowerPtr tower;
    std::string output_mode = "text";
};

Session load_session(const Options& opts) {
    std::ifstream in(opts.session_path);
    if (!in)
        raise(ErrorKind::PreconditionViolation,
              "no session at '" + opts.session_path + "'; run 'tower new' first");
    Json j = Json::parse(in);
    Session session;
    session.tower = tower_from_json(j.at("tower"));
    if (j.contains("output")) session.output_mode = j["output"].get<std::string>();
    return session;
}

void save_session(const Options& opts, const TowerPtr& tower, const std::string& output_mode) {
    Json j{{"tower", tower_json(*tower)},
           {"generator_convention", std::string(kGeneratorConvention)},
           {"output", output_mode}};
    std::ofstream out(opts.session_path);
    if (!out) raise(ErrorKind::PreconditionViolation, "cannot write session file '" + opts.session_path + "'");
    out << j.dump(2) << "\n";
}

bool use_json(const Options& opts, const Session* session) {
    if (opts.json) return true;
    return session && session->output_mode == "json";
}

void render_text(const Json& payload, std::ostream& out, int indent = 0) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (payload.is_object()) {
        for (const auto& [key, value] : payload.items()) {
            if (value.is_object() || value.is_array()) {
                out << pad << key << ":\n";
                render_text(value, out, indent + 1);
            } else {
                out << pad << key << ": " << value.dump() << "\n";
            }
        }
    } else if (payload.is_array()) {
        for (const auto& value : payload) {
            if (value.is_object() || value.is_array()) {
                out << pad << "-\n";
                render_text(value, out, indent + 1);
            } else {
                out << pad << "- " << value.dump() << "\n";
            }
        }
    } else {
        out << pad << payload.dump() << "\n";
    }
}

void print_result(const Options& opts, const Session* session, const std::string& command, Json payload) {
    Json wrapper{{"command", command}};
    if (session) wrapper["tower"] = tower_json(*session->tower);
    wrapper["generator_convention"] = std::string(kGeneratorConvention);
    wrapper["seed"] = opts.seed;
    wrapper["result"] = std::move(payload);
    if (use_json(opts, session))
        std::cout << wrapper.dump(2) << "\n";
    else
        render_text(wrapper, std::cout);
}

oracle::Place parse_place(const std::string& text) {
    if (text == "inf" || text == "real" || text == "oo") return oracle::Place::real();
    try {
        return oracle::Place::at(std::stoll(text));
    } catch (const std::exception&) {
        raise(ErrorKind::ParseError, "place must be a prime or 'inf', got '" + text + "'");
    }
}

oracle::QuaternionInput parse_algebra(const std::string& text) {
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.size() < 5 || trimmed.front() != '(' || trimmed.back() != ')')
        raise(ErrorKind::ParseError, "algebra must look like (a,b), got '" + text + "'");
    auto comma = trimmed.find(',');
    if (comma == std::string::npos)
        raise(ErrorKind::ParseError, "algebra must look like (a,b), got '" + text + "'");
    try {
        std::int64_t a = std::stoll(trimmed.substr(1, comma - 1));
        std::int64_t b = std::stoll(trimmed.substr(comma + 1, trimmed.size() - comma - 2));
        return oracle::QuaternionInput{a, b};
    } catch (const std::exception&) {
        raise(ErrorKind::ParseError, "algebra must look like (a,b), got '" + text + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mod-m symbol calculus over iterated Laurent-series towers"};
    app.require_subcommand(1);

    Options opts;
    app.add_flag("--json", opts.json, "emit JSON output");
    app.add_flag("--trace", opts.trace, "emit the rewrite trace where applicable");
    app.add_option("--seed", opts.seed, "seed echoed into outputs for reproducibility");
    app.add_option("--session", opts.session_path, "session file path");

    // tower new
    auto* tower_cmd = app.add_subcommand("tower", "manage the session tower");
    auto* tower_new = tower_cmd->add_subcommand("new", "declare the working tower");
    std::int64_t opt_q = 0, opt_m = 0;
    std::string opt_unifs;
    std::string opt_output = "text";
    tower_new->add_option("--q", opt_q, "base field size (prime power)")->required();
    tower_new->add_option("--m", opt_m, "coefficient modulus")->required();
    tower_new->add_option("--uniformizers", opt_unifs, "comma-separated uniformizer names");
    tower_new->add_option("--output", opt_output, "default output mode (text|json)");

    auto add_expr_command = [&app](const char* name, const char* help, std::string& target) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("expr", target, "symbol expression")->required();
        return cmd;
    };

    std::string expr_normalize, expr_residue, expr_decompose, expr_bilocal, expr_split, expr_period,
        expr_descend;
    auto* cmd_normalize = add_expr_command("normalize", "canonical form of a symbol expression", expr_normalize);
    auto* cmd_residue = add_expr_command("residue", "residue at the outermost uniformizer", expr_residue);
    std::string residue_at;
    cmd_residue->add_option("--at", residue_at, "uniformizer to take the residue at (must be outermost)");
    auto* cmd_decompose =
        add_expr_command("decompose", "unramified + (factor, t_n) decomposition", expr_decompose);
    auto* cmd_bilocal =
        add_expr_command("bilocal-decompose", "four-part decomposition over a depth-2 tower", expr_bilocal);
    auto* cmd_split = add_expr_command("split", "splitting certificate for a top-degree class", expr_split);
    auto* cmd_period =
        add_expr_command("period-index", "period and constructed splitting degree", expr_period);
    auto* cmd_descend =
        add_expr_command("descend", "cyclotomic descent for a tower without mu_m", expr_descend);

    auto* cmd_common = app.add_subcommand("common-slot", "one extension splitting a family of classes");
    std::vector<std::string> common_exprs;
    cmd_common->add_option("exprs", common_exprs, "symbol expressions")->required()->expected(-1);

    auto* cmd_tate = app.add_subcommand("tate-slot", "common quadratic splitting field over Q");
    std::vector<std::string> tate_algebras;
    cmd_tate->add_option("algebras", tate_algebras, "quaternion algebras, e.g. \"(-1,-1)\"")
        ->required()
        ->expected(-1);

    auto* cmd_oracle = app.add_subcommand("oracle", "independent number-theoretic oracles");
    auto* cmd_hilbert = cmd_oracle->add_subcommand("hilbert", "brute-force local Hilbert symbol");
    std::int64_t opt_a = 0, opt_b = 0;
    std::string opt_place;
    cmd_hilbert->add_option("-a", opt_a, "first entry")->required();
    cmd_hilbert->add_option("-b", opt_b, "second entry")->required();
    cmd_hilbert->add_option("--place", opt_place, "prime or 'inf'")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tower_new->parsed()) {
            std::vector<std::string> names;
            std::string current;
            for (char c : opt_unifs) {
                if (c == ',') {
                    if (!current.empty()) names.push_back(current);
                    current.clear();
                } else if (!std::isspace(static_cast<unsigned char>(c))) {
                    current += c;
                }
            }
            if (!current.empty()) names.push_back(current);
            TowerPtr tower = build_tower(opt_q, opt_m, names);
            save_session(opts, tower, opt_output);
            Session session{tower, opt_output};
            print_result(opts, &session, "tower new",
                         Json{{"full_calculus", tower->full_calculus},
                              {"cohomological_dimension", tower->cohomological_dimension()}});
            return 0;
        }

        if (cmd_normalize->parsed()) {
            Session session = load_session(opts);
            auto cls = normalize(parse_symbol_expr(expr_normalize, session.tower));
            Json payload = canonical_json(cls);
            payload["symbol_length_bound"] = cls.term_count();
            payload["degree_overflow"] = cls.degree() > session.tower->cohomological_dimension();
            print_result(opts, &session, "normalize", std::move(payload));
            return 0;
        }

        if (cmd_residue->parsed()) {
            Session session = load_session(opts);
            int at_slot = -1;
            if (!residue_at.empty()) {
                auto index = session.tower->generator_index(residue_at);
                if (!index || *index == 0)
                    raise(ErrorKind::UnknownGenerator, "'" + residue_at + "' is not a uniformizer");
                at_slot = *index - 1;
            }
            auto cls = residue_map(normalize(parse_symbol_expr(expr_residue, session.tower)), at_slot);
            Json payload{{"residue", canonical_json(cls)}, {"residue_tower", tower_json(*cls.tower())}};
            print_result(opts, &session, "residue", std::move(payload));
            return 0;
        }

        if (cmd_decompose->parsed()) {
            Session session = load_session(opts);
            auto sum = parse_symbol_expr(expr_decompose, session.tower);
            auto dec = decompose(normalize(sum));
            Json payload = decomposition_json(dec);
            if (opts.trace) payload["rewrite"] = rewrite_json(decompose_symbol_rewrite(sum));
            print_result(opts, &session, "decompose", std::move(payload));
            return 0;
        }

        if (cmd_bilocal->parsed()) {
            Session session = load_session(opts);
            auto dec = bilocal_decompose(parse_symbol_expr(expr_bilocal, session.tower));
            print_result(opts, &session, "bilocal-decompose", bilocal_json(dec));
            return 0;
        }

        if (cmd_split->parsed()) {
            Session session = load_session(opts);
            auto cert = split_top(normalize(parse_symbol_expr(expr_split, session.tower)));
            print_result(opts, &session, "split", certificate_json(cert));
            return 0;
        }

        if (cmd_period->parsed()) {
            Session session = load_session(opts);
            auto report = index_bounds(normalize(parse_symbol_expr(expr_period, session.tower)));
            print_result(opts, &session, "period-index", index_report_json(report));
            return 0;
        }

        if (cmd_common->parsed()) {
            Session session = load_session(opts);
            std::vector<CanonicalClass> classes;
            for (const auto& text : common_exprs)
                classes.push_back(normalize(parse_symbol_expr(text, session.tower)));
            print_result(opts, &session, "common-slot", common_slot_json(common_slot_local(classes)));
            return 0;
        }

        if (cmd_descend->parsed()) {
            Session session = load_session(opts);
            auto report = descend_class(session.tower, parse_symbol_expr(expr_descend, session.tower));
            print_result(opts, &session, "descend", descent_json(report));
            return 0;
        }

        if (cmd_tate->parsed()) {
            std::vector<oracle::QuaternionInput> algebras;
            for (const auto& text : tate_algebras) algebras.push_back(parse_algebra(text));
            print_result(opts, nullptr, "tate-slot", tate_json(oracle::tate_common_slot(algebras)));
            return 0;
        }

        if (cmd_hilbert->parsed()) {
            auto place = parse_place(opt_place);
            int symbol = oracle::hilbert_symbol(opt_a, opt_b, place);
            print_result(opts, nullptr, "oracle hilbert", hilbert_json(opt_a, opt_b, place, symbol));
            return 0;
        }

        std::cerr << app.help() << "\n";
        return 2;
    } catch (const CalcError& err) {
        Json payload{{"error", Json{{"kind", to_string(err.kind())}, {"message", err.what()}}}};
        if (err.position()) payload["error"]["position"] = *err.position();
        std::cout << payload.dump(2) << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cout << Json{{"error", Json{{"kind", "Internal"}, {"message", err.what()}}}}.dump(2) << "\n";
        return 3;
    }
}
