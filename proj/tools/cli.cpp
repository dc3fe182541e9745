#include "cpath/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cpath/error.hpp"
#include "cpath/groupoid.hpp"
#include "cpath/harness.hpp"
#include "cpath/kernel.hpp"
#include "cpath/rewrite.hpp"
#include "cpath/syntax.hpp"

namespace cpath {

namespace {

using json = nlohmann::json;

enum class Format { text, records, json };

struct Options {
    Format format = Format::text;
    std::size_t fuel = 1000;
    bool from_file = false;

    // parse
    std::string kind = "term";
    std::string input;
    // path
    std::string lhs, rhs;
    // check
    std::string file;
    std::string builtin;
    // globular
    std::uint64_t seed = 2024;
    std::size_t count = 1000;
    std::size_t depth = 4;
    // joinability
    std::size_t atoms = 2;
    std::size_t max_nodes = 6;
    std::size_t budget = kDefaultBudget;
    bool serial = false;
};

std::string read_file(const std::string& name) {
    std::ifstream in(name, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string position_text(const Position& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + "]";
}

// Emits a single JSON document, or one line per record.
void emit(std::ostream& out, Format f, const json& doc, const std::vector<json>& records) {
    if (f == Format::json) {
        out << doc.dump(2) << '\n';
    } else {
        for (const json& r : records) out << r.dump() << '\n';
    }
}

json path_summary(const Path& p) {
    return {{"path", to_string(p)},
            {"ground", to_ground(p)},
            {"source", to_string(p.source())},
            {"target", to_string(p.target())},
            {"level", p.level()},
            {"nodes", p.size()}};
}

int cmd_parse(const Options& o, std::ostream& out) {
    std::string text = o.from_file ? read_file(o.input) : o.input;
    json rec = {{"record", "parse"}, {"kind", o.kind}};
    if (o.kind == "term") {
        Term t = parse_term(text);
        rec["canonical"] = to_string(t);
        rec["notation"] = to_notation(t);
    } else if (o.kind == "path") {
        Path p = parse_path(text);
        rec.update(path_summary(p));
    } else if (o.kind == "judgment") {
        Judgment j = parse_judgment(text);
        rec["canonical"] = to_sexpr(j);
        rec["notation"] = to_notation(j);
    } else if (o.kind == "derivation") {
        Derivation d = parse_derivation(text);
        rec["canonical"] = to_sexpr(d);
        rec["notation"] = to_notation(d.conclusion);
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown kind " + o.kind);
    }
    if (o.format != Format::text) {
        emit(out, o.format, rec, {rec});
    } else if (o.kind == "path") {
        out << rec["path"].get<std::string>() << '\n'
            << "ground: " << rec["ground"].get<std::string>() << '\n'
            << "source: " << rec["source"].get<std::string>() << '\n'
            << "target: " << rec["target"].get<std::string>() << '\n'
            << "level " << rec["level"] << ", " << rec["nodes"] << " nodes\n";
    } else {
        out << rec["canonical"].get<std::string>() << '\n' << rec["notation"].get<std::string>() << '\n';
    }
    return kExitOk;
}

int cmd_path(const Options& o, std::ostream& out) {
    Term m = parse_term(o.from_file ? read_file(o.lhs) : o.lhs);
    Term n = parse_term(o.from_file ? read_file(o.rhs) : o.rhs);
    std::optional<Path> p;
    try {
        p = find_betaeta_path(m, n, o.fuel);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::FuelExhausted) throw;
    }
    if (!p) {
        json rec = {{"record", "path"}, {"joinable", false}, {"lhs", to_string(m)}, {"rhs", to_string(n)},
                    {"fuel", o.fuel}};
        if (o.format == Format::text)
            out << "not joinable within fuel " << o.fuel << '\n';
        else
            emit(out, o.format, rec, {rec});
        return kExitDomainFailure;
    }
    std::size_t basic =
        count_kind(*p, PathKind::Beta) + count_kind(*p, PathKind::Eta) + count_kind(*p, PathKind::Alpha);
    json rec = path_summary(*p);
    rec["record"] = "path";
    rec["joinable"] = true;
    rec["basic_steps"] = basic;
    rec["tau_nodes"] = count_kind(*p, PathKind::Tau);
    if (o.format == Format::text) {
        out << to_string(*p) << '\n'
            << "ground: " << to_ground(*p) << '\n'
            << basic << " basic steps, " << count_kind(*p, PathKind::Tau) << " tau nodes\n";
    } else {
        emit(out, o.format, rec, {rec});
    }
    return kExitOk;
}

int cmd_normalize(const Options& o, std::ostream& out) {
    Path p = parse_path(o.from_file ? read_file(o.input) : o.input);
    PathNormalization n = normalize_path(p);
    if (o.format == Format::text) {
        out << "normal form: " << to_string(n.normal_form) << '\n'
            << "ground: " << to_ground(n.normal_form) << '\n'
            << n.trace.steps.size() << " step(s)\n";
        for (std::size_t i = 0; i < n.trace.steps.size(); ++i) {
            const RewriteStep& s = n.trace.steps[i];
            out << "  " << (i + 1) << ". " << rule_name(s.rule) << " at " << position_text(s.position) << ": "
                << to_ground(s.before) << " => " << to_ground(s.after) << '\n';
        }
        return kExitOk;
    }
    json doc = trace_to_json(n.trace);
    std::vector<json> records;
    for (const RewriteStep& s : n.trace.steps) {
        json r = step_to_json(s);
        r["record"] = "step";
        records.push_back(std::move(r));
    }
    records.push_back({{"record", "normal_form"},
                       {"initial", to_string(n.trace.initial)},
                       {"final", to_string(n.normal_form)},
                       {"steps", n.trace.steps.size()}});
    emit(out, o.format, doc, records);
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    std::vector<std::pair<std::string, Derivation>> jobs;
    if (!o.builtin.empty()) {
        auto all = builtin_constructions();
        if (o.builtin == "all") {
            for (const char* name : {"refl", "symm", "trans"}) jobs.emplace_back(name, all.at(name));
        } else if (auto it = all.find(o.builtin); it != all.end()) {
            jobs.emplace_back(it->first, it->second);
        } else {
            throw Error(ErrorKind::InvalidArgument, "no built-in construction named " + o.builtin);
        }
    } else {
        if (o.file.empty()) throw Error(ErrorKind::InvalidArgument, "check needs a file or --builtin");
        std::string text = read_file(o.file);
        try {
            jobs.emplace_back(o.file, parse_derivation(text));
        } catch (const ParseError& e) {
            err << o.file << ':' << e.line() << ':' << e.column() << ": " << e.what() << '\n';
            return kExitUsage;
        }
    }

    int status = kExitOk;
    std::vector<json> records;
    for (const auto& [name, d] : jobs) {
        json rec = {{"record", "check"}, {"name", name}};
        try {
            Judgment j = check(d);
            rec["accepted"] = true;
            rec["judgment"] = to_notation(j);
            if (o.format == Format::text) out << name << ": " << to_notation(j) << '\n';
        } catch (const Error& e) {
            rec["accepted"] = false;
            rec["error"] = std::string(to_string(e.kind()));
            rec["message"] = e.what();
            if (o.format == Format::text) err << name << ':' << e.what() << " [" << to_string(e.kind()) << "]\n";
            status = kExitDomainFailure;
        }
        records.push_back(std::move(rec));
    }
    if (o.format != Format::text) emit(out, o.format, json(records), records);
    return status;
}

int cmd_groupoid(const Options& o, std::ostream& out) {
    std::vector<json> records;
    for (const GroupoidLaw& law : groupoid_laws()) {
        LawWitness w = verify_law(law);
        json rec = {{"record", "law"},
                    {"name", law.name},
                    {"rule", std::string(rule_name(law.witness_rule))},
                    {"lhs", to_ground(w.lhs)},
                    {"rhs", to_ground(w.rhs)},
                    {"normal_form", to_ground(w.normal_form)},
                    {"witness", to_ground(w.witness)},
                    {"inhabitant", to_ground(w.inhabitant)},
                    {"type", to_notation(w.judgment.type)}};
        if (o.format == Format::text)
            out << law.name << ": " << to_ground(w.lhs) << " = " << to_ground(w.rhs) << '\n'
                << "  normal form " << to_ground(w.normal_form) << '\n'
                << "  witness " << to_ground(w.witness) << '\n'
                << "  " << to_notation(w.judgment) << '\n';
        records.push_back(std::move(rec));
    }
    if (o.format != Format::text) emit(out, o.format, json(records), records);
    return kExitOk;
}

int cmd_globular(const Options& o, std::ostream& out) {
    if (o.depth < 2 || o.depth > 6) throw Error(ErrorKind::InvalidArgument, "--depth must lie in 2..6");
    GlobularReport r = globular_property(o.seed, o.count, o.depth);
    json rec = {{"record", "globular"},     {"seed", o.seed},
                {"towers", r.towers},       {"max_depth", o.depth},
                {"objects_checked", r.objects_checked}, {"failures", r.failures},
                {"depth_histogram", r.depth_histogram}};
    if (o.format == Format::text)
        out << r.towers << " towers (seed " << o.seed << ", depth <= " << o.depth << "), " << r.objects_checked
            << " objects checked, " << r.failures << " failure(s)\n";
    else
        emit(out, o.format, rec, {rec});
    return r.failures == 0 ? kExitOk : kExitDomainFailure;
}

int cmd_joinability(const Options& o, std::ostream& out) {
    if (o.max_nodes > kMaxHarnessNodes)
        throw Error(ErrorKind::InvalidArgument, "--max-nodes is limited to " + std::to_string(kMaxHarnessNodes));
    JoinabilityReport r = o.serial ? joinability_harness_serial(o.atoms, o.max_nodes, o.budget)
                                   : joinability_harness(o.atoms, o.max_nodes, o.budget);
    if (o.format == Format::json) {
        out << r.to_json().dump(2) << '\n';
    } else if (o.format == Format::records) {
        for (const std::string& line : r.to_records()) out << line << '\n';
    } else {
        out << r.subjects << " subjects (" << o.atoms << " atoms, <= " << o.max_nodes << " nodes), "
            << r.reducts_explored << " reducts explored\n";
        if (r.all_joinable()) out << "every subject has a unique normal form\n";
        for (const Divergence& d : r.divergences)
            out << "not joinable: " << to_ground(d.subject) << " ->* " << to_ground(d.left.final_path()) << " and "
                << to_ground(d.right.final_path()) << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Computational-path identity kernel", "cpath"};
    app.require_subcommand(1);
    Options o;
    std::string format = "text";
    app.add_option("--format", format, "text, records (line-delimited JSON) or json")
        ->check(CLI::IsMember({"text", "records", "json"}))
        ->capture_default_str();
    app.add_option("--fuel", o.fuel, "Contraction budget for term normalization")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_flag("--file", o.from_file, "Read inline inputs from the named files");
    app.fallthrough();

    auto* parse = app.add_subcommand("parse", "Parse and re-print a term, path, judgment or derivation");
    parse->add_option("--kind", o.kind)->check(CLI::IsMember({"term", "path", "judgment", "derivation"}));
    parse->add_option("input", o.input)->required();

    auto* path = app.add_subcommand("path", "Find a beta-eta path between two terms");
    path->add_option("M", o.lhs)->required();
    path->add_option("N", o.rhs)->required();

    auto* norm = app.add_subcommand("normalize-path", "Normalize a path and print the rewrite trace");
    norm->add_option("path", o.input)->required();

    auto* chk = app.add_subcommand("check", "Check a derivation file");
    chk->add_option("file", o.file);
    chk->add_option("--builtin", o.builtin, "refl, symm, trans or all");

    auto* grp = app.add_subcommand("groupoid", "Verify the six groupoid laws");

    auto* glob = app.add_subcommand("globular", "Randomized globular-identity property");
    glob->add_option("--seed", o.seed)->capture_default_str();
    glob->add_option("--count", o.count)->capture_default_str();
    glob->add_option("--depth", o.depth, "Maximum tower depth")->capture_default_str();

    auto* join = app.add_subcommand("joinability", "Exhaustive joinability report for small paths");
    join->add_option("--atoms", o.atoms)->check(CLI::Range(std::size_t{1}, kMaxHarnessAtoms))->capture_default_str();
    join->add_option("--max-nodes", o.max_nodes)->check(CLI::PositiveNumber)->capture_default_str();
    join->add_option("--budget", o.budget)->check(CLI::PositiveNumber)->capture_default_str();
    join->add_flag("--serial", o.serial, "Use the single-threaded reference");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    o.format = format == "records" ? Format::records : format == "json" ? Format::json : Format::text;

    try {
        if (*parse) return cmd_parse(o, out);
        if (*path) return cmd_path(o, out);
        if (*norm) return cmd_normalize(o, out);
        if (*chk) return cmd_check(o, out, err);
        if (*grp) return cmd_groupoid(o, out);
        if (*glob) return cmd_globular(o, out);
        if (*join) return cmd_joinability(o, out);
    } catch (const ParseError& e) {
        err << "parse error at " << e.line() << ':' << e.column() << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitDomainFailure;
    }
    return kExitUsage;
}

}  // namespace cpath
