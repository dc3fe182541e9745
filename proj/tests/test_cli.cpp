#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cpath/cli.hpp"

using namespace cpath;
using nlohmann::json;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = run_cli(args, out, err);
    return {status, out.str(), err.str()};
}

std::vector<json> records(const std::string& text) {
    std::vector<json> r;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) r.push_back(json::parse(line));
    return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = std::string(P_tmpdir) + "/cpath_cli_" + name;
    std::ofstream(path) << content;
    return path;
}

const std::string kData = CPATH_DATA_DIR;

}  // namespace

TEST_CASE("path finds eta, beta, beta") {
    Run r = run({"path", "(\\x.((\\y.(y x)) (\\w.(z w))) v)", "(z v)"});
    CHECK(r.status == 0);
    CHECK(r.out.find("3 basic steps, 2 tau nodes") != std::string::npos);
    CHECK(r.out.find("τ(τ(η(") != std::string::npos);

    Run rec = run({"--format", "records", "path", "(\\x.((\\y.(y x)) (\\w.(z w))) v)", "(z v)"});
    auto rs = records(rec.out);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0]["basic_steps"] == 3);
    CHECK(rs[0]["tau_nodes"] == 2);
    CHECK(rs[0]["target"] == "(z v)");
}

TEST_CASE("path reports failures") {
    Run r = run({"path", "a", "b"});
    CHECK(r.status == 1);
    CHECK(r.out.find("not joinable within fuel") != std::string::npos);
    Run omega = run({"--fuel", "30", "path", "(\\x.(x x)) (\\x.(x x))", "a"});
    CHECK(omega.status == 1);
    Run bad = run({"path", "(a", "b"});
    CHECK(bad.status == 2);
    CHECK(bad.err.find("parse error at 1:") != std::string::npos);
    CHECK(run({"--fuel", "0", "path", "a", "a"}).status == 2);
}

TEST_CASE("normalize-path prints the normal form and an ss trace") {
    Run r = run({"normalize-path", "sigma(sigma(#r: a -> b))"});
    CHECK(r.status == 0);
    CHECK(r.out.find("normal form: #r: a -> b") != std::string::npos);
    CHECK(r.out.find("1 step(s)") != std::string::npos);
    CHECK(r.out.find("ss at []") != std::string::npos);

    Run rec = run({"--format", "records", "normalize-path", "tau(tau(sigma(#p: x -> y), #p: x -> y), #q: y -> z)"});
    auto rs = records(rec.out);
    REQUIRE(rs.size() == 3);
    CHECK(rs[0]["record"] == "step");
    CHECK(rs[0]["rule"] == "tsr");
    CHECK(rs[0]["position"] == json::array({0}));
    CHECK(rs[1]["rule"] == "tlr");
    CHECK(rs[2]["record"] == "normal_form");
    CHECK(rs[2]["final"] == "#q: y -> z");
    CHECK(rs[2]["steps"] == 2);

    Run doc = run({"--format", "json", "normalize-path", "sigma(sigma(#r: a -> b))"});
    json d = json::parse(doc.out);
    CHECK(d["final"] == "#r: a -> b");
    CHECK(d["steps"].size() == 1);
}

TEST_CASE("check: files, built-ins and failures") {
    Run missing = run({"check", "nonexistent.deriv"});
    CHECK(missing.status == 2);

    for (const char* name : {"refl", "symm", "trans"}) {
        Run r = run({"check", kData + "/derivations/" + name + ".deriv"});
        CAPTURE(name);
        CHECK(r.status == 0);
        CHECK(r.out.find(" : Π_(a:A)") != std::string::npos);
    }
    Run all = run({"--format", "records", "check", "--builtin", "all"});
    CHECK(all.status == 0);
    auto rs = records(all.out);
    REQUIRE(rs.size() == 3);
    for (const json& j : rs) CHECK(j["accepted"] == true);

    std::string rejected = temp_file("rejected.deriv",
                                     "(rule id-i1\n"
                                     "  (conclusion (has (witness #p: a -> b b a) (Id A b a)))\n"
                                     "  (premises (rule hyp (label p) (conclusion (eq a #p: a -> b b A)))))\n");
    Run rej = run({"check", rejected});
    CHECK(rej.status == 1);
    CHECK(rej.err.find("EndpointMismatch") != std::string::npos);

    std::string garbled = temp_file("garbled.deriv", "(rule hyp\n  (conclusion (has x A)\n");
    Run g = run({"check", garbled});
    CHECK(g.status == 2);
    CHECK(g.err.find(garbled + ":") == 0);

    CHECK(run({"check", "--builtin", "nope"}).status == 2);
    CHECK(run({"check"}).status == 2);
}

TEST_CASE("groupoid prints six law records") {
    Run r = run({"--format", "records", "groupoid"});
    CHECK(r.status == 0);
    auto rs = records(r.out);
    REQUIRE(rs.size() == 6);
    CHECK(rs[0]["name"] == "assoc");
    CHECK(rs[0]["type"] == "Id_{Id_A(x,z)}(τ(τ(p,q),r),τ(p,τ(q,r)))");
    CHECK(rs[0]["inhabitant"] == "tt(τ(τ(p,q),r),τ(p,τ(q,r)))");
    for (const json& j : rs) {
        CHECK(j.contains("lhs"));
        CHECK(j.contains("rhs"));
        CHECK(j.contains("normal_form"));
        CHECK(j.contains("witness"));
    }
    Run text = run({"groupoid"});
    CHECK(text.out.find("double_sym: σ(σ(r)) = r") != std::string::npos);
}

TEST_CASE("globular and joinability") {
    Run g = run({"--format", "records", "globular", "--seed", "3", "--count", "50"});
    CHECK(g.status == 0);
    auto gs = records(g.out);
    REQUIRE(gs.size() == 1);
    CHECK(gs[0]["towers"] == 50);
    CHECK(gs[0]["failures"] == 0);
    CHECK(run({"globular", "--depth", "1"}).status == 2);

    Run j = run({"--format", "records", "joinability", "--atoms", "2", "--max-nodes", "6"});
    CHECK(j.status == 0);
    auto js = records(j.out);
    REQUIRE(js.size() >= 2);
    CHECK(js[0]["record"] == "summary");
    bool found = false;
    for (const json& rec : js)
        if (rec["record"] == "divergence" && rec["subject"] == "tau(tau(sigma(#p: x -> y), #p: x -> y), #q: y -> w)")
            found = true;
    CHECK(found);

    Run serial = run({"--format", "json", "joinability", "--max-nodes", "5", "--serial"});
    Run parallel = run({"--format", "json", "joinability", "--max-nodes", "5"});
    CHECK(json::parse(serial.out) == json::parse(parallel.out));
    CHECK(run({"joinability", "--max-nodes", "20"}).status == 2);
    CHECK(run({"joinability", "--max-nodes", "8", "--budget", "10"}).status == 1);
}

TEST_CASE("parse and usage") {
    Run t = run({"parse", "λx.(f x)"});
    CHECK(t.status == 0);
    CHECK(t.out.rfind("(\\x.(f x))\n", 0) == 0);
    Run p = run({"--format", "records", "parse", "--kind", "path", "tau(#p: x -> y, rho[y])"});
    auto ps = records(p.out);
    REQUIRE(ps.size() == 1);
    CHECK(ps[0]["ground"] == "τ(p,ρ)");
    CHECK(ps[0]["nodes"] == 3);
    std::string f = temp_file("term.txt", "(\\x.x) y");
    CHECK(run({"--file", "parse", f}).status == 0);
    CHECK(run({}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"--format", "xml", "groupoid"}).status == 2);
    Run help = run({"--help"});
    CHECK(help.status == 0);
    CHECK(help.out.find("normalize-path") != std::string::npos);
}
