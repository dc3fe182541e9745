#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpath/error.hpp"
#include "cpath/groupoid.hpp"
#include "cpath/syntax.hpp"
#include "support.hpp"

using namespace cpath;

namespace {

Path P(const char* s) { return parse_path(s); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

struct Expected {
    const char* name;
    const char* rule;
    const char* lhs;
    const char* rhs;
    const char* type;
};

// s(s(x)) = s(t(x)) and t(s(x)) = t(t(x)) with endpoints recomputed from
// the constructors.
bool oracle_globular(const Path& x) {
    using testing::oracle_source;
    using testing::oracle_target;
    Endpoint s = oracle_source(x), t = oracle_target(x);
    if (!s.is_path() || !t.is_path()) return true;
    return endpoint_eq(oracle_source(s.path()), oracle_source(t.path())) &&
           endpoint_eq(oracle_target(s.path()), oracle_target(t.path()));
}

}  // namespace

TEST_CASE("the six laws and their inhabitants") {
    const Expected expected[] = {
        {"assoc", "tt", "τ(τ(p,q),r)", "τ(p,τ(q,r))", "Id_{Id_A(x,z)}(τ(τ(p,q),r),τ(p,τ(q,r)))"},
        {"left_unit", "tlr", "τ(ρ,r)", "r", "Id_{Id_A(x,y)}(τ(ρ,r),r)"},
        {"right_unit", "trr", "τ(r,ρ)", "r", "Id_{Id_A(x,y)}(τ(r,ρ),r)"},
        {"left_inverse", "tsr", "τ(σ(r),r)", "ρ", "Id_{Id_A(y,y)}(τ(σ(r),r),ρ)"},
        {"right_inverse", "tr", "τ(r,σ(r))", "ρ", "Id_{Id_A(x,x)}(τ(r,σ(r)),ρ)"},
        {"double_sym", "ss", "σ(σ(r))", "r", "Id_{Id_A(x,y)}(σ(σ(r)),r)"},
    };
    const auto& laws = groupoid_laws();
    REQUIRE(laws.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        const Expected& e = expected[i];
        CAPTURE(e.name);
        LawWitness w = verify_law(laws[i]);
        CHECK(laws[i].name == e.name);
        CHECK(rule_name(laws[i].witness_rule) == e.rule);
        CHECK(to_ground(w.lhs) == e.lhs);
        CHECK(to_ground(w.rhs) == e.rhs);
        CHECK(path_eq(w.normal_form, w.rhs));
        // One rule step, exactly the law's own rule.
        REQUIRE(w.inhabitant.kind() == PathKind::RuleStep);
        CHECK(w.inhabitant.rule() == laws[i].witness_rule);
        CHECK(to_ground(w.inhabitant) == std::string(e.rule) + "(" + e.lhs + "," + e.rhs + ")");
        CHECK(to_notation(w.judgment.type) == e.type);
        CHECK(judgment_eq(check(w.derivation), w.judgment));
        // witness: lhs -> rhs, one level up
        CHECK(w.witness.level() == 1);
        CHECK(path_eq(w.witness.source().path(), w.lhs));
        CHECK(path_eq(w.witness.target().path(), w.rhs));
        CHECK(w.lhs_trace.valid());
        CHECK(w.rhs_trace.steps.empty());
    }
}

TEST_CASE("laws over composite paths") {
    const GroupoidLaw& assoc = groupoid_laws()[0];
    Path p = P("tau(#a: x -> m, #b: m -> y)");
    Path q = P("#q: y -> w");
    Path r = P("sigma(#s: z -> w)");
    LawWitness w = verify_law(assoc, {p, q, r});
    CHECK(w.lhs_trace.steps.size() == 3);  // inner tt, root tt, right tt
    CHECK(w.rhs_trace.steps.size() == 1);
    CHECK(w.inhabitant.kind() == PathKind::Tau);
    CheckResult res = check_open(w.derivation);
    CHECK(res.open.empty());
    CHECK(path_eq(w.witness.source().path(), w.lhs));
    CHECK(path_eq(w.witness.target().path(), w.rhs));

    const GroupoidLaw& inv = groupoid_laws()[4];
    LawWitness wi = verify_law(inv, {p});
    CHECK(to_ground(wi.normal_form) == "ρ");
    CHECK(check_open(wi.derivation).open.empty());
}

TEST_CASE("instantiation errors") {
    const GroupoidLaw& assoc = groupoid_laws()[0];
    CHECK(kind_of([&] { instantiate(assoc, {P("#p: x -> y")}); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { instantiate(assoc, {P("#p: x -> y"), P("#q: z -> w"), P("#r: w -> v")}); }) ==
          ErrorKind::EndpointMismatch);
}

TEST_CASE("levels") {
    CHECK(kind_of([] { level(Endpoint(parse_term("x"))); }) == ErrorKind::NotAPath);
    Path p = P("#p: x -> y");
    CHECK(level(p) == 0);
    CHECK(level(Endpoint(p)) == 0);
    Path up = normalize_path(mk_sigma(mk_sigma(p))).trace.as_path();
    CHECK(level(up) == 1);
    Path up2 = normalize_path(mk_tau(up, mk_sigma(up))).trace.as_path();
    CHECK(level(up2) == 2);
    // normalization never changes the level
    Rng rng(3);
    AtomChain chain = make_chain(2);
    for (int i = 0; i < 200; ++i) {
        Path x = decorate(rng, random_path(rng, chain, 2), 2);
        CHECK(level(normalize_path(x).normal_form) == level(x));
    }
}

TEST_CASE("globular check on hand-made towers") {
    Path theta = P("#theta: a -> b");
    Path alpha = P("#alpha: a -> b");
    Path gamma = P("#gamma: c -> d");
    Path phi = mk_atom("phi", Endpoint(theta), Endpoint(alpha));

    GlobularInstance good = tower_from_path(phi);
    CHECK(good.depth() == 3);
    CHECK(globular_check(good));

    GlobularInstance wrong_layer = good;
    wrong_layer.layers[1] = {Endpoint(theta), Endpoint(gamma)};
    CHECK(kind_of([&] { globular_check(wrong_layer); }) == ErrorKind::MalformedTower);

    GlobularInstance wrong_level = good;
    wrong_level.layers[0] = {Endpoint(theta), Endpoint(alpha)};
    CHECK(kind_of([&] { globular_check(wrong_level); }) == ErrorKind::MalformedTower);

    // phi between non-parallel paths: not globular
    Path skew = mk_atom("skew", Endpoint(theta), Endpoint(gamma));
    CHECK_FALSE(globular_check(tower_from_path(skew)));

    GlobularInstance flat{{}, theta};
    CHECK(kind_of([&] { globular_check(flat); }) == ErrorKind::InvalidArgument);
    CHECK(globular_check(tower_from_path(theta)));
}

TEST_CASE("property: random towers are globular") {
    Rng rng(99);
    std::size_t deep = 0;
    for (int i = 0; i < 300; ++i) {
        std::size_t depth = 2 + i % 3;
        GlobularInstance t = random_tower(rng, depth);
        CHECK(t.depth() == depth);
        CHECK(level(t.top) == depth - 2);
        CHECK(globular_check(t));
        CHECK(oracle_globular(t.top));
        for (std::size_t k = 1; k < t.layers.size(); ++k) {
            CHECK(oracle_globular(t.layers[k].first.path()));
            CHECK(oracle_globular(t.layers[k].second.path()));
        }
        if (depth == 4) ++deep;
    }
    CHECK(deep == 100);
    GlobularReport r = globular_property(7, 200, 4);
    CHECK(r.towers == 200);
    CHECK(r.failures == 0);
    CHECK(r.depth_histogram[2] + r.depth_histogram[3] + r.depth_histogram[4] == 200);
    CHECK_THROWS_AS(random_tower(rng, 1), Error);
}

TEST_CASE("property: random rule applications preserve endpoints") {
    EndpointReport r = endpoint_property(17, 2000);
    CHECK(r.applications == 2000);
    CHECK(r.failures == 0);

    Rng rng(18);
    AtomChain chain = make_chain(3);
    int applied = 0;
    for (int i = 0; i < 1000; ++i) {
        Path p = random_path(rng, chain, 3);
        auto ps = positions(p);
        const Position& at = ps[std::uniform_int_distribution<std::size_t>(0, ps.size() - 1)(rng)];
        for (RuleId rule : kAllRules) {
            if (!match_rule(p, at) || !rule_matches(rule, subpath_at(p, at))) continue;
            Path q = apply_rule(p, at, rule);
            ++applied;
            CHECK(endpoint_eq(testing::oracle_source(q), testing::oracle_source(p)));
            CHECK(endpoint_eq(testing::oracle_target(q), testing::oracle_target(p)));
        }
    }
    CHECK(applied > 100);
}

TEST_CASE("random paths are deterministic per seed") {
    AtomChain chain = make_chain(3);
    Rng a(5), b(5);
    for (int i = 0; i < 50; ++i) CHECK(to_string(random_path(a, chain, 3)) == to_string(random_path(b, chain, 3)));
    Rng c(1);
    Path d = decorate(c, P("#p: x -> y"), 3);
    CHECK(endpoint_eq(d.source(), P("#p: x -> y").source()));
    CHECK(endpoint_eq(d.target(), P("#p: x -> y").target()));
}
