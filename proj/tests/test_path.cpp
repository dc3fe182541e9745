#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpath/error.hpp"
#include "cpath/groupoid.hpp"
#include "cpath/path.hpp"
#include "cpath/rewrite.hpp"
#include "cpath/syntax.hpp"
#include "support.hpp"

using namespace cpath;

namespace {

Term T(const char* s) { return parse_term(s); }
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

}  // namespace

TEST_CASE("the worked example: eta, beta, beta composed by two taus") {
    Term m = T("(\\x.((\\y.(y x)) (\\w.(z w))) v)");
    Term n = T("z v");
    auto p = find_betaeta_path(m, n, 1000);
    REQUIRE(p);
    CHECK(to_ground(*p) ==
          "τ(τ(η((λx.(λy.yx)(λw.zw))v,(λx.(λy.yx)z)v),β((λx.(λy.yx)z)v,(λy.yv)z)),β((λy.yv)z,zv))");
    CHECK(count_kind(*p, PathKind::Tau) == 2);
    CHECK(count_kind(*p, PathKind::Beta) == 2);
    CHECK(count_kind(*p, PathKind::Eta) == 1);
    CHECK(p->kind() == PathKind::Tau);
    CHECK(p->left().left().kind() == PathKind::Eta);
    CHECK(alpha_eq(p->source().term(), m));
    CHECK(alpha_eq(p->target().term(), n));
    CHECK(p->level() == 0);
    CHECK(p->size() == 5);
}

TEST_CASE("path search: both sides reduce, alpha bridge, failure") {
    // n reduces as well: the second half is reversed with sigma.
    auto p = find_betaeta_path(T("(\\x.x) a"), T("(\\y.y) a"), 100);
    REQUIRE(p);
    CHECK(alpha_eq(p->source().term(), T("(\\x.x) a")));
    CHECK(alpha_eq(p->target().term(), T("(\\y.y) a")));
    CHECK(count_kind(*p, PathKind::Sigma) == 1);

    auto same = find_betaeta_path(T("a"), T("a"), 10);
    REQUIRE(same);
    CHECK(same->kind() == PathKind::Rho);

    auto bridge = find_betaeta_path(T("\\x.(x x)"), T("\\y.(y y)"), 10);
    REQUIRE(bridge);
    CHECK(count_kind(*bridge, PathKind::Alpha) <= 1);

    CHECK_FALSE(find_betaeta_path(T("a"), T("b"), 10));
    CHECK(kind_of([] { find_betaeta_path(T("(\\x.(x x)) (\\x.(x x))"), T("a"), 20); }) == ErrorKind::FuelExhausted);
}

TEST_CASE("construction validates endpoints") {
    Path p = P("#p: x -> y");
    Path q = P("#q: y -> z");
    CHECK_NOTHROW(mk_tau(p, q));
    CHECK(kind_of([&] { mk_tau(q, p); }) == ErrorKind::EndpointMismatch);
    Path s = mk_sigma(p);
    CHECK(alpha_eq(s.source().term(), T("y")));
    CHECK(alpha_eq(s.target().term(), T("x")));
    // tau endpoints agree up to alpha
    Path a = mk_atom("a", T("\\u.u"), T("m"));
    Path b = mk_atom("b", T("\\v.v"), T("n"));
    CHECK_NOTHROW(mk_tau(mk_sigma(a), b));
    CHECK_THROWS_AS(P("tau(#p: x -> y, #q: z -> w)"), ParseError);
}

TEST_CASE("path equality and basic steps") {
    Term m = T("(\\x.(f x)) a");
    Path b1 = mk_beta(m, {});
    Path b2 = mk_beta(T("(\\y.(f y)) a"), {});
    CHECK(path_eq(b1, b2));
    CHECK(alpha_eq(b1.target().term(), T("f a")));
    CHECK_FALSE(path_eq(P("#p: x -> y"), P("#q: x -> y")));
    CHECK(path_eq(P("sigma(#p: x -> y)"), mk_sigma(P("#p: x -> y"))));
    CHECK_THROWS_AS(mk_beta(T("f a"), {}), Error);
    CHECK_THROWS_AS(mk_eta(T("\\x.(x x)"), {}), Error);
    CHECK_NOTHROW(mk_alpha(T("\\x.x"), T("\\y.y")));
    CHECK_THROWS_AS(mk_alpha(T("\\x.x"), T("\\y.z")), Error);
}

TEST_CASE("history paths must be consecutive") {
    Term m = T("(\\x.x) ((\\y.y) a)");
    auto n = normalize_term(m, 10);
    Path p = path_from_history(m, n.history);
    CHECK(alpha_eq(p.target().term(), T("a")));
    CHECK(path_from_history(m, {}).kind() == PathKind::Rho);

    auto other = normalize_term(T("(\\z.z) b"), 10).history;
    CHECK(kind_of([&] { path_from_history(m, other); }) == ErrorKind::NonConsecutive);
}

TEST_CASE("higher paths and congruences") {
    Path p = P("#p: x -> y");
    Path rs = mk_rule_step(RuleId::ss, mk_sigma(mk_sigma(p)), p);
    CHECK(rs.level() == 1);
    CHECK(to_ground(rs) == "ss(σ(σ(p)),p)");
    Path up = mk_atom("h", Endpoint(p), Endpoint(p));
    CHECK(up.level() == 1);
    CHECK(kind_of([&] { mk_atom("bad", Endpoint(p), Endpoint(T("x"))); }) == ErrorKind::EndpointMismatch);
    CHECK(kind_of([&] { mk_atom("no good", T("x"), T("y")); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { mk_rule_step(RuleId::ss, p, p); }) == ErrorKind::RuleMismatch);

    Path xi = mk_xi("u", mk_beta(T("(\\x.x) u"), {}));
    CHECK(alpha_eq(xi.source().term(), T("\\u.((\\x.x) u)")));
    Path mu = mk_mu(T("f"), p);
    CHECK(alpha_eq(mu.target().term(), T("f y")));
    Path nu = mk_nu(p, T("a"));
    CHECK(alpha_eq(nu.source().term(), T("x a")));
}

TEST_CASE("atom substitution and renaming") {
    Path pq = P("tau(#p: x -> y, #q: y -> z)");
    Path two = P("tau(#p1: x -> m, #p2: m -> y)");
    Path r = substitute_atom(pq, "p", two);
    CHECK(path_eq(r, P("tau(tau(#p1: x -> m, #p2: m -> y), #q: y -> z)")));
    CHECK_FALSE(atom_occurs(r, "p"));
    CHECK(atom_occurs(r, "p2"));
    Path renamed = rename_atom(pq, "q", "k");
    CHECK(path_eq(renamed, P("tau(#p: x -> y, #k: y -> z)")));
    std::set<std::string> names;
    collect_atom_names(r, names);
    CHECK(names == std::set<std::string>{"p1", "p2", "q"});

    Path ts = substitute_term(P("#p: x -> (f x)"), "x", T("a"));
    CHECK(alpha_eq(ts.target().term(), T("f a")));
    CHECK(term_var_occurs_free(pq, "y"));
    CHECK_FALSE(term_var_occurs_free(ts, "x"));
}

TEST_CASE("printing") {
    CHECK(to_ground(P("tau(rho[x], #p: x -> y)")) == "τ(ρ,p)");
    CHECK(to_ground(P("sigma(sigma(#r: a -> b))")) == "σ(σ(r))");
    CHECK(to_string(P("#p: x -> y")) == "#p: x -> y");
    CHECK(to_string(PathKind::Tau) == "tau");
    CHECK(rule_name(RuleId::tsr) == "tsr");
    CHECK(rule_from_name("tlr") == RuleId::tlr);
    CHECK_FALSE(rule_from_name("xx"));
}

TEST_CASE("property: concrete syntax round trip and cached endpoints") {
    Rng rng(5);
    AtomChain chain = make_chain(3);
    for (int i = 0; i < 500; ++i) {
        Path p = random_path(rng, chain, 3);
        Path back = parse_path(to_string(p));
        CHECK(path_eq(back, p));
        CHECK(to_string(back) == to_string(p));
        CHECK(endpoint_eq(p.source(), testing::oracle_source(p)));
        CHECK(endpoint_eq(p.target(), testing::oracle_target(p)));
    }
    // Higher paths too: traces read as paths.
    for (int i = 0; i < 100; ++i) {
        Path p = decorate(rng, random_path(rng, chain, 2), 2);
        Path up = normalize_path(p).trace.as_path();
        Path back = parse_path(to_string(up));
        CHECK(path_eq(back, up));
        CHECK(up.level() == 1);
    }
}
