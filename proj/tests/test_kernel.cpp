#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cpath/error.hpp"
#include "cpath/kernel.hpp"
#include "cpath/rewrite.hpp"
#include "cpath/syntax.hpp"
#include "support.hpp"

using namespace cpath;
using namespace cpath::testing;

namespace {

using PT = ProofTerm;

Path P(const char* s) { return parse_path(s); }

ErrorKind check_error(const Derivation& d) {
    try {
        check(d);
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;  // sentinel: accepted
}

std::string slurp(const std::string& name) {
    std::ifstream in(name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("built-in constructions check") {
    CHECK(to_notation(check(builtin("refl"))) == "λa.ρ(a,a) : Π_(a:A)Id_A(a,a)");
    CHECK(to_notation(check(builtin("symm"))) ==
          "λa.λb.λp.REWR(p, t́.(σ(t))(b,a)) : Π_(a:A)Π_(b:A)(Id_A(a,b) → Id_A(b,a))");
    CHECK(to_notation(check(builtin("trans"))) ==
          "λa.λb.λc.λw.λs.REWR(w, t́.REWR(s, u\u0301.(τ(t,u))(a,c))) : "
          "Π_(a:A)Π_(b:A)Π_(c:A)(Id_A(a,b) → Id_A(b,c) → Id_A(a,c))");
}

TEST_CASE("mutations are rejected with the right error class") {
    auto mutations = kernel_mutations();
    CHECK(mutations.size() >= 10);
    for (const Mutation& m : mutations) {
        CAPTURE(m.name);
        CHECK(check_error(m.make()) == m.expected);
    }
}

TEST_CASE("error messages locate the offending node") {
    Derivation d = builtin("symm");
    at(d, {0, 0, 0, 1, 0}).axiom = Axiom::Tau;
    try {
        check(d);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("/0/0/0/1/0") != std::string::npos);
    }
    Derivation parsed = parse_derivation("(rule hyp (label h)\n  (conclusion (has x A)))");
    CHECK(parsed.line == 1);
    try {
        check(parsed);
        FAIL("open hypothesis accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UndischargedHypothesis);
    }
    CheckResult open = check_open(parsed);
    CHECK(open.open.size() == 1);
    CHECK(open.open.count("h"));
}

TEST_CASE("individual rules") {
    TypeExpr A = TypeExpr::base("A");
    PT a = PT::var("a"), b = PT::var("b");
    SUBCASE("Id formation") {
        Derivation ha, hb, f;
        ha.rule = hb.rule = Rule::Hyp;
        ha.label = "a";
        hb.label = "b";
        ha.conclusion = Judgment::typing(a, A);
        hb.conclusion = Judgment::typing(b, A);
        Derivation t;
        t.rule = Rule::Hyp;
        t.label = "A";
        t.conclusion = Judgment::is_type(A);
        f.rule = Rule::IdF;
        f.conclusion = Judgment::is_type(TypeExpr::id(A, a, b));
        f.premises = {t, ha, hb};
        CHECK(check_open(f).open.size() == 3);
        f.conclusion = Judgment::is_type(TypeExpr::id(A, b, a));
        CHECK_THROWS_AS(check_open(f), Error);
    }
    SUBCASE("Pi elimination") {
        Derivation fn;
        fn.rule = Rule::Hyp;
        fn.label = "f";
        fn.conclusion = Judgment::typing(PT::var("f"), TypeExpr::pi("x", A, TypeExpr::id(A, PT::var("x"), PT::var("x"))));
        Derivation arg;
        arg.rule = Rule::Hyp;
        arg.label = "a";
        arg.conclusion = Judgment::typing(a, A);
        Derivation app;
        app.rule = Rule::PiE;
        app.conclusion = Judgment::typing(PT::apply(PT::var("f"), a), TypeExpr::id(A, a, a));
        app.premises = {fn, arg};
        CHECK(to_notation(check_open(app).conclusion) == "f a : Id_A(a,a)");
        app.conclusion.type = TypeExpr::id(A, a, b);
        CHECK_THROWS_AS(check_open(app), Error);
    }
    SUBCASE("beta axiom has no premises and real endpoints") {
        Term m = parse_term("(\\x.x) a");
        Path step = mk_beta(m, {});
        Derivation ax;
        ax.rule = Rule::EqAxiom;
        ax.axiom = Axiom::Beta;
        ax.conclusion = Judgment::path_eq(PT::from_term(m), step, PT::var("a"), A);
        CHECK_NOTHROW(check(ax));
        ax.conclusion.rhs = PT::var("b");
        CHECK(check_error(ax) == ErrorKind::EndpointMismatch);
    }
    SUBCASE("rewrite axiom needs a genuine rule step") {
        Path p = P("#p: x -> y");
        Path step = mk_rule_step(RuleId::ss, mk_sigma(mk_sigma(p)), p);
        TypeExpr carrier = TypeExpr::id(A, PT::var("x"), PT::var("y"));
        Derivation ax;
        ax.rule = Rule::EqAxiom;
        ax.axiom = Axiom::Rewrite;
        ax.conclusion = Judgment::path_eq(PT::embed(mk_sigma(mk_sigma(p))), step, PT::embed(p), carrier);
        CHECK_NOTHROW(check(ax));
        ax.axiom = Axiom::Rho;
        CHECK(check_error(ax) == ErrorKind::RuleMismatch);
    }
}

TEST_CASE("derivation files round trip") {
    for (const auto& [name, d] : builtin_constructions()) {
        CAPTURE(name);
        std::string text = to_sexpr(d);
        Derivation back = parse_derivation(text);
        CHECK(to_sexpr(back) == text);
        CHECK(judgment_eq(check(back), check(d)));

        std::string stored = slurp(std::string(CPATH_DATA_DIR) + "/derivations/" + name + ".deriv");
        REQUIRE_FALSE(stored.empty());
        CHECK(judgment_eq(check(parse_derivation(stored)), check(d)));
    }
}

TEST_CASE("derivation parse errors carry positions") {
    try {
        parse_derivation("(rule pi-i\n  (conclusion (has x A))\n  (premises (rule nope (conclusion (has x A)))))");
        FAIL("unknown tag accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(parse_derivation("(rule hyp (label h) (conclusion (has x A))"), ParseError);
    CHECK_THROWS_AS(parse_derivation("(rule hyp (conclusion (has x A))) trailing"), ParseError);
    CHECK_THROWS_AS(parse_judgment("(eq a #p: x -> y)"), ParseError);
    CHECK_THROWS_AS(parse_type("(Id A a)"), ParseError);
    CHECK_NOTHROW(parse_judgment("(eq x #p: x -> y y A)"));
    CHECK(rule_from_tag("eq-rw") == std::pair{Rule::EqAxiom, Axiom::Rewrite});
    CHECK(rule_tag(Rule::IdE2, Axiom::None) == "id-e2");
    CHECK_FALSE(rule_from_tag("id-e3"));
}

TEST_CASE("syntax-level equality and substitution") {
    CHECK(pt_eq(parse_proof_term("(lam x x)"), parse_proof_term("(lam y y)")));
    CHECK(pt_eq(parse_proof_term("(rewr p t (witness #t: a -> b a b))"),
                parse_proof_term("(rewr p u (witness #u: a -> b a b))")));
    CHECK_FALSE(pt_eq(parse_proof_term("(lam x y)"), parse_proof_term("(lam y y)")));
    CHECK(type_eq(parse_type("(-> A B)"), parse_type("(Pi x A B)")));
    CHECK_FALSE(type_eq(parse_type("(-> A (Id A x x))"), parse_type("(Pi x A (Id A x x))")));

    // capture avoidance: (λb.a b)[a := b]
    PT r = substitute_pt(parse_proof_term("(lam b (app a b))"), "a", PT::var("b"));
    CHECK(pt_eq(r, parse_proof_term("(lam c (app b c))")));
    CHECK(r.name() != "b");
    CHECK(pt_occurs_free(r, "b"));

    TypeExpr t = substitute_type(parse_type("(Pi b A (Id A a b))"), "a", PT::var("b"));
    CHECK(type_eq(t, parse_type("(Pi c A (Id A b c))")));

    // path variables: REWR binds its own
    PT h = parse_proof_term("(rewr m t (witness sigma(#t: a -> b) b a))");
    CHECK_FALSE(pt_path_var_free(h, "t"));
    CHECK(pt_path_var_free(parse_proof_term("(witness #g: a -> b a b)"), "g"));
    PT w = substitute_path_var(parse_proof_term("(witness sigma(#g: a -> b) b a)"), "g", P("#p: a -> b"));
    CHECK(to_notation(w) == "(σ(p))(b,a)");
}

TEST_CASE("REWR reductions") {
    PT a = PT::var("a"), b = PT::var("b"), c = PT::var("c");
    SUBCASE("eta: REWR(e, t.t(a,b)) reduces to e in one step") {
        PT e = PT::var("e");
        PT redex = PT::rewr(e, "t", PT::witness(P("#t: a -> b"), a, b));
        RewrStep s = reduce_rewr(redex);
        CHECK(s.tag == RewrReduction::Eta);
        CHECK(pt_eq(s.term, e));
        CHECK(reduce_rewr(s.term).tag == RewrReduction::None);
    }
    SUBCASE("beta substitutes the major path for the bound variable") {
        PT redex = PT::rewr(PT::witness(P("#p: a -> b"), a, b), "t", PT::witness(P("sigma(#t: a -> b)"), b, a));
        RewrStep s = reduce_rewr(redex);
        CHECK(s.tag == RewrReduction::Beta);
        CHECK(pt_eq(s.term, PT::witness(P("sigma(#p: a -> b)"), b, a)));
    }
    SUBCASE("no redex without a witness major") {
        PT stuck = PT::rewr(PT::var("m"), "t", PT::witness(P("sigma(#t: a -> b)"), b, a));
        CHECK(reduce_rewr(stuck).tag == RewrReduction::None);
        CHECK(to_string(RewrReduction::Beta) == "beta");
    }
    SUBCASE("trans on concrete witnesses: exactly two beta steps") {
        PT body = builtin("trans").conclusion.subject.body().body().body().body().body();
        PT inst = substitute_pt(substitute_pt(body, "w", PT::witness(P("#p: a -> b"), a, b)), "s",
                                PT::witness(P("#q: b -> c"), b, c));
        RewrNormalization n = normalize_rewr(inst);
        REQUIRE(n.steps.size() == 2);
        CHECK(n.steps[0] == RewrReduction::Beta);
        CHECK(n.steps[1] == RewrReduction::Beta);
        CHECK(pt_eq(n.term, PT::witness(P("tau(#p: a -> b, #q: b -> c)"), a, c)));
        CHECK(to_notation(n.term) == "(τ(p,q))(a,c)");
    }
}

TEST_CASE("subject reduction on derivations") {
    Derivation d = instantiated_trans();
    CheckResult before = check_open(d);
    CHECK(to_notation(before.conclusion) == "REWR(p(a,b), t́.REWR(q(b,c), u\u0301.(τ(t,u))(a,c))) : Id_A(a,c)");
    std::size_t steps = 0;
    while (auto next = reduce_derivation(d)) {
        d = *next;
        ++steps;
        CheckResult after = check_open(d);
        CHECK(type_eq(after.conclusion.type, before.conclusion.type));
        for (const auto& [label, j] : after.open) CHECK(before.open.count(label));
    }
    CHECK(steps == 2);
    CHECK(to_notation(check_open(d).conclusion) == "(τ(p,q))(a,c) : Id_A(a,c)");
    CHECK(d.rule == Rule::IdI1);
}

TEST_CASE("eta on derivations returns the major premise") {
    TypeExpr A = TypeExpr::base("A");
    PT a = PT::var("a"), b = PT::var("b"), e = PT::var("e");
    Derivation major;
    major.rule = Rule::Hyp;
    major.label = "e";
    major.conclusion = Judgment::typing(e, TypeExpr::id(A, a, b));
    Derivation minor = witness_intro(P("#t: a -> b"), a, b, "t");
    Derivation elim;
    elim.rule = Rule::IdE1;
    elim.conclusion = Judgment::typing(PT::rewr(e, "t", PT::witness(P("#t: a -> b"), a, b)), TypeExpr::id(A, a, b));
    elim.premises = {major, minor};
    elim.discharged = {"t"};
    CHECK_NOTHROW(check_open(elim));
    auto r = reduce_derivation(elim);
    REQUIRE(r);
    CHECK(r->rule == Rule::Hyp);
    CHECK(pt_eq(r->conclusion.subject, e));
    CHECK_FALSE(reduce_derivation(*r));
}
