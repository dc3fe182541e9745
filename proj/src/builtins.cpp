#include "cpath/kernel.hpp"

namespace cpath {

namespace {

using PT = ProofTerm;

Derivation node(Rule rule, Judgment conclusion, std::vector<Derivation> premises = {},
                std::vector<std::string> discharged = {}, Axiom axiom = Axiom::None) {
    Derivation d;
    d.rule = rule;
    d.axiom = axiom;
    d.conclusion = std::move(conclusion);
    d.premises = std::move(premises);
    d.discharged = std::move(discharged);
    return d;
}

Derivation hyp(std::string label, Judgment j) {
    Derivation d = node(Rule::Hyp, std::move(j));
    d.label = std::move(label);
    return d;
}

Derivation axiom(Axiom ax, Judgment j, std::vector<Derivation> premises) {
    return node(Rule::EqAxiom, std::move(j), std::move(premises), {}, ax);
}

struct Vocabulary {
    TypeExpr A = TypeExpr::base("A");
    PT a = PT::var("a"), b = PT::var("b"), c = PT::var("c");
    Term ta = Term::var("a"), tb = Term::var("b"), tc = Term::var("c");

    TypeExpr id(const PT& l, const PT& r) const { return TypeExpr::id(A, l, r); }
    Judgment elem(const PT& x) const { return Judgment::typing(x, A); }
};

// λa.ρ(a,a) : Π_(a:A)Id_A(a,a)
Derivation refl() {
    Vocabulary v;
    Path rho = mk_rho(v.ta);
    Derivation eq = axiom(Axiom::Rho, Judgment::path_eq(v.a, rho, v.a, v.A), {hyp("a", v.elem(v.a))});
    PT w = PT::witness(rho, v.a, v.a);
    Derivation intro = node(Rule::IdI1, Judgment::typing(w, v.id(v.a, v.a)), {eq});
    return node(Rule::PiI, Judgment::typing(PT::lam("a", w), TypeExpr::pi("a", v.A, v.id(v.a, v.a))), {intro},
                {"a"});
}

// λa.λb.λp.REWR(p, t.(σ(t))(b,a)) : Π_(a:A)Π_(b:A)(Id_A(a,b) → Id_A(b,a))
Derivation symm() {
    Vocabulary v;
    Path t = mk_atom("t", v.ta, v.tb);
    Path st = mk_sigma(t);
    Derivation ht = hyp("t", Judgment::path_eq(v.a, t, v.b, v.A));
    Derivation eq = axiom(Axiom::Sigma, Judgment::path_eq(v.b, st, v.a, v.A), {ht});
    PT w = PT::witness(st, v.b, v.a);
    Derivation intro = node(Rule::IdI1, Judgment::typing(w, v.id(v.b, v.a)), {eq});
    PT p = PT::var("p");
    Derivation hp = hyp("p", Judgment::typing(p, v.id(v.a, v.b)));
    PT rewr = PT::rewr(p, "t", w);
    Derivation elim = node(Rule::IdE1, Judgment::typing(rewr, v.id(v.b, v.a)), {hp, intro}, {"t"});

    TypeExpr arrow = TypeExpr::arrow(v.id(v.a, v.b), v.id(v.b, v.a));
    PT lp = PT::lam("p", rewr);
    Derivation dp = node(Rule::PiI, Judgment::typing(lp, arrow), {elim}, {"p"});
    PT lb = PT::lam("b", lp);
    TypeExpr pib = TypeExpr::pi("b", v.A, arrow);
    Derivation db = node(Rule::PiI, Judgment::typing(lb, pib), {dp}, {"b"});
    return node(Rule::PiI, Judgment::typing(PT::lam("a", lb), TypeExpr::pi("a", v.A, pib)), {db}, {"a"});
}

// λa.λb.λc.λw.λs.REWR(w, t.REWR(s, u.(τ(t,u))(a,c)))
//   : Π_(a:A)Π_(b:A)Π_(c:A)(Id_A(a,b) → Id_A(b,c) → Id_A(a,c))
Derivation trans() {
    Vocabulary v;
    Path t = mk_atom("t", v.ta, v.tb);
    Path u = mk_atom("u", v.tb, v.tc);
    Path tu = mk_tau(t, u);
    Derivation ht = hyp("t", Judgment::path_eq(v.a, t, v.b, v.A));
    Derivation hu = hyp("u", Judgment::path_eq(v.b, u, v.c, v.A));
    Derivation eq = axiom(Axiom::Tau, Judgment::path_eq(v.a, tu, v.c, v.A), {ht, hu});
    PT wit = PT::witness(tu, v.a, v.c);
    Derivation intro = node(Rule::IdI1, Judgment::typing(wit, v.id(v.a, v.c)), {eq});

    PT s = PT::var("s"), w = PT::var("w");
    Derivation hs = hyp("s", Judgment::typing(s, v.id(v.b, v.c)));
    Derivation hw = hyp("w", Judgment::typing(w, v.id(v.a, v.b)));
    PT inner = PT::rewr(s, "u", wit);
    Derivation e_inner = node(Rule::IdE1, Judgment::typing(inner, v.id(v.a, v.c)), {hs, intro}, {"u"});
    PT outer = PT::rewr(w, "t", inner);
    Derivation e_outer = node(Rule::IdE1, Judgment::typing(outer, v.id(v.a, v.c)), {hw, e_inner}, {"t"});

    TypeExpr bc_ac = TypeExpr::arrow(v.id(v.b, v.c), v.id(v.a, v.c));
    TypeExpr ab_bc_ac = TypeExpr::arrow(v.id(v.a, v.b), bc_ac);
    PT ls = PT::lam("s", outer);
    Derivation d_s = node(Rule::PiI, Judgment::typing(ls, bc_ac), {e_outer}, {"s"});
    PT lw = PT::lam("w", ls);
    Derivation d_w = node(Rule::PiI, Judgment::typing(lw, ab_bc_ac), {d_s}, {"w"});
    TypeExpr pc = TypeExpr::pi("c", v.A, ab_bc_ac);
    PT lc = PT::lam("c", lw);
    Derivation d_c = node(Rule::PiI, Judgment::typing(lc, pc), {d_w}, {"c"});
    TypeExpr pb = TypeExpr::pi("b", v.A, pc);
    PT lb = PT::lam("b", lc);
    Derivation d_b = node(Rule::PiI, Judgment::typing(lb, pb), {d_c}, {"b"});
    return node(Rule::PiI, Judgment::typing(PT::lam("a", lb), TypeExpr::pi("a", v.A, pb)), {d_b}, {"a"});
}

}  // namespace

std::map<std::string, Derivation> builtin_constructions() {
    return {{"refl", refl()}, {"symm", symm()}, {"trans", trans()}};
}

}  // namespace cpath
