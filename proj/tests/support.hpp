#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "cpath/error.hpp"
#include "cpath/kernel.hpp"
#include "cpath/path.hpp"

namespace cpath::testing {

inline Derivation& at(Derivation& d, std::initializer_list<std::size_t> route) {
    Derivation* cur = &d;
    for (std::size_t i : route) cur = &cur->premises.at(i);
    return *cur;
}

inline Derivation builtin(const std::string& name) { return builtin_constructions().at(name); }

struct Mutation {
    std::string name;
    ErrorKind expected;
    std::function<Derivation()> make;
};

// Systematic damage to the three built-in constructions. Routes follow their
// shapes: refl = PiI[IdI1[eq-rho[hyp a]]], symm = PiI^3[IdE1[hyp p,
// IdI1[eq-sigma[hyp t]]]], trans = PiI^5[IdE1[hyp w, IdE1[hyp s,
// IdI1[eq-tau[hyp t, hyp u]]]]].
inline std::vector<Mutation> kernel_mutations() {
    TypeExpr A = TypeExpr::base("A");
    ProofTerm a = ProofTerm::var("a"), b = ProofTerm::var("b"), c = ProofTerm::var("c");
    std::vector<Mutation> m;

    m.push_back({"symm: sigma axiom with swapped endpoints", ErrorKind::EndpointMismatch, [=] {
                     Derivation d = builtin("symm");
                     Judgment& j = at(d, {0, 0, 0, 1, 0}).conclusion;
                     std::swap(j.lhs, j.rhs);
                     return d;
                 }});
    m.push_back({"trans: witness with swapped endpoints", ErrorKind::EndpointMismatch, [=] {
                     Derivation d = builtin("trans");
                     Derivation& intro = at(d, {0, 0, 0, 0, 0, 1, 1});
                     const Path& p = intro.conclusion.subject.path();
                     intro.conclusion = Judgment::typing(ProofTerm::witness(p, c, a), TypeExpr::id(A, c, a));
                     return d;
                 }});
    m.push_back({"symm: path hypothesis with swapped endpoints", ErrorKind::EndpointMismatch, [=] {
                     Derivation d = builtin("symm");
                     Judgment& j = at(d, {0, 0, 0, 1, 0, 0}).conclusion;
                     std::swap(j.lhs, j.rhs);
                     return d;
                 }});
    m.push_back({"refl: object hypothesis left open", ErrorKind::UndischargedHypothesis, [=] {
                     Derivation d = builtin("refl");
                     d.discharged.clear();
                     return d;
                 }});
    m.push_back({"symm: path variable not discharged by Id-E1", ErrorKind::UndischargedHypothesis, [=] {
                     Derivation d = builtin("symm");
                     at(d, {0, 0, 0}).discharged.clear();
                     return d;
                 }});
    m.push_back({"trans: proof hypothesis w left open", ErrorKind::UndischargedHypothesis, [=] {
                     Derivation d = builtin("trans");
                     at(d, {0, 0, 0}).discharged.clear();
                     return d;
                 }});
    m.push_back({"refl: rho leaf relabelled as sigma", ErrorKind::RuleMismatch, [=] {
                     Derivation d = builtin("refl");
                     at(d, {0, 0}).axiom = Axiom::Sigma;
                     return d;
                 }});
    m.push_back({"symm: sigma leaf relabelled as tau", ErrorKind::RuleMismatch, [=] {
                     Derivation d = builtin("symm");
                     at(d, {0, 0, 0, 1, 0}).axiom = Axiom::Tau;
                     return d;
                 }});
    m.push_back({"trans: tau leaf relabelled as beta", ErrorKind::RuleMismatch, [=] {
                     Derivation d = builtin("trans");
                     at(d, {0, 0, 0, 0, 0, 1, 1, 0}).axiom = Axiom::Beta;
                     return d;
                 }});
    m.push_back({"trans: tau premises in the wrong order", ErrorKind::RuleMismatch, [=] {
                     Derivation d = builtin("trans");
                     auto& ps = at(d, {0, 0, 0, 0, 0, 1, 1, 0}).premises;
                     std::swap(ps[0], ps[1]);
                     return d;
                 }});
    m.push_back({"refl: Id type disagrees with the witness", ErrorKind::RuleMismatch, [=] {
                     Derivation d = builtin("refl");
                     Derivation& intro = at(d, {0});
                     intro.conclusion.type = TypeExpr::id(A, a, b);
                     return d;
                 }});
    m.push_back({"symm: Id-E1 discharges the major's label instead of t", ErrorKind::UndischargedHypothesis, [=] {
                     Derivation d = builtin("symm");
                     at(d, {0, 0, 0}).discharged = {"p"};
                     return d;
                 }});
    m.push_back({"symm: Id-E1 conclusion changes type", ErrorKind::RuleMismatch, [=] {
                     Derivation d = builtin("symm");
                     at(d, {0, 0, 0}).conclusion.type = TypeExpr::id(A, a, b);
                     return d;
                 }});
    return m;
}

// Id-I1 over an open path hypothesis: the witness path(l,r) : Id_A(l,r).
inline Derivation witness_intro(const Path& p, const ProofTerm& l, const ProofTerm& r, const std::string& label) {
    TypeExpr A = TypeExpr::base("A");
    Derivation h;
    h.rule = Rule::Hyp;
    h.label = label;
    h.conclusion = Judgment::path_eq(l, p, r, A);
    Derivation i;
    i.rule = Rule::IdI1;
    i.conclusion = Judgment::typing(ProofTerm::witness(p, l, r), TypeExpr::id(A, l, r));
    i.premises = {h};
    return i;
}

// The body of trans (below its five Π-introductions) with w := p(a,b) and
// s := q(b,c) for atoms p: a -> b and q: b -> c.
inline Derivation instantiated_trans() {
    Term a = Term::var("a"), b = Term::var("b"), c = Term::var("c");
    ProofTerm pa = ProofTerm::var("a"), pb = ProofTerm::var("b"), pc = ProofTerm::var("c");
    Derivation full = builtin("trans");
    Derivation body = at(full, {0, 0, 0, 0, 0});
    body = plug_hypothesis(body, "w", witness_intro(mk_atom("p", a, b), pa, pb, "hp"));
    return plug_hypothesis(body, "s", witness_intro(mk_atom("q", b, c), pb, pc, "hq"));
}

// Endpoints recomputed from the constructors alone, ignoring the cached
// values a Path carries.
inline Endpoint oracle_source(const Path& p);
inline Endpoint oracle_target(const Path& p);

inline Endpoint oracle_source(const Path& p) {
    switch (p.kind()) {
    case PathKind::Rho: return p.at();
    case PathKind::Sigma: return oracle_target(p.inner());
    case PathKind::Tau: return oracle_source(p.left());
    case PathKind::RuleStep: return p.from();
    case PathKind::Beta:
    case PathKind::Eta: return p.subject();
    default: return p.source();  // atoms and alpha steps carry their endpoints by definition
    }
}

inline Endpoint oracle_target(const Path& p) {
    switch (p.kind()) {
    case PathKind::Rho: return p.at();
    case PathKind::Sigma: return oracle_source(p.inner());
    case PathKind::Tau: return oracle_target(p.right());
    case PathKind::RuleStep: return p.to();
    case PathKind::Beta:
    case PathKind::Eta: return p.site().result;
    default: return p.target();
    }
}

}  // namespace cpath::testing
