#include "cpath/kernel.hpp"

#include <algorithm>
#include <functional>

#include "cpath/error.hpp"
#include "cpath/rewrite.hpp"

namespace cpath {

// ---------------------------------------------------------------------------
// ProofTerm / TypeExpr nodes

struct ProofTerm::Node {
    Kind kind;
    std::string name;
    ProofTerm a;  // Lam body, Apply fun, Witness lhs, Rewr major
    ProofTerm b;  // Apply arg, Witness rhs, Rewr minor
    Path path;
};

const ProofTerm::Node& ProofTerm::node() const {
    if (!node_) throw Error(ErrorKind::InvalidArgument, "empty proof term");
    return *node_;
}

ProofTerm ProofTerm::var(std::string name) {
    return ProofTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}, {}}));
}
ProofTerm ProofTerm::lam(std::string binder, ProofTerm body) {
    return ProofTerm(std::make_shared<const Node>(Node{Kind::Lam, std::move(binder), std::move(body), {}, {}}));
}
ProofTerm ProofTerm::apply(ProofTerm fun, ProofTerm arg) {
    return ProofTerm(std::make_shared<const Node>(Node{Kind::Apply, {}, std::move(fun), std::move(arg), {}}));
}
ProofTerm ProofTerm::witness(Path path, ProofTerm lhs, ProofTerm rhs) {
    return ProofTerm(
        std::make_shared<const Node>(Node{Kind::Witness, {}, std::move(lhs), std::move(rhs), std::move(path)}));
}
ProofTerm ProofTerm::rewr(ProofTerm major, std::string bound, ProofTerm minor) {
    return ProofTerm(
        std::make_shared<const Node>(Node{Kind::Rewr, std::move(bound), std::move(major), std::move(minor), {}}));
}
ProofTerm ProofTerm::embed(Path path) {
    return ProofTerm(std::make_shared<const Node>(Node{Kind::Embed, {}, {}, {}, std::move(path)}));
}

ProofTerm ProofTerm::from_term(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Var: return var(t.name());
    case Term::Kind::Abs: return lam(t.name(), from_term(t.body()));
    case Term::Kind::App: return apply(from_term(t.fun()), from_term(t.arg()));
    }
    return {};
}

ProofTerm::Kind ProofTerm::kind() const { return node().kind; }
const std::string& ProofTerm::name() const { return node().name; }
const ProofTerm& ProofTerm::body() const { return kind() == Kind::Rewr ? node().b : node().a; }
const ProofTerm& ProofTerm::fun() const { return node().a; }
const ProofTerm& ProofTerm::arg() const { return node().b; }
const ProofTerm& ProofTerm::major() const { return node().a; }
const Path& ProofTerm::path() const { return node().path; }
const ProofTerm& ProofTerm::lhs() const { return node().a; }
const ProofTerm& ProofTerm::rhs() const { return node().b; }

struct TypeExpr::Node {
    Kind kind;
    std::string name;
    TypeExpr first;  // Id carrier, Pi/Arrow domain
    TypeExpr second;  // Pi/Arrow codomain
    ProofTerm lhs;
    ProofTerm rhs;
};

const TypeExpr::Node& TypeExpr::node() const {
    if (!node_) throw Error(ErrorKind::InvalidArgument, "empty type");
    return *node_;
}

TypeExpr TypeExpr::base(std::string name) {
    return TypeExpr(std::make_shared<const Node>(Node{Kind::Base, std::move(name), {}, {}, {}, {}}));
}
TypeExpr TypeExpr::id(TypeExpr carrier, ProofTerm lhs, ProofTerm rhs) {
    return TypeExpr(
        std::make_shared<const Node>(Node{Kind::Id, {}, std::move(carrier), {}, std::move(lhs), std::move(rhs)}));
}
TypeExpr TypeExpr::pi(std::string binder, TypeExpr domain, TypeExpr codomain) {
    return TypeExpr(std::make_shared<const Node>(
        Node{Kind::Pi, std::move(binder), std::move(domain), std::move(codomain), {}, {}}));
}
TypeExpr TypeExpr::arrow(TypeExpr domain, TypeExpr codomain) {
    return TypeExpr(
        std::make_shared<const Node>(Node{Kind::Arrow, {}, std::move(domain), std::move(codomain), {}, {}}));
}

TypeExpr::Kind TypeExpr::kind() const { return node().kind; }
const std::string& TypeExpr::name() const { return node().name; }
const TypeExpr& TypeExpr::carrier() const { return node().first; }
const ProofTerm& TypeExpr::lhs() const { return node().lhs; }
const ProofTerm& TypeExpr::rhs() const { return node().rhs; }
const TypeExpr& TypeExpr::domain() const { return node().first; }
const TypeExpr& TypeExpr::codomain() const { return node().second; }

Judgment Judgment::is_type(TypeExpr t) {
    Judgment j;
    j.kind = Kind::IsType;
    j.type = std::move(t);
    return j;
}

Judgment Judgment::typing(ProofTerm subject, TypeExpr t) {
    Judgment j;
    j.kind = Kind::Typing;
    j.subject = std::move(subject);
    j.type = std::move(t);
    return j;
}

Judgment Judgment::path_eq(ProofTerm lhs, Path path, ProofTerm rhs, TypeExpr t) {
    Judgment j;
    j.kind = Kind::PathEq;
    j.lhs = std::move(lhs);
    j.path = std::move(path);
    j.rhs = std::move(rhs);
    j.type = std::move(t);
    return j;
}

namespace {

struct TagEntry {
    std::string_view tag;
    Rule rule;
    Axiom axiom;
};

constexpr TagEntry kTags[] = {
    {"hyp", Rule::Hyp, Axiom::None},         {"id-f", Rule::IdF, Axiom::None},
    {"id-i1", Rule::IdI1, Axiom::None},      {"id-i2", Rule::IdI2, Axiom::None},
    {"id-e1", Rule::IdE1, Axiom::None},      {"id-e2", Rule::IdE2, Axiom::None},
    {"pi-i", Rule::PiI, Axiom::None},        {"pi-e", Rule::PiE, Axiom::None},
    {"eq-rho", Rule::EqAxiom, Axiom::Rho},   {"eq-sigma", Rule::EqAxiom, Axiom::Sigma},
    {"eq-tau", Rule::EqAxiom, Axiom::Tau},   {"eq-xi", Rule::EqAxiom, Axiom::Xi},
    {"eq-mu", Rule::EqAxiom, Axiom::Mu},     {"eq-nu", Rule::EqAxiom, Axiom::Nu},
    {"eq-beta", Rule::EqAxiom, Axiom::Beta}, {"eq-eta", Rule::EqAxiom, Axiom::Eta},
    {"eq-rw", Rule::EqAxiom, Axiom::Rewrite},
};

}  // namespace

std::string_view rule_tag(Rule rule, Axiom axiom) {
    for (const TagEntry& e : kTags)
        if (e.rule == rule && (rule != Rule::EqAxiom || e.axiom == axiom)) return e.tag;
    return "?";
}

std::optional<std::pair<Rule, Axiom>> rule_from_tag(std::string_view tag) {
    for (const TagEntry& e : kTags)
        if (e.tag == tag) return std::make_pair(e.rule, e.axiom);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Names, occurrence, conversion

namespace {

void pt_names(const ProofTerm& t, std::set<std::string>& out);

void type_names(const TypeExpr& t, std::set<std::string>& out) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return;
    case TypeExpr::Kind::Id:
        type_names(t.carrier(), out);
        pt_names(t.lhs(), out);
        pt_names(t.rhs(), out);
        return;
    case TypeExpr::Kind::Pi: out.insert(t.name()); [[fallthrough]];
    case TypeExpr::Kind::Arrow:
        type_names(t.domain(), out);
        type_names(t.codomain(), out);
        return;
    }
}

// Every object and path-variable name in t, bound or free.
void pt_names(const ProofTerm& t, std::set<std::string>& out) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: out.insert(t.name()); return;
    case ProofTerm::Kind::Lam:
        out.insert(t.name());
        pt_names(t.body(), out);
        return;
    case ProofTerm::Kind::Apply:
        pt_names(t.fun(), out);
        pt_names(t.arg(), out);
        return;
    case ProofTerm::Kind::Witness:
        collect_term_names(t.path(), out);
        collect_atom_names(t.path(), out);
        pt_names(t.lhs(), out);
        pt_names(t.rhs(), out);
        return;
    case ProofTerm::Kind::Rewr:
        out.insert(t.name());
        pt_names(t.major(), out);
        pt_names(t.body(), out);
        return;
    case ProofTerm::Kind::Embed:
        collect_term_names(t.path(), out);
        collect_atom_names(t.path(), out);
        return;
    }
}

ProofTerm rename_path_var(const ProofTerm& t, const std::string& from, const std::string& to);

}  // namespace

std::optional<Term> to_term(const ProofTerm& t) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var:
        if (!is_identifier(t.name())) return std::nullopt;
        return Term::var(t.name());
    case ProofTerm::Kind::Lam: {
        auto b = to_term(t.body());
        if (!b || !is_identifier(t.name())) return std::nullopt;
        return Term::abs(t.name(), *b);
    }
    case ProofTerm::Kind::Apply: {
        auto f = to_term(t.fun());
        auto a = to_term(t.arg());
        if (!f || !a) return std::nullopt;
        return Term::app(*f, *a);
    }
    default: return std::nullopt;
    }
}

std::optional<Endpoint> to_endpoint(const ProofTerm& t) {
    if (t.kind() == ProofTerm::Kind::Embed) return Endpoint(t.path());
    if (auto term = to_term(t)) return Endpoint(*term);
    return std::nullopt;
}

ProofTerm from_endpoint(const Endpoint& e) {
    return e.is_term() ? ProofTerm::from_term(e.term()) : ProofTerm::embed(e.path());
}

bool pt_occurs_free(const ProofTerm& t, std::string_view x) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: return t.name() == x;
    case ProofTerm::Kind::Lam: return t.name() != x && pt_occurs_free(t.body(), x);
    case ProofTerm::Kind::Apply: return pt_occurs_free(t.fun(), x) || pt_occurs_free(t.arg(), x);
    case ProofTerm::Kind::Witness:
        return term_var_occurs_free(t.path(), x) || pt_occurs_free(t.lhs(), x) || pt_occurs_free(t.rhs(), x);
    case ProofTerm::Kind::Rewr: return pt_occurs_free(t.major(), x) || pt_occurs_free(t.body(), x);
    case ProofTerm::Kind::Embed: return term_var_occurs_free(t.path(), x);
    }
    return false;
}

bool type_occurs_free(const TypeExpr& t, std::string_view x) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return false;
    case TypeExpr::Kind::Id:
        return type_occurs_free(t.carrier(), x) || pt_occurs_free(t.lhs(), x) || pt_occurs_free(t.rhs(), x);
    case TypeExpr::Kind::Pi:
        return type_occurs_free(t.domain(), x) || (t.name() != x && type_occurs_free(t.codomain(), x));
    case TypeExpr::Kind::Arrow: return type_occurs_free(t.domain(), x) || type_occurs_free(t.codomain(), x);
    }
    return false;
}

bool judgment_occurs_free(const Judgment& j, std::string_view x) {
    switch (j.kind) {
    case Judgment::Kind::IsType: return type_occurs_free(j.type, x);
    case Judgment::Kind::Typing: return pt_occurs_free(j.subject, x) || type_occurs_free(j.type, x);
    case Judgment::Kind::PathEq:
        return pt_occurs_free(j.lhs, x) || term_var_occurs_free(j.path, x) || pt_occurs_free(j.rhs, x) ||
               type_occurs_free(j.type, x);
    }
    return false;
}

bool pt_path_var_free(const ProofTerm& t, std::string_view g) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: return false;
    case ProofTerm::Kind::Lam: return pt_path_var_free(t.body(), g);
    case ProofTerm::Kind::Apply: return pt_path_var_free(t.fun(), g) || pt_path_var_free(t.arg(), g);
    case ProofTerm::Kind::Witness:
        return atom_occurs(t.path(), g) || pt_path_var_free(t.lhs(), g) || pt_path_var_free(t.rhs(), g);
    case ProofTerm::Kind::Rewr:
        return pt_path_var_free(t.major(), g) || (t.name() != g && pt_path_var_free(t.body(), g));
    case ProofTerm::Kind::Embed: return atom_occurs(t.path(), g);
    }
    return false;
}

bool type_path_var_free(const TypeExpr& t, std::string_view g) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return false;
    case TypeExpr::Kind::Id:
        return type_path_var_free(t.carrier(), g) || pt_path_var_free(t.lhs(), g) || pt_path_var_free(t.rhs(), g);
    case TypeExpr::Kind::Pi:
    case TypeExpr::Kind::Arrow: return type_path_var_free(t.domain(), g) || type_path_var_free(t.codomain(), g);
    }
    return false;
}

bool judgment_path_var_free(const Judgment& j, std::string_view g) {
    switch (j.kind) {
    case Judgment::Kind::IsType: return type_path_var_free(j.type, g);
    case Judgment::Kind::Typing: return pt_path_var_free(j.subject, g) || type_path_var_free(j.type, g);
    case Judgment::Kind::PathEq:
        return pt_path_var_free(j.lhs, g) || atom_occurs(j.path, g) || pt_path_var_free(j.rhs, g) ||
               type_path_var_free(j.type, g);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

Path subst_in_path(const Path& p, const std::string& x, const ProofTerm& replacement) {
    if (!term_var_occurs_free(p, x)) return p;
    auto t = to_term(replacement);
    if (!t)
        throw Error(ErrorKind::RuleMismatch, "cannot substitute the non-term " + to_notation(replacement) + " for " +
                                                 x + " inside the path " + to_ground(p));
    return substitute_term(p, x, *t);
}

}  // namespace

ProofTerm substitute_pt(const ProofTerm& t, const std::string& x, const ProofTerm& replacement) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: return t.name() == x ? replacement : t;
    case ProofTerm::Kind::Lam: {
        const std::string& y = t.name();
        if (y == x || !pt_occurs_free(t.body(), x)) return t;
        if (!pt_occurs_free(replacement, y)) return ProofTerm::lam(y, substitute_pt(t.body(), x, replacement));
        std::set<std::string> avoid;
        pt_names(t.body(), avoid);
        pt_names(replacement, avoid);
        avoid.insert(x);
        std::string z = fresh_name(y, avoid);
        ProofTerm renamed = substitute_pt(t.body(), y, ProofTerm::var(z));
        return ProofTerm::lam(z, substitute_pt(renamed, x, replacement));
    }
    case ProofTerm::Kind::Apply:
        return ProofTerm::apply(substitute_pt(t.fun(), x, replacement), substitute_pt(t.arg(), x, replacement));
    case ProofTerm::Kind::Witness:
        return ProofTerm::witness(subst_in_path(t.path(), x, replacement), substitute_pt(t.lhs(), x, replacement),
                                  substitute_pt(t.rhs(), x, replacement));
    case ProofTerm::Kind::Rewr:
        return ProofTerm::rewr(substitute_pt(t.major(), x, replacement), t.name(),
                               substitute_pt(t.body(), x, replacement));
    case ProofTerm::Kind::Embed: return ProofTerm::embed(subst_in_path(t.path(), x, replacement));
    }
    return t;
}

TypeExpr substitute_type(const TypeExpr& t, const std::string& x, const ProofTerm& replacement) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return t;
    case TypeExpr::Kind::Id:
        return TypeExpr::id(substitute_type(t.carrier(), x, replacement), substitute_pt(t.lhs(), x, replacement),
                            substitute_pt(t.rhs(), x, replacement));
    case TypeExpr::Kind::Arrow:
        return TypeExpr::arrow(substitute_type(t.domain(), x, replacement),
                               substitute_type(t.codomain(), x, replacement));
    case TypeExpr::Kind::Pi: {
        TypeExpr dom = substitute_type(t.domain(), x, replacement);
        const std::string& y = t.name();
        if (y == x || !type_occurs_free(t.codomain(), x)) return TypeExpr::pi(y, dom, t.codomain());
        if (!pt_occurs_free(replacement, y))
            return TypeExpr::pi(y, dom, substitute_type(t.codomain(), x, replacement));
        std::set<std::string> avoid;
        type_names(t.codomain(), avoid);
        pt_names(replacement, avoid);
        avoid.insert(x);
        std::string z = fresh_name(y, avoid);
        TypeExpr renamed = substitute_type(t.codomain(), y, ProofTerm::var(z));
        return TypeExpr::pi(z, dom, substitute_type(renamed, x, replacement));
    }
    }
    return t;
}

Judgment substitute_judgment(const Judgment& j, const std::string& x, const ProofTerm& replacement) {
    switch (j.kind) {
    case Judgment::Kind::IsType: return Judgment::is_type(substitute_type(j.type, x, replacement));
    case Judgment::Kind::Typing:
        return Judgment::typing(substitute_pt(j.subject, x, replacement), substitute_type(j.type, x, replacement));
    case Judgment::Kind::PathEq:
        return Judgment::path_eq(substitute_pt(j.lhs, x, replacement), subst_in_path(j.path, x, replacement),
                                 substitute_pt(j.rhs, x, replacement), substitute_type(j.type, x, replacement));
    }
    return j;
}

ProofTerm substitute_path_var(const ProofTerm& t, const std::string& g, const Path& m) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: return t;
    case ProofTerm::Kind::Lam: {
        const std::string& y = t.name();
        if (!pt_path_var_free(t.body(), g)) return t;
        if (!term_var_occurs_free(m, y)) return ProofTerm::lam(y, substitute_path_var(t.body(), g, m));
        std::set<std::string> avoid;
        pt_names(t.body(), avoid);
        collect_term_names(m, avoid);
        std::string z = fresh_name(y, avoid);
        ProofTerm renamed = substitute_pt(t.body(), y, ProofTerm::var(z));
        return ProofTerm::lam(z, substitute_path_var(renamed, g, m));
    }
    case ProofTerm::Kind::Apply:
        return ProofTerm::apply(substitute_path_var(t.fun(), g, m), substitute_path_var(t.arg(), g, m));
    case ProofTerm::Kind::Witness:
        return ProofTerm::witness(substitute_atom(t.path(), g, m), substitute_path_var(t.lhs(), g, m),
                                  substitute_path_var(t.rhs(), g, m));
    case ProofTerm::Kind::Rewr: {
        ProofTerm major = substitute_path_var(t.major(), g, m);
        const std::string& h = t.name();
        if (h == g || !pt_path_var_free(t.body(), g)) return ProofTerm::rewr(major, h, t.body());
        if (!atom_occurs(m, h)) return ProofTerm::rewr(major, h, substitute_path_var(t.body(), g, m));
        std::set<std::string> avoid;
        pt_names(t.body(), avoid);
        collect_atom_names(m, avoid);
        avoid.insert(g);
        std::string fresh = fresh_name(h, avoid);
        return ProofTerm::rewr(major, fresh, substitute_path_var(rename_path_var(t.body(), h, fresh), g, m));
    }
    case ProofTerm::Kind::Embed: return ProofTerm::embed(substitute_atom(t.path(), g, m));
    }
    return t;
}

TypeExpr substitute_path_var(const TypeExpr& t, const std::string& g, const Path& m) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return t;
    case TypeExpr::Kind::Id:
        return TypeExpr::id(substitute_path_var(t.carrier(), g, m), substitute_path_var(t.lhs(), g, m),
                            substitute_path_var(t.rhs(), g, m));
    case TypeExpr::Kind::Pi:
        return TypeExpr::pi(t.name(), substitute_path_var(t.domain(), g, m), substitute_path_var(t.codomain(), g, m));
    case TypeExpr::Kind::Arrow:
        return TypeExpr::arrow(substitute_path_var(t.domain(), g, m), substitute_path_var(t.codomain(), g, m));
    }
    return t;
}

Judgment substitute_path_var(const Judgment& j, const std::string& g, const Path& m) {
    switch (j.kind) {
    case Judgment::Kind::IsType: return Judgment::is_type(substitute_path_var(j.type, g, m));
    case Judgment::Kind::Typing:
        return Judgment::typing(substitute_path_var(j.subject, g, m), substitute_path_var(j.type, g, m));
    case Judgment::Kind::PathEq:
        return Judgment::path_eq(substitute_path_var(j.lhs, g, m), substitute_atom(j.path, g, m),
                                 substitute_path_var(j.rhs, g, m), substitute_path_var(j.type, g, m));
    }
    return j;
}

namespace {

ProofTerm rename_path_var(const ProofTerm& t, const std::string& from, const std::string& to) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var: return t;
    case ProofTerm::Kind::Lam: return ProofTerm::lam(t.name(), rename_path_var(t.body(), from, to));
    case ProofTerm::Kind::Apply:
        return ProofTerm::apply(rename_path_var(t.fun(), from, to), rename_path_var(t.arg(), from, to));
    case ProofTerm::Kind::Witness:
        return ProofTerm::witness(rename_atom(t.path(), from, to), rename_path_var(t.lhs(), from, to),
                                  rename_path_var(t.rhs(), from, to));
    case ProofTerm::Kind::Rewr: {
        ProofTerm major = rename_path_var(t.major(), from, to);
        if (t.name() == from) return ProofTerm::rewr(major, t.name(), t.body());
        return ProofTerm::rewr(major, t.name(), rename_path_var(t.body(), from, to));
    }
    case ProofTerm::Kind::Embed: return ProofTerm::embed(rename_atom(t.path(), from, to));
    }
    return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Equality

bool pt_eq(const ProofTerm& a, const ProofTerm& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case ProofTerm::Kind::Var: return a.name() == b.name();
    case ProofTerm::Kind::Lam: {
        if (a.name() == b.name()) return pt_eq(a.body(), b.body());
        std::set<std::string> avoid;
        pt_names(a, avoid);
        pt_names(b, avoid);
        ProofTerm z = ProofTerm::var(fresh_name(a.name(), avoid));
        return pt_eq(substitute_pt(a.body(), a.name(), z), substitute_pt(b.body(), b.name(), z));
    }
    case ProofTerm::Kind::Apply: return pt_eq(a.fun(), b.fun()) && pt_eq(a.arg(), b.arg());
    case ProofTerm::Kind::Witness:
        return path_eq(a.path(), b.path()) && pt_eq(a.lhs(), b.lhs()) && pt_eq(a.rhs(), b.rhs());
    case ProofTerm::Kind::Rewr: {
        if (!pt_eq(a.major(), b.major())) return false;
        if (a.name() == b.name()) return pt_eq(a.body(), b.body());
        std::set<std::string> avoid;
        pt_names(a, avoid);
        pt_names(b, avoid);
        std::string g = fresh_name(a.name(), avoid);
        return pt_eq(rename_path_var(a.body(), a.name(), g), rename_path_var(b.body(), b.name(), g));
    }
    case ProofTerm::Kind::Embed: return path_eq(a.path(), b.path());
    }
    return false;
}

bool type_eq(const TypeExpr& a, const TypeExpr& b) {
    using K = TypeExpr::Kind;
    auto is_fun = [](const TypeExpr& t) { return t.kind() == K::Pi || t.kind() == K::Arrow; };
    if (is_fun(a) && is_fun(b)) {
        if (!type_eq(a.domain(), b.domain())) return false;
        const bool pa = a.kind() == K::Pi, pb = b.kind() == K::Pi;
        if (pa && pb) {
            if (a.name() == b.name()) return type_eq(a.codomain(), b.codomain());
            std::set<std::string> avoid;
            type_names(a, avoid);
            type_names(b, avoid);
            ProofTerm z = ProofTerm::var(fresh_name(a.name(), avoid));
            return type_eq(substitute_type(a.codomain(), a.name(), z), substitute_type(b.codomain(), b.name(), z));
        }
        // Arrow is the non-dependent Pi.
        if (pa && type_occurs_free(a.codomain(), a.name())) return false;
        if (pb && type_occurs_free(b.codomain(), b.name())) return false;
        return type_eq(a.codomain(), b.codomain());
    }
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case K::Base: return a.name() == b.name();
    case K::Id: return type_eq(a.carrier(), b.carrier()) && pt_eq(a.lhs(), b.lhs()) && pt_eq(a.rhs(), b.rhs());
    default: return false;
    }
}

bool judgment_eq(const Judgment& a, const Judgment& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Judgment::Kind::IsType: return type_eq(a.type, b.type);
    case Judgment::Kind::Typing: return pt_eq(a.subject, b.subject) && type_eq(a.type, b.type);
    case Judgment::Kind::PathEq:
        return pt_eq(a.lhs, b.lhs) && path_eq(a.path, b.path) && pt_eq(a.rhs, b.rhs) && type_eq(a.type, b.type);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Checking

namespace {

class Checker {
public:
    CheckResult walk(const Derivation& d, const std::string& where) {
        std::vector<CheckResult> ps;
        ps.reserve(d.premises.size());
        for (std::size_t i = 0; i < d.premises.size(); ++i)
            ps.push_back(walk(d.premises[i], where + "/" + std::to_string(i)));

        Site site{d, where};
        wellformed(site, d.conclusion);
        if (!d.discharged.empty() && d.rule != Rule::PiI && d.rule != Rule::IdE1 && d.rule != Rule::IdE2 &&
            !(d.rule == Rule::EqAxiom && d.axiom == Axiom::Xi))
            fail(site, ErrorKind::RuleMismatch, "this rule discharges no hypotheses");

        switch (d.rule) {
        case Rule::Hyp: return hyp(site);
        case Rule::IdF: return id_f(site, ps);
        case Rule::IdI1: return id_i1(site, ps);
        case Rule::IdI2: return id_i2(site, ps);
        case Rule::IdE1:
        case Rule::IdE2: return id_e(site, ps);
        case Rule::PiI: return pi_i(site, ps);
        case Rule::PiE: return pi_e(site, ps);
        case Rule::EqAxiom: return axiom(site, ps);
        }
        fail(site, ErrorKind::RuleMismatch, "unknown rule");
    }

private:
    struct Site {
        const Derivation& d;
        const std::string& where;
    };

    using Open = std::map<std::string, Judgment>;

    [[noreturn]] static void fail(const Site& s, ErrorKind kind, const std::string& msg) {
        std::string loc = std::string(rule_tag(s.d.rule, s.d.axiom)) + " node at " +
                          (s.where.empty() ? std::string("/") : s.where);
        if (!s.d.label.empty()) loc += " [" + s.d.label + "]";
        if (s.d.line) loc = std::to_string(s.d.line) + ":" + std::to_string(s.d.column) + ": " + loc;
        throw Error(kind, loc + ": " + msg);
    }

    static void require(const Site& s, bool ok, const std::string& msg) {
        if (!ok) fail(s, ErrorKind::RuleMismatch, msg);
    }

    static void arity(const Site& s, const std::vector<CheckResult>& ps, std::size_t n) {
        require(s, ps.size() == n, "expects " + std::to_string(n) + " premise(s), got " + std::to_string(ps.size()));
    }

    static void kind(const Site& s, const Judgment& j, Judgment::Kind k, const std::string& what) {
        static const char* names[] = {"a type formation", "a typing judgment", "a path judgment"};
        require(s, j.kind == k, what + " must be " + names[static_cast<int>(k)]);
    }

    static void same_pt(const Site& s, const ProofTerm& a, const ProofTerm& b, const std::string& what) {
        require(s, pt_eq(a, b), what + ": " + to_notation(a) + " vs " + to_notation(b));
    }

    static void same_type(const Site& s, const TypeExpr& a, const TypeExpr& b, const std::string& what) {
        require(s, type_eq(a, b), what + ": " + to_notation(a) + " vs " + to_notation(b));
    }

    static void same_path(const Site& s, const Path& a, const Path& b, const std::string& what) {
        require(s, path_eq(a, b), what + ": " + to_ground(a) + " vs " + to_ground(b));
    }

    // Witness and path-judgment endpoints must agree with their paths.
    static void endpoints(const Site& s, const ProofTerm& lhs, const Path& p, const ProofTerm& rhs) {
        if (auto e = to_endpoint(lhs); e && !endpoint_eq(*e, p.source()))
            fail(s, ErrorKind::EndpointMismatch,
                 "source of " + to_ground(p) + " is " + to_ground(p.source()) + ", not " + to_notation(lhs));
        if (auto e = to_endpoint(rhs); e && !endpoint_eq(*e, p.target()))
            fail(s, ErrorKind::EndpointMismatch,
                 "target of " + to_ground(p) + " is " + to_ground(p.target()) + ", not " + to_notation(rhs));
    }

    static void wf_pt(const Site& s, const ProofTerm& t) {
        switch (t.kind()) {
        case ProofTerm::Kind::Var:
        case ProofTerm::Kind::Embed: return;
        case ProofTerm::Kind::Lam: wf_pt(s, t.body()); return;
        case ProofTerm::Kind::Apply:
            wf_pt(s, t.fun());
            wf_pt(s, t.arg());
            return;
        case ProofTerm::Kind::Witness:
            wf_pt(s, t.lhs());
            wf_pt(s, t.rhs());
            endpoints(s, t.lhs(), t.path(), t.rhs());
            return;
        case ProofTerm::Kind::Rewr:
            wf_pt(s, t.major());
            wf_pt(s, t.body());
            return;
        }
    }

    static void wf_type(const Site& s, const TypeExpr& t) {
        switch (t.kind()) {
        case TypeExpr::Kind::Base: return;
        case TypeExpr::Kind::Id:
            wf_type(s, t.carrier());
            wf_pt(s, t.lhs());
            wf_pt(s, t.rhs());
            return;
        case TypeExpr::Kind::Pi:
        case TypeExpr::Kind::Arrow:
            wf_type(s, t.domain());
            wf_type(s, t.codomain());
            return;
        }
    }

    static void wellformed(const Site& s, const Judgment& j) {
        if (j.type.empty()) fail(s, ErrorKind::RuleMismatch, "judgment without a type");
        wf_type(s, j.type);
        if (j.kind == Judgment::Kind::Typing) wf_pt(s, j.subject);
        if (j.kind == Judgment::Kind::PathEq) {
            wf_pt(s, j.lhs);
            wf_pt(s, j.rhs);
            endpoints(s, j.lhs, j.path, j.rhs);
        }
    }

    static void merge(const Site& s, Open& into, const Open& from) {
        for (const auto& [label, j] : from) {
            auto [it, inserted] = into.emplace(label, j);
            if (!inserted && !judgment_eq(it->second, j))
                fail(s, ErrorKind::RuleMismatch, "hypothesis " + label + " stands for two different judgments");
        }
    }

    static Open merged(const Site& s, const std::vector<CheckResult>& ps) {
        Open open;
        for (const CheckResult& p : ps) merge(s, open, p.open);
        return open;
    }

    // Pi-like view of Pi and Arrow types: (binder or "", domain, codomain).
    static bool fun_type(const TypeExpr& t) {
        return t.kind() == TypeExpr::Kind::Pi || t.kind() == TypeExpr::Kind::Arrow;
    }

    static TypeExpr instantiate(const TypeExpr& fn, const ProofTerm& arg) {
        if (fn.kind() == TypeExpr::Kind::Arrow) return fn.codomain();
        return substitute_type(fn.codomain(), fn.name(), arg);
    }

    // Removes hypotheses x : A named in `labels` from `open` (for binder x).
    static void discharge_object(const Site& s, Open& open, const std::string& x, const TypeExpr& domain) {
        for (const std::string& label : s.d.discharged) {
            auto it = open.find(label);
            if (it == open.end()) continue;  // vacuous discharge
            const Judgment& h = it->second;
            require(s,
                    h.kind == Judgment::Kind::Typing && h.subject.kind() == ProofTerm::Kind::Var &&
                        h.subject.name() == x && type_eq(h.type, domain),
                    "discharged hypothesis " + label + " (" + to_notation(h) + ") is not " + x + " : " +
                        to_notation(domain));
            open.erase(it);
        }
        for (const auto& [label, h] : open)
            if (judgment_occurs_free(h, x))
                fail(s, ErrorKind::UndischargedHypothesis,
                     "hypothesis " + label + " (" + to_notation(h) + ") depends on " + x + " but is not discharged");
    }

    CheckResult hyp(const Site& s) {
        require(s, s.d.premises.empty(), "a hypothesis has no premises");
        require(s, !s.d.label.empty(), "a hypothesis needs a label");
        return CheckResult{s.d.conclusion, Open{{s.d.label, s.d.conclusion}}};
    }

    CheckResult id_f(const Site& s, const std::vector<CheckResult>& ps) {
        arity(s, ps, 3);
        const Judgment& c = s.d.conclusion;
        kind(s, c, Judgment::Kind::IsType, "the conclusion");
        require(s, c.type.kind() == TypeExpr::Kind::Id, "the conclusion must form an Id type");
        kind(s, ps[0].conclusion, Judgment::Kind::IsType, "premise 0");
        kind(s, ps[1].conclusion, Judgment::Kind::Typing, "premise 1");
        kind(s, ps[2].conclusion, Judgment::Kind::Typing, "premise 2");
        same_type(s, ps[0].conclusion.type, c.type.carrier(), "carrier");
        same_type(s, ps[1].conclusion.type, c.type.carrier(), "type of the left object");
        same_type(s, ps[2].conclusion.type, c.type.carrier(), "type of the right object");
        same_pt(s, ps[1].conclusion.subject, c.type.lhs(), "left object");
        same_pt(s, ps[2].conclusion.subject, c.type.rhs(), "right object");
        return CheckResult{c, merged(s, ps)};
    }

    CheckResult id_i1(const Site& s, const std::vector<CheckResult>& ps) {
        arity(s, ps, 1);
        const Judgment& c = s.d.conclusion;
        const Judgment& p = ps[0].conclusion;
        kind(s, p, Judgment::Kind::PathEq, "the premise");
        kind(s, c, Judgment::Kind::Typing, "the conclusion");
        require(s, c.subject.kind() == ProofTerm::Kind::Witness, "the conclusion must be a path witness s(a,b)");
        require(s, c.type.kind() == TypeExpr::Kind::Id, "the conclusion type must be an Id type");
        same_path(s, c.subject.path(), p.path, "witness path differs from the premise path");
        same_pt(s, c.subject.lhs(), p.lhs, "witness left object");
        same_pt(s, c.subject.rhs(), p.rhs, "witness right object");
        same_pt(s, c.type.lhs(), p.lhs, "Id type left object");
        same_pt(s, c.type.rhs(), p.rhs, "Id type right object");
        same_type(s, c.type.carrier(), p.type, "Id type carrier");
        return CheckResult{c, merged(s, ps)};
    }

    // lhs denotes path `p`: either the embedded path or a witness over it.
    static bool denotes(const ProofTerm& t, const Path& p) {
        if (t.kind() == ProofTerm::Kind::Embed) return path_eq(t.path(), p);
        if (t.kind() == ProofTerm::Kind::Witness) return path_eq(t.path(), p);
        return false;
    }

    CheckResult id_i2(const Site& s, const std::vector<CheckResult>& ps) {
        arity(s, ps, 3);
        const Judgment& c = s.d.conclusion;
        const Judgment &ps_s = ps[0].conclusion, &ps_t = ps[1].conclusion, &ps_z = ps[2].conclusion;
        kind(s, ps_s, Judgment::Kind::PathEq, "premise 0");
        kind(s, ps_t, Judgment::Kind::PathEq, "premise 1");
        kind(s, ps_z, Judgment::Kind::PathEq, "premise 2");
        kind(s, c, Judgment::Kind::PathEq, "the conclusion");
        same_pt(s, ps_s.lhs, ps_t.lhs, "the two paths must share their left object");
        same_pt(s, ps_s.rhs, ps_t.rhs, "the two paths must share their right object");
        same_type(s, ps_s.type, ps_t.type, "the two paths must live in one type");
        TypeExpr id = TypeExpr::id(ps_s.type, ps_s.lhs, ps_s.rhs);
        same_type(s, ps_z.type, id, "the path between paths");
        require(s, denotes(ps_z.lhs, ps_s.path), "premise 2 must start at " + to_ground(ps_s.path));
        require(s, denotes(ps_z.rhs, ps_t.path), "premise 2 must end at " + to_ground(ps_t.path));
        const Path& z = ps_z.path;
        if (!z.source().is_path() || !path_eq(z.source().path(), ps_s.path) || !z.target().is_path() ||
            !path_eq(z.target().path(), ps_t.path))
            fail(s, ErrorKind::EndpointMismatch,
                 to_ground(z) + " does not run from " + to_ground(ps_s.path) + " to " + to_ground(ps_t.path));
        same_pt(s, c.lhs, ProofTerm::witness(ps_s.path, ps_s.lhs, ps_s.rhs), "conclusion left side");
        same_pt(s, c.rhs, ProofTerm::witness(ps_t.path, ps_t.lhs, ps_t.rhs), "conclusion right side");
        same_path(s, c.path, z, "conclusion path");
        same_type(s, c.type, id, "conclusion type");
        return CheckResult{c, merged(s, ps)};
    }

    CheckResult id_e(const Site& s, const std::vector<CheckResult>& ps) {
        arity(s, ps, 2);
        const bool first = s.d.rule == Rule::IdE1;
        const Judgment& c = s.d.conclusion;
        const Judgment& major = ps[0].conclusion;
        const Judgment& minor = ps[1].conclusion;
        kind(s, major, first ? Judgment::Kind::Typing : Judgment::Kind::PathEq, "the major premise");
        kind(s, minor, Judgment::Kind::Typing, "the minor premise");
        kind(s, c, first ? Judgment::Kind::Typing : Judgment::Kind::PathEq, "the conclusion");
        require(s, major.type.kind() == TypeExpr::Kind::Id, "the major premise must have an Id type");
        const TypeExpr& carrier = major.type.carrier();
        const ProofTerm& a = major.type.lhs();
        const ProofTerm& b = major.type.rhs();

        std::string g;
        if (first) {
            require(s, c.subject.kind() == ProofTerm::Kind::Rewr, "the conclusion must be a REWR term");
            g = c.subject.name();
            same_pt(s, c.subject.major(), major.subject, "REWR major");
            same_pt(s, c.subject.body(), minor.subject, "REWR body");
        } else {
            require(s, c.lhs.kind() == ProofTerm::Kind::Rewr && c.rhs.kind() == ProofTerm::Kind::Rewr,
                    "both sides of the conclusion must be REWR terms");
            g = c.lhs.name();
            require(s, c.rhs.name() == g, "both REWR terms must bind the same path variable");
            same_pt(s, c.lhs.major(), major.lhs, "left REWR major");
            same_pt(s, c.rhs.major(), major.rhs, "right REWR major");
            same_pt(s, c.lhs.body(), minor.subject, "left REWR body");
            same_pt(s, c.rhs.body(), minor.subject, "right REWR body");
            same_path(s, c.path, major.path, "conclusion path");
        }
        same_type(s, c.type, minor.type, "conclusion type");
        require(s, !type_path_var_free(c.type, g), "the eliminated type must not mention the path variable " + g);

        Open inner = ps[1].open;
        for (const std::string& label : s.d.discharged) {
            auto it = inner.find(label);
            if (it == inner.end()) continue;
            const Judgment& h = it->second;
            require(s,
                    h.kind == Judgment::Kind::PathEq && h.path.kind() == PathKind::Atom && h.path.name() == g &&
                        pt_eq(h.lhs, a) && pt_eq(h.rhs, b) && type_eq(h.type, carrier),
                    "discharged hypothesis " + label + " (" + to_notation(h) + ") is not " + to_notation(a) + " =_" + g +
                        " " + to_notation(b) + " : " + to_notation(carrier));
            inner.erase(it);
        }
        for (const auto& [label, h] : inner)
            if (judgment_path_var_free(h, g))
                fail(s, ErrorKind::UndischargedHypothesis,
                     "hypothesis " + label + " (" + to_notation(h) + ") uses the path variable " + g +
                         " but is not discharged");
        Open open = ps[0].open;
        merge(s, open, inner);
        return CheckResult{c, std::move(open)};
    }

    CheckResult pi_i(const Site& s, const std::vector<CheckResult>& ps) {
        arity(s, ps, 1);
        const Judgment& c = s.d.conclusion;
        const Judgment& p = ps[0].conclusion;
        kind(s, p, Judgment::Kind::Typing, "the premise");
        kind(s, c, Judgment::Kind::Typing, "the conclusion");
        require(s, c.subject.kind() == ProofTerm::Kind::Lam, "the conclusion must be an abstraction");
        require(s, fun_type(c.type), "the conclusion type must be a Pi or arrow type");
        const std::string& x = c.subject.name();
        same_pt(s, c.subject.body(), p.subject, "abstraction body");
        TypeExpr cod = c.type.kind() == TypeExpr::Kind::Pi
                           ? substitute_type(c.type.codomain(), c.type.name(), ProofTerm::var(x))
                           : c.type.codomain();
        same_type(s, cod, p.type, "codomain");
        Open open = ps[0].open;
        discharge_object(s, open, x, c.type.domain());
        return CheckResult{c, std::move(open)};
    }

    CheckResult pi_e(const Site& s, const std::vector<CheckResult>& ps) {
        arity(s, ps, 2);
        const Judgment& c = s.d.conclusion;
        const Judgment& f = ps[0].conclusion;
        const Judgment& a = ps[1].conclusion;
        kind(s, f, Judgment::Kind::Typing, "premise 0");
        kind(s, a, Judgment::Kind::Typing, "premise 1");
        kind(s, c, Judgment::Kind::Typing, "the conclusion");
        require(s, fun_type(f.type), "premise 0 must have a Pi or arrow type");
        same_type(s, a.type, f.type.domain(), "argument type");
        require(s, c.subject.kind() == ProofTerm::Kind::Apply, "the conclusion must be an application");
        same_pt(s, c.subject.fun(), f.subject, "applied function");
        same_pt(s, c.subject.arg(), a.subject, "argument");
        same_type(s, c.type, instantiate(f.type, a.subject), "result type");
        return CheckResult{c, merged(s, ps)};
    }

    CheckResult axiom(const Site& s, const std::vector<CheckResult>& ps) {
        const Judgment& c = s.d.conclusion;
        kind(s, c, Judgment::Kind::PathEq, "an equality axiom's conclusion");
        const Path& p = c.path;
        auto path_kind = [&](PathKind k) {
            require(s, p.kind() == k,
                    std::string(rule_tag(s.d.rule, s.d.axiom)) + " concludes with a " + std::string(to_string(k)) +
                        " path, found " + to_ground(p));
        };
        switch (s.d.axiom) {
        case Axiom::Rho: {
            arity(s, ps, 1);
            const Judgment& h = ps[0].conclusion;
            kind(s, h, Judgment::Kind::Typing, "the premise");
            path_kind(PathKind::Rho);
            same_pt(s, c.lhs, h.subject, "left side");
            same_pt(s, c.rhs, h.subject, "right side");
            same_type(s, c.type, h.type, "type");
            break;
        }
        case Axiom::Sigma: {
            arity(s, ps, 1);
            const Judgment& h = ps[0].conclusion;
            kind(s, h, Judgment::Kind::PathEq, "the premise");
            path_kind(PathKind::Sigma);
            same_path(s, p.inner(), h.path, "sigma argument");
            same_pt(s, c.lhs, h.rhs, "left side");
            same_pt(s, c.rhs, h.lhs, "right side");
            same_type(s, c.type, h.type, "type");
            break;
        }
        case Axiom::Tau: {
            arity(s, ps, 2);
            const Judgment& l = ps[0].conclusion;
            const Judgment& r = ps[1].conclusion;
            kind(s, l, Judgment::Kind::PathEq, "premise 0");
            kind(s, r, Judgment::Kind::PathEq, "premise 1");
            path_kind(PathKind::Tau);
            same_path(s, p.left(), l.path, "left tau argument");
            same_path(s, p.right(), r.path, "right tau argument");
            same_pt(s, l.rhs, r.lhs, "premises do not compose");
            same_type(s, l.type, r.type, "premises live in different types");
            same_pt(s, c.lhs, l.lhs, "left side");
            same_pt(s, c.rhs, r.rhs, "right side");
            same_type(s, c.type, l.type, "type");
            break;
        }
        case Axiom::Xi: {
            arity(s, ps, 1);
            const Judgment& h = ps[0].conclusion;
            kind(s, h, Judgment::Kind::PathEq, "the premise");
            path_kind(PathKind::Xi);
            same_path(s, p.child(0), h.path, "xi body");
            const std::string& x = p.name();
            same_pt(s, c.lhs, ProofTerm::lam(x, h.lhs), "left side");
            same_pt(s, c.rhs, ProofTerm::lam(x, h.rhs), "right side");
            require(s, fun_type(c.type), "xi concludes at a Pi or arrow type");
            TypeExpr cod = c.type.kind() == TypeExpr::Kind::Pi
                               ? substitute_type(c.type.codomain(), c.type.name(), ProofTerm::var(x))
                               : c.type.codomain();
            same_type(s, cod, h.type, "codomain");
            Open open = ps[0].open;
            discharge_object(s, open, x, c.type.domain());
            return CheckResult{c, std::move(open)};
        }
        case Axiom::Mu: {
            arity(s, ps, 2);
            const Judgment& f = ps[0].conclusion;
            const Judgment& h = ps[1].conclusion;
            kind(s, f, Judgment::Kind::Typing, "premise 0");
            kind(s, h, Judgment::Kind::PathEq, "premise 1");
            path_kind(PathKind::Mu);
            require(s, fun_type(f.type), "premise 0 must have a Pi or arrow type");
            same_type(s, h.type, f.type.domain(), "argument type");
            same_path(s, p.child(0), h.path, "mu argument path");
            same_pt(s, ProofTerm::from_term(p.term()), f.subject, "mu function");
            same_pt(s, c.lhs, ProofTerm::apply(f.subject, h.lhs), "left side");
            same_pt(s, c.rhs, ProofTerm::apply(f.subject, h.rhs), "right side");
            same_type(s, c.type, instantiate(f.type, h.lhs), "type");
            break;
        }
        case Axiom::Nu: {
            arity(s, ps, 2);
            const Judgment& h = ps[0].conclusion;
            const Judgment& a = ps[1].conclusion;
            kind(s, h, Judgment::Kind::PathEq, "premise 0");
            kind(s, a, Judgment::Kind::Typing, "premise 1");
            path_kind(PathKind::Nu);
            require(s, fun_type(h.type), "premise 0 must equate functions");
            same_type(s, a.type, h.type.domain(), "argument type");
            same_path(s, p.child(0), h.path, "nu function path");
            same_pt(s, ProofTerm::from_term(p.term()), a.subject, "nu argument");
            same_pt(s, c.lhs, ProofTerm::apply(h.lhs, a.subject), "left side");
            same_pt(s, c.rhs, ProofTerm::apply(h.rhs, a.subject), "right side");
            same_type(s, c.type, instantiate(h.type, a.subject), "type");
            break;
        }
        case Axiom::Beta:
        case Axiom::Eta:
            // Only the step itself is validated (endpoints above); the typing
            // side conditions of the conversion axioms are not tracked.
            arity(s, ps, 0);
            path_kind(s.d.axiom == Axiom::Beta ? PathKind::Beta : PathKind::Eta);
            break;
        case Axiom::Rewrite: {
            arity(s, ps, 0);
            path_kind(PathKind::RuleStep);
            require(s, rule_relates(p.rule(), p.from(), p.to()),
                    std::string(rule_name(p.rule())) + " does not rewrite " + to_ground(p.from()) + " into " +
                        to_ground(p.to()));
            require(s, denotes(c.lhs, p.from()), "left side must be " + to_ground(p.from()));
            require(s, denotes(c.rhs, p.to()), "right side must be " + to_ground(p.to()));
            require(s, c.type.kind() == TypeExpr::Kind::Id, "a rule step lives in an Id type");
            auto x = to_endpoint(c.type.lhs());
            auto y = to_endpoint(c.type.rhs());
            require(s, x && endpoint_eq(*x, p.from().source()) && y && endpoint_eq(*y, p.from().target()),
                    "the Id type must be over the endpoints of " + to_ground(p.from()));
            break;
        }
        case Axiom::None: fail(s, ErrorKind::RuleMismatch, "equality axiom without a tag");
        }
        return CheckResult{c, merged(s, ps)};
    }
};

}  // namespace

CheckResult check_open(const Derivation& d) {
    Checker checker;
    return checker.walk(d, "");
}

Judgment check(const Derivation& d) {
    CheckResult r = check_open(d);
    if (!r.open.empty()) {
        std::string labels;
        for (const auto& [label, j] : r.open) labels += (labels.empty() ? "" : ", ") + label + " (" + to_notation(j) + ")";
        throw Error(ErrorKind::UndischargedHypothesis, "open hypotheses at the root: " + labels);
    }
    return r.conclusion;
}

// ---------------------------------------------------------------------------
// REWR reductions

std::string_view to_string(RewrReduction r) noexcept {
    switch (r) {
    case RewrReduction::None: return "none";
    case RewrReduction::Beta: return "beta";
    case RewrReduction::Eta: return "eta";
    }
    return "?";
}

namespace {

bool trivial_witness(const ProofTerm& minor, const std::string& g) {
    return minor.kind() == ProofTerm::Kind::Witness && minor.path().kind() == PathKind::Atom &&
           minor.path().name() == g;
}

std::optional<ProofTerm> reduce_once(const ProofTerm& t, RewrReduction& tag) {
    switch (t.kind()) {
    case ProofTerm::Kind::Var:
    case ProofTerm::Kind::Embed: return std::nullopt;
    case ProofTerm::Kind::Rewr:
        if (trivial_witness(t.body(), t.name())) {
            tag = RewrReduction::Eta;
            return t.major();
        }
        if (t.major().kind() == ProofTerm::Kind::Witness) {
            tag = RewrReduction::Beta;
            return substitute_path_var(t.body(), t.name(), t.major().path());
        }
        if (auto m = reduce_once(t.major(), tag)) return ProofTerm::rewr(*m, t.name(), t.body());
        if (auto h = reduce_once(t.body(), tag)) return ProofTerm::rewr(t.major(), t.name(), *h);
        return std::nullopt;
    case ProofTerm::Kind::Lam:
        if (auto b = reduce_once(t.body(), tag)) return ProofTerm::lam(t.name(), *b);
        return std::nullopt;
    case ProofTerm::Kind::Apply:
        if (auto f = reduce_once(t.fun(), tag)) return ProofTerm::apply(*f, t.arg());
        if (auto a = reduce_once(t.arg(), tag)) return ProofTerm::apply(t.fun(), *a);
        return std::nullopt;
    case ProofTerm::Kind::Witness:
        if (auto l = reduce_once(t.lhs(), tag)) return ProofTerm::witness(t.path(), *l, t.rhs());
        if (auto r = reduce_once(t.rhs(), tag)) return ProofTerm::witness(t.path(), t.lhs(), *r);
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

RewrStep reduce_rewr(const ProofTerm& t) {
    RewrReduction tag = RewrReduction::None;
    if (auto r = reduce_once(t, tag)) return RewrStep{*r, tag};
    return RewrStep{t, RewrReduction::None};
}

RewrNormalization normalize_rewr(const ProofTerm& t, std::size_t limit) {
    RewrNormalization out{t, {}};
    for (std::size_t i = 0; i < limit; ++i) {
        RewrStep s = reduce_rewr(out.term);
        if (s.tag == RewrReduction::None) return out;
        out.term = s.term;
        out.steps.push_back(s.tag);
    }
    throw Error(ErrorKind::FuelExhausted, "REWR reduction did not stop within " + std::to_string(limit) + " steps");
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

// Replaces the hypothesis leaves named in `labels` by `proof`, then applies
// `f` to every other judgment. Discharges of those labels are dropped.
Derivation splice(const Derivation& d, const std::vector<std::string>& labels, const Derivation& proof,
                  const std::function<Judgment(const Judgment&)>& f) {
    if (d.rule == Rule::Hyp && contains(labels, d.label)) return proof;
    Derivation out = d;
    out.conclusion = f(d.conclusion);
    out.discharged.clear();
    for (const std::string& l : d.discharged)
        if (!contains(labels, l)) out.discharged.push_back(l);
    for (Derivation& p : out.premises) p = splice(p, labels, proof, f);
    return out;
}

std::optional<Derivation> reduce_here(const Derivation& d) {
    if (d.rule != Rule::IdE1 || d.premises.size() != 2) return std::nullopt;
    const ProofTerm& subject = d.conclusion.subject;
    if (subject.empty() || subject.kind() != ProofTerm::Kind::Rewr) return std::nullopt;
    const std::string& g = subject.name();
    const Derivation& major = d.premises[0];
    const Derivation& minor = d.premises[1];
    if (trivial_witness(subject.body(), g)) return major;
    if (major.rule == Rule::IdI1 && major.premises.size() == 1) {
        const Derivation& path_proof = major.premises[0];
        const Path m = path_proof.conclusion.path;
        return splice(minor, d.discharged, path_proof,
                      [&](const Judgment& j) { return substitute_path_var(j, g, m); });
    }
    return std::nullopt;
}

}  // namespace

namespace {

ProofTerm replace_pt(const ProofTerm& t, const ProofTerm& from, const ProofTerm& to) {
    if (pt_eq(t, from)) return to;
    switch (t.kind()) {
    case ProofTerm::Kind::Var:
    case ProofTerm::Kind::Embed: return t;
    case ProofTerm::Kind::Lam: return ProofTerm::lam(t.name(), replace_pt(t.body(), from, to));
    case ProofTerm::Kind::Apply: return ProofTerm::apply(replace_pt(t.fun(), from, to), replace_pt(t.arg(), from, to));
    case ProofTerm::Kind::Witness:
        return ProofTerm::witness(t.path(), replace_pt(t.lhs(), from, to), replace_pt(t.rhs(), from, to));
    case ProofTerm::Kind::Rewr:
        return ProofTerm::rewr(replace_pt(t.major(), from, to), t.name(), replace_pt(t.body(), from, to));
    }
    return t;
}

TypeExpr replace_pt(const TypeExpr& t, const ProofTerm& from, const ProofTerm& to) {
    switch (t.kind()) {
    case TypeExpr::Kind::Base: return t;
    case TypeExpr::Kind::Id:
        return TypeExpr::id(replace_pt(t.carrier(), from, to), replace_pt(t.lhs(), from, to),
                            replace_pt(t.rhs(), from, to));
    case TypeExpr::Kind::Pi:
        return TypeExpr::pi(t.name(), replace_pt(t.domain(), from, to), replace_pt(t.codomain(), from, to));
    case TypeExpr::Kind::Arrow:
        return TypeExpr::arrow(replace_pt(t.domain(), from, to), replace_pt(t.codomain(), from, to));
    }
    return t;
}

Judgment replace_pt(const Judgment& j, const ProofTerm& from, const ProofTerm& to) {
    Judgment out = j;
    if (!out.subject.empty()) out.subject = replace_pt(j.subject, from, to);
    if (!out.lhs.empty()) out.lhs = replace_pt(j.lhs, from, to);
    if (!out.rhs.empty()) out.rhs = replace_pt(j.rhs, from, to);
    out.type = replace_pt(j.type, from, to);
    return out;
}

}  // namespace

std::optional<Derivation> reduce_derivation(const Derivation& d) {
    if (auto r = reduce_here(d)) return r;
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
        auto r = reduce_derivation(d.premises[i]);
        if (!r) continue;
        Derivation out = d;
        // Ancestors mention the reduced term; rewrite their conclusions too.
        const Judgment& before = d.premises[i].conclusion;
        const Judgment& after = r->conclusion;
        if (before.kind == Judgment::Kind::Typing && after.kind == Judgment::Kind::Typing)
            out.conclusion = replace_pt(d.conclusion, before.subject, after.subject);
        else if (before.kind == Judgment::Kind::PathEq && after.kind == Judgment::Kind::PathEq)
            out.conclusion = replace_pt(replace_pt(d.conclusion, before.lhs, after.lhs), before.rhs, after.rhs);
        out.premises[i] = std::move(*r);
        return out;
    }
    return std::nullopt;
}

Derivation plug_hypothesis(const Derivation& d, const std::string& label, const Derivation& proof) {
    std::optional<Judgment> hyp;
    std::function<void(const Derivation&)> find = [&](const Derivation& n) {
        if (hyp) return;
        if (n.rule == Rule::Hyp && n.label == label) hyp = n.conclusion;
        for (const Derivation& p : n.premises) find(p);
    };
    find(d);
    if (!hyp) throw Error(ErrorKind::InvalidArgument, "no hypothesis labelled " + label);
    if (hyp->kind != Judgment::Kind::Typing || hyp->subject.kind() != ProofTerm::Kind::Var)
        throw Error(ErrorKind::InvalidArgument, "hypothesis " + label + " is not of the form x : T");
    if (proof.conclusion.kind != Judgment::Kind::Typing || !type_eq(proof.conclusion.type, hyp->type))
        throw Error(ErrorKind::RuleMismatch, "the plugged proof does not conclude " + to_notation(hyp->type));
    const std::string x = hyp->subject.name();
    const ProofTerm value = proof.conclusion.subject;
    return splice(d, {label}, proof, [&](const Judgment& j) { return substitute_judgment(j, x, value); });
}

}  // namespace cpath
