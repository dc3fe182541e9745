#include "cpath/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "cpath/error.hpp"

namespace cpath {

struct Term::Node {
    Kind kind;
    std::string name;
    Term left;
    Term right;
    std::size_t size;
};

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool is_identifier(std::string_view s) noexcept {
    if (s.empty() || !ident_start(s.front())) return false;
    return std::all_of(s.begin() + 1, s.end(), ident_char);
}

Term Term::var(std::string name) {
    if (!is_identifier(name))
        throw Error(ErrorKind::InvalidArgument, "invalid identifier '" + name + "'");
    return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}, {}, 1}));
}

Term Term::abs(std::string binder, Term body) {
    if (!is_identifier(binder))
        throw Error(ErrorKind::InvalidArgument, "invalid identifier '" + binder + "'");
    if (body.empty()) throw Error(ErrorKind::InvalidArgument, "abstraction without body");
    std::size_t n = body.size() + 1;
    return Term(std::make_shared<const Node>(Node{Kind::Abs, std::move(binder), std::move(body), {}, n}));
}

Term Term::app(Term fun, Term arg) {
    if (fun.empty() || arg.empty())
        throw Error(ErrorKind::InvalidArgument, "application with missing operand");
    std::size_t n = fun.size() + arg.size() + 1;
    return Term(std::make_shared<const Node>(Node{Kind::App, {}, std::move(fun), std::move(arg), n}));
}

const Term::Node& Term::node() const {
    if (!node_) throw Error(ErrorKind::InvalidArgument, "empty term");
    return *node_;
}

Term::Kind Term::kind() const { return node().kind; }
const std::string& Term::name() const { return node().name; }
const Term& Term::body() const { return node().left; }
const Term& Term::fun() const { return node().left; }
const Term& Term::arg() const { return node().right; }
std::size_t Term::size() const { return node().size; }

std::size_t Term::arity() const {
    switch (kind()) {
    case Kind::Var: return 0;
    case Kind::Abs: return 1;
    case Kind::App: return 2;
    }
    return 0;
}

const Term& Term::child(std::size_t i) const {
    if (i >= arity()) throw Error(ErrorKind::InvalidArgument, "term child index out of range");
    return i == 0 ? node().left : node().right;
}

namespace {

void free_vars_into(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (t.kind()) {
    case Term::Kind::Var:
        if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
        break;
    case Term::Kind::Abs:
        bound.push_back(t.name());
        free_vars_into(t.body(), bound, out);
        bound.pop_back();
        break;
    case Term::Kind::App:
        free_vars_into(t.fun(), bound, out);
        free_vars_into(t.arg(), bound, out);
        break;
    }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    free_vars_into(t, bound, out);
    return out;
}

bool occurs_free(const Term& t, std::string_view x) {
    switch (t.kind()) {
    case Term::Kind::Var: return t.name() == x;
    case Term::Kind::Abs: return t.name() != x && occurs_free(t.body(), x);
    case Term::Kind::App: return occurs_free(t.fun(), x) || occurs_free(t.arg(), x);
    }
    return false;
}

void collect_names(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
    case Term::Kind::Var: out.insert(t.name()); break;
    case Term::Kind::Abs:
        out.insert(t.name());
        collect_names(t.body(), out);
        break;
    case Term::Kind::App:
        collect_names(t.fun(), out);
        collect_names(t.arg(), out);
        break;
    }
}

std::string fresh_name(std::string_view base, const std::set<std::string>& avoid) {
    std::string stem(base);
    while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    for (std::size_t i = 1;; ++i) {
        std::string candidate = stem + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

Term substitute(const Term& body, const std::string& x, const Term& replacement) {
    switch (body.kind()) {
    case Term::Kind::Var:
        return body.name() == x ? replacement : body;
    case Term::Kind::App: {
        Term f = substitute(body.fun(), x, replacement);
        Term a = substitute(body.arg(), x, replacement);
        if (f.same_node(body.fun()) && a.same_node(body.arg())) return body;
        return Term::app(std::move(f), std::move(a));
    }
    case Term::Kind::Abs: {
        const std::string& y = body.name();
        if (y == x || !occurs_free(body.body(), x)) return body;
        if (!occurs_free(replacement, y))
            return Term::abs(y, substitute(body.body(), x, replacement));
        std::set<std::string> avoid = free_vars(replacement);
        collect_names(body.body(), avoid);
        avoid.insert(x);
        std::string z = fresh_name(y, avoid);
        Term renamed = substitute(body.body(), y, Term::var(z));
        return Term::abs(z, substitute(renamed, x, replacement));
    }
    }
    return body;
}

namespace {

// Index of the innermost binder named `name`, counted from the innermost; -1 if free.
long binder_depth(const std::vector<std::string>& env, const std::string& name) {
    for (std::size_t i = env.size(); i-- > 0;)
        if (env[i] == name) return static_cast<long>(env.size() - 1 - i);
    return -1;
}

bool alpha_eq_in(const Term& a, const Term& b, std::vector<std::string>& ea, std::vector<std::string>& eb) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Term::Kind::Var: {
        long da = binder_depth(ea, a.name());
        long db = binder_depth(eb, b.name());
        if (da != db) return false;
        return da >= 0 || a.name() == b.name();
    }
    case Term::Kind::Abs: {
        ea.push_back(a.name());
        eb.push_back(b.name());
        bool r = alpha_eq_in(a.body(), b.body(), ea, eb);
        ea.pop_back();
        eb.pop_back();
        return r;
    }
    case Term::Kind::App:
        return alpha_eq_in(a.fun(), b.fun(), ea, eb) && alpha_eq_in(a.arg(), b.arg(), ea, eb);
    }
    return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
    if (a.same_node(b)) return true;
    std::vector<std::string> ea, eb;
    return alpha_eq_in(a, b, ea, eb);
}

bool identical(const Term& a, const Term& b) {
    if (a.same_node(b)) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Term::Kind::Var: return a.name() == b.name();
    case Term::Kind::Abs: return a.name() == b.name() && identical(a.body(), b.body());
    case Term::Kind::App: return identical(a.fun(), b.fun()) && identical(a.arg(), b.arg());
    }
    return false;
}

const Term& subterm_at(const Term& t, const Position& at) {
    const Term* cur = &t;
    for (std::size_t i : at) cur = &cur->child(i);
    return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& at, std::size_t depth, Term replacement) {
    if (depth == at.size()) return replacement;
    std::size_t i = at[depth];
    Term kid = replace_from(t.child(i), at, depth + 1, std::move(replacement));
    if (t.is_abs()) return Term::abs(t.name(), std::move(kid));
    return i == 0 ? Term::app(std::move(kid), t.arg()) : Term::app(t.fun(), std::move(kid));
}

bool is_beta_redex(const Term& n) { return n.is_app() && n.fun().is_abs(); }

bool is_eta_redex(const Term& n) {
    if (!n.is_abs() || !n.body().is_app()) return false;
    const Term& a = n.body().arg();
    return a.is_var() && a.name() == n.name() && !occurs_free(n.body().fun(), n.name());
}

Term contract_node(const Term& n, RedexKind kind) {
    if (kind == RedexKind::Beta) return substitute(n.fun().body(), n.fun().name(), n.arg());
    return n.body().fun();
}

void sites_into(const Term& root, const Term& n, Position& pos, std::vector<RedexSite>& out) {
    if (is_beta_redex(n))
        out.push_back({pos, RedexKind::Beta, replace_at(root, pos, contract_node(n, RedexKind::Beta))});
    if (is_eta_redex(n))
        out.push_back({pos, RedexKind::Eta, replace_at(root, pos, contract_node(n, RedexKind::Eta))});
    for (std::size_t i = 0; i < n.arity(); ++i) {
        pos.push_back(i);
        sites_into(root, n.child(i), pos, out);
        pos.pop_back();
    }
}

}  // namespace

Term replace_at(const Term& t, const Position& at, Term replacement) {
    return replace_from(t, at, 0, std::move(replacement));
}

Term contract_at(const Term& t, const Position& at, RedexKind kind) {
    const Term& n = subterm_at(t, at);
    bool ok = kind == RedexKind::Beta ? is_beta_redex(n) : is_eta_redex(n);
    if (!ok)
        throw Error(ErrorKind::InvalidArgument,
                    std::string("no ") + (kind == RedexKind::Beta ? "beta" : "eta") +
                        "-redex at the given position of " + to_string(t));
    return replace_at(t, at, contract_node(n, kind));
}

std::vector<RedexSite> contraction_sites(const Term& t) {
    std::vector<RedexSite> out;
    Position pos;
    sites_into(t, t, pos, out);
    return out;
}

TermNormalization normalize_term(const Term& t, std::size_t fuel) {
    if (fuel == 0) throw Error(ErrorKind::InvalidArgument, "fuel must be positive");
    TermNormalization r{t, {}};
    for (;;) {
        std::vector<RedexSite> sites = contraction_sites(r.term);
        if (sites.empty()) return r;
        if (r.history.size() == fuel)
            throw Error(ErrorKind::FuelExhausted,
                        "no normal form within " + std::to_string(fuel) + " contractions");
        auto eta = std::find_if(sites.begin(), sites.end(),
                                [](const RedexSite& s) { return s.kind == RedexKind::Eta; });
        RedexSite chosen = eta != sites.end() ? *eta : sites.front();
        r.term = chosen.result;
        r.history.push_back(std::move(chosen));
    }
}

std::string to_string(const Term& t) {
    switch (t.kind()) {
    case Term::Kind::Var: return t.name();
    case Term::Kind::Abs: return "(\\" + t.name() + "." + to_string(t.body()) + ")";
    case Term::Kind::App: return "(" + to_string(t.fun()) + " " + to_string(t.arg()) + ")";
    }
    return {};
}

namespace {

bool all_names_short(const Term& t) {
    std::set<std::string> names;
    collect_names(t, names);
    return std::all_of(names.begin(), names.end(), [](const std::string& n) { return n.size() == 1; });
}

std::string notation(const Term& t, bool compact) {
    switch (t.kind()) {
    case Term::Kind::Var: return t.name();
    case Term::Kind::Abs: return "λ" + t.name() + "." + notation(t.body(), compact);
    case Term::Kind::App: {
        std::string f = notation(t.fun(), compact);
        if (t.fun().is_abs()) f = "(" + f + ")";
        std::string a = notation(t.arg(), compact);
        if (!t.arg().is_var()) a = "(" + a + ")";
        bool glue = compact || f.back() == ')' || a.front() == '(';
        return f + (glue ? "" : " ") + a;
    }
    }
    return {};
}

}  // namespace

std::string to_notation(const Term& t) { return notation(t, all_names_short(t)); }

}  // namespace cpath
