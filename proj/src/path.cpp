#include "cpath/path.hpp"

#include <utility>

#include "cpath/error.hpp"

namespace cpath {

std::string_view rule_name(RuleId rule) noexcept {
    switch (rule) {
    case RuleId::sr: return "sr";
    case RuleId::ss: return "ss";
    case RuleId::tr: return "tr";
    case RuleId::tsr: return "tsr";
    case RuleId::trr: return "trr";
    case RuleId::tlr: return "tlr";
    case RuleId::tt: return "tt";
    }
    return "?";
}

std::optional<RuleId> rule_from_name(std::string_view name) noexcept {
    for (RuleId r : kAllRules)
        if (rule_name(r) == name) return r;
    return std::nullopt;
}

std::string_view to_string(PathKind kind) noexcept {
    switch (kind) {
    case PathKind::Rho: return "rho";
    case PathKind::Beta: return "beta";
    case PathKind::Eta: return "eta";
    case PathKind::Alpha: return "alpha";
    case PathKind::Atom: return "atom";
    case PathKind::Sigma: return "sigma";
    case PathKind::Tau: return "tau";
    case PathKind::Xi: return "xi";
    case PathKind::Mu: return "mu";
    case PathKind::Nu: return "nu";
    case PathKind::RuleStep: return "rulestep";
    }
    return "?";
}

struct Path::Node {
    Node(PathKind k, Endpoint s, Endpoint t) : kind(k), src(std::move(s)), tgt(std::move(t)) {}

    PathKind kind;
    Endpoint src;
    Endpoint tgt;
    std::size_t level = 0;
    std::size_t size = 1;
    std::string name;
    RuleId rule = RuleId::sr;
    Term term;
    RedexSite site{{}, RedexKind::Beta, {}};
    std::vector<Path> kids;
    Path from;
    Path to;
};

struct PathFactory {
    static Path make(Path::Node node) {
        node.level = node.src.rank();
        node.size = 1;
        for (const Path& k : node.kids) node.size += k.size();
        return Path(std::make_shared<const Path::Node>(std::move(node)));
    }
};

const Path::Node& Path::node() const {
    if (!node_) throw Error(ErrorKind::InvalidArgument, "empty path");
    return *node_;
}

PathKind Path::kind() const { return node().kind; }
const Endpoint& Path::source() const { return node().src; }
const Endpoint& Path::target() const { return node().tgt; }
std::size_t Path::level() const { return node().level; }
std::size_t Path::size() const { return node().size; }

const Endpoint& Path::at() const {
    if (kind() != PathKind::Rho) throw Error(ErrorKind::InvalidArgument, "at() on non-rho path");
    return node().src;
}

const Term& Path::subject() const {
    if (kind() != PathKind::Beta && kind() != PathKind::Eta)
        throw Error(ErrorKind::InvalidArgument, "subject() on a path that is not a basic step");
    return node().term;
}

const RedexSite& Path::site() const {
    if (kind() != PathKind::Beta && kind() != PathKind::Eta)
        throw Error(ErrorKind::InvalidArgument, "site() on a path that is not a basic step");
    return node().site;
}

const std::string& Path::name() const { return node().name; }
RuleId Path::rule() const { return node().rule; }
const Path& Path::from() const { return node().from; }
const Path& Path::to() const { return node().to; }
const Term& Path::term() const { return node().term; }
std::size_t Path::arity() const { return node().kids.size(); }

const Path& Path::child(std::size_t i) const {
    if (i >= arity()) throw Error(ErrorKind::InvalidArgument, "path child index out of range");
    return node().kids[i];
}

const Term& Endpoint::term() const {
    if (!is_term()) throw Error(ErrorKind::InvalidArgument, "endpoint is a path, not a term");
    return std::get<Term>(value_);
}

const Path& Endpoint::path() const {
    if (!is_path()) throw Error(ErrorKind::InvalidArgument, "endpoint is a term, not a path");
    return std::get<Path>(value_);
}

std::size_t Endpoint::rank() const { return is_term() ? 0 : path().level() + 1; }

bool endpoint_eq(const Endpoint& a, const Endpoint& b) {
    if (a.is_term() && b.is_term()) return alpha_eq(a.term(), b.term());
    if (a.is_path() && b.is_path()) return path_eq(a.path(), b.path());
    return false;
}

bool path_eq(const Path& a, const Path& b) {
    if (a.same_node(b)) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case PathKind::Rho: return endpoint_eq(a.at(), b.at());
    case PathKind::Beta:
    case PathKind::Eta:
    case PathKind::Alpha:
        return endpoint_eq(a.source(), b.source()) && endpoint_eq(a.target(), b.target());
    case PathKind::Atom:
        return a.name() == b.name() && endpoint_eq(a.source(), b.source()) &&
               endpoint_eq(a.target(), b.target());
    case PathKind::Sigma: return path_eq(a.inner(), b.inner());
    case PathKind::Tau: return path_eq(a.left(), b.left()) && path_eq(a.right(), b.right());
    case PathKind::Xi: return a.name() == b.name() && path_eq(a.child(0), b.child(0));
    case PathKind::Mu:
    case PathKind::Nu: return alpha_eq(a.term(), b.term()) && path_eq(a.child(0), b.child(0));
    case PathKind::RuleStep:
        return a.rule() == b.rule() && path_eq(a.from(), b.from()) && path_eq(a.to(), b.to());
    }
    return false;
}

Path mk_rho(Endpoint at) {
    Endpoint copy = at;
    return PathFactory::make(Path::Node(PathKind::Rho, std::move(at), std::move(copy)));
}

Path mk_sigma(Path p) {
    Path::Node n(PathKind::Sigma, p.target(), p.source());
    n.kids.push_back(std::move(p));
    return PathFactory::make(std::move(n));
}

Path mk_tau(Path p, Path q) {
    if (!endpoint_eq(p.target(), q.source()))
        throw Error(ErrorKind::EndpointMismatch, "tau: target of the left path " + to_string(p.target()) +
                                                     " does not match source of the right path " +
                                                     to_string(q.source()));
    Path::Node n(PathKind::Tau, p.source(), q.target());
    n.kids.push_back(std::move(p));
    n.kids.push_back(std::move(q));
    return PathFactory::make(std::move(n));
}

namespace {

void require_term_level(const Path& p, std::string_view ctor) {
    if (!p.source().is_term())
        throw Error(ErrorKind::InvalidArgument,
                    std::string(ctor) + " applies only to paths between terms");
}

}  // namespace

Path mk_xi(std::string binder, Path body) {
    require_term_level(body, "xi");
    if (!is_identifier(binder)) throw Error(ErrorKind::InvalidArgument, "invalid xi binder '" + binder + "'");
    Path::Node n(PathKind::Xi, Term::abs(binder, body.source().term()), Term::abs(binder, body.target().term()));
    n.name = std::move(binder);
    n.kids.push_back(std::move(body));
    return PathFactory::make(std::move(n));
}

Path mk_mu(Term fun, Path arg_path) {
    require_term_level(arg_path, "mu");
    Path::Node n(PathKind::Mu, Term::app(fun, arg_path.source().term()), Term::app(fun, arg_path.target().term()));
    n.term = std::move(fun);
    n.kids.push_back(std::move(arg_path));
    return PathFactory::make(std::move(n));
}

Path mk_nu(Path fun_path, Term arg) {
    require_term_level(fun_path, "nu");
    Path::Node n(PathKind::Nu, Term::app(fun_path.source().term(), arg), Term::app(fun_path.target().term(), arg));
    n.term = std::move(arg);
    n.kids.push_back(std::move(fun_path));
    return PathFactory::make(std::move(n));
}

namespace {

Path mk_basic(PathKind kind, RedexKind rk, Term subject, Position at) {
    Term result = contract_at(subject, at, rk);
    Path::Node n(kind, subject, result);
    n.term = std::move(subject);
    n.site = RedexSite{std::move(at), rk, std::move(result)};
    return PathFactory::make(std::move(n));
}

}  // namespace

Path mk_beta(Term subject, Position at) {
    return mk_basic(PathKind::Beta, RedexKind::Beta, std::move(subject), std::move(at));
}

Path mk_eta(Term subject, Position at) {
    return mk_basic(PathKind::Eta, RedexKind::Eta, std::move(subject), std::move(at));
}

Path mk_alpha(Term from, Term to) {
    if (!alpha_eq(from, to))
        throw Error(ErrorKind::EndpointMismatch,
                    "alpha step between terms that are not alpha-equivalent: " + to_string(from) + " and " +
                        to_string(to));
    return PathFactory::make(Path::Node(PathKind::Alpha, std::move(from), std::move(to)));
}

Path mk_atom(std::string name, Endpoint src, Endpoint tgt) {
    if (!is_identifier(name)) throw Error(ErrorKind::InvalidArgument, "invalid atom name '" + name + "'");
    if (src.rank() != tgt.rank())
        throw Error(ErrorKind::EndpointMismatch, "atom #" + name + " joins endpoints of different levels");
    Path::Node n(PathKind::Atom, std::move(src), std::move(tgt));
    n.name = std::move(name);
    return PathFactory::make(std::move(n));
}

Path mk_rule_step_unchecked(RuleId rule, Path from, Path to) {
    if (!endpoint_eq(from.source(), to.source()) || !endpoint_eq(from.target(), to.target()))
        throw Error(ErrorKind::EndpointMismatch, std::string(rule_name(rule)) +
                                                     " step between paths that are not parallel: " +
                                                     to_string(from) + " and " + to_string(to));
    Path::Node n(PathKind::RuleStep, from, to);
    n.rule = rule;
    n.from = std::move(from);
    n.to = std::move(to);
    return PathFactory::make(std::move(n));
}

Path path_from_history(const Term& start, const std::vector<RedexSite>& history) {
    std::optional<Path> acc;
    Term cur = start;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const RedexSite& s = history[i];
        Path step;
        try {
            step = s.kind == RedexKind::Beta ? mk_beta(cur, s.position) : mk_eta(cur, s.position);
        } catch (const Error&) {
            throw Error(ErrorKind::NonConsecutive,
                        "step " + std::to_string(i) + " is not a redex of " + to_string(cur));
        }
        if (!alpha_eq(step.target().term(), s.result))
            throw Error(ErrorKind::NonConsecutive,
                        "step " + std::to_string(i) + " does not produce its recorded result");
        cur = s.result;
        acc = acc ? mk_tau(std::move(*acc), std::move(step)) : std::move(step);
    }
    return acc ? *acc : mk_rho(start);
}

std::optional<Path> find_betaeta_path(const Term& m, const Term& n, std::size_t fuel) {
    TermNormalization nm = normalize_term(m, fuel);
    TermNormalization nn = normalize_term(n, fuel);
    if (!alpha_eq(nm.term, nn.term)) return std::nullopt;

    std::vector<Path> segments;
    if (!nm.history.empty()) segments.push_back(path_from_history(m, nm.history));
    if (!identical(nm.term, nn.term)) segments.push_back(mk_alpha(nm.term, nn.term));
    if (!nn.history.empty()) segments.push_back(mk_sigma(path_from_history(n, nn.history)));
    if (segments.empty()) return mk_rho(m);

    Path acc = segments.front();
    for (std::size_t i = 1; i < segments.size(); ++i) acc = mk_tau(std::move(acc), segments[i]);
    return acc;
}

namespace {

Endpoint map_endpoint(const Endpoint& e, const auto& on_term, const auto& on_path) {
    if (e.is_term()) return on_term(e.term());
    return on_path(e.path());
}

}  // namespace

namespace {

// Rebuilds `p` with every atom replaced by on_atom(atom); atoms nested in
// path endpoints are visited too.
template <class F>
Path map_atoms(const Path& p, const F& on_atom) {
    auto on_term = [](const Term& t) { return Endpoint(t); };
    auto on_path = [&](const Path& q) { return Endpoint(map_atoms(q, on_atom)); };
    switch (p.kind()) {
    case PathKind::Atom:
        if (p.source().is_term()) return on_atom(p);
        return on_atom(mk_atom(p.name(), map_endpoint(p.source(), on_term, on_path),
                               map_endpoint(p.target(), on_term, on_path)));
    case PathKind::Rho:
        if (p.at().is_term()) return p;
        return mk_rho(map_endpoint(p.at(), on_term, on_path));
    case PathKind::Beta:
    case PathKind::Eta:
    case PathKind::Alpha: return p;
    case PathKind::Sigma: return mk_sigma(map_atoms(p.inner(), on_atom));
    case PathKind::Tau: return mk_tau(map_atoms(p.left(), on_atom), map_atoms(p.right(), on_atom));
    case PathKind::Xi: return mk_xi(p.name(), map_atoms(p.child(0), on_atom));
    case PathKind::Mu: return mk_mu(p.term(), map_atoms(p.child(0), on_atom));
    case PathKind::Nu: return mk_nu(map_atoms(p.child(0), on_atom), p.term());
    case PathKind::RuleStep:
        return mk_rule_step_unchecked(p.rule(), map_atoms(p.from(), on_atom), map_atoms(p.to(), on_atom));
    }
    return p;
}

}  // namespace

Path substitute_atom(const Path& p, const std::string& name, const Path& replacement) {
    if (!atom_occurs(p, name)) return p;
    return map_atoms(p, [&](const Path& a) { return a.name() == name ? replacement : a; });
}

Path rename_atom(const Path& p, const std::string& from, const std::string& to) {
    if (!atom_occurs(p, from)) return p;
    return map_atoms(p, [&](const Path& a) { return a.name() == from ? mk_atom(to, a.source(), a.target()) : a; });
}

Path substitute_term(const Path& p, const std::string& x, const Term& replacement) {
    auto sub = [&](const Term& t) { return substitute(t, x, replacement); };
    auto on_term = [&](const Term& t) { return Endpoint(sub(t)); };
    auto on_path = [&](const Path& q) { return Endpoint(substitute_term(q, x, replacement)); };
    switch (p.kind()) {
    case PathKind::Rho: return mk_rho(map_endpoint(p.at(), on_term, on_path));
    case PathKind::Beta: return mk_beta(sub(p.subject()), p.site().position);
    case PathKind::Eta: return mk_eta(sub(p.subject()), p.site().position);
    case PathKind::Alpha: return mk_alpha(sub(p.source().term()), sub(p.target().term()));
    case PathKind::Atom:
        return mk_atom(p.name(), map_endpoint(p.source(), on_term, on_path),
                       map_endpoint(p.target(), on_term, on_path));
    case PathKind::Sigma: return mk_sigma(substitute_term(p.inner(), x, replacement));
    case PathKind::Tau:
        return mk_tau(substitute_term(p.left(), x, replacement), substitute_term(p.right(), x, replacement));
    case PathKind::Xi: {
        const std::string& y = p.name();
        if (y == x) return p;
        if (!occurs_free(replacement, y)) return mk_xi(y, substitute_term(p.child(0), x, replacement));
        std::set<std::string> avoid = free_vars(replacement);
        collect_term_names(p, avoid);
        avoid.insert(x);
        std::string z = fresh_name(y, avoid);
        Path renamed = substitute_term(p.child(0), y, Term::var(z));
        return mk_xi(z, substitute_term(renamed, x, replacement));
    }
    case PathKind::Mu: return mk_mu(sub(p.term()), substitute_term(p.child(0), x, replacement));
    case PathKind::Nu: return mk_nu(substitute_term(p.child(0), x, replacement), sub(p.term()));
    case PathKind::RuleStep:
        return mk_rule_step_unchecked(p.rule(), substitute_term(p.from(), x, replacement),
                                      substitute_term(p.to(), x, replacement));
    }
    return p;
}

namespace {

void endpoint_term_names(const Endpoint& e, std::set<std::string>& out) {
    if (e.is_term())
        collect_names(e.term(), out);
    else
        collect_term_names(e.path(), out);
}

bool endpoint_has_atom(const Endpoint& e, std::string_view name) {
    return e.is_path() && atom_occurs(e.path(), name);
}

bool endpoint_has_free(const Endpoint& e, std::string_view x) {
    return e.is_term() ? occurs_free(e.term(), x) : term_var_occurs_free(e.path(), x);
}

}  // namespace

bool atom_occurs(const Path& p, std::string_view name) {
    switch (p.kind()) {
    case PathKind::Atom:
        return p.name() == name || endpoint_has_atom(p.source(), name) || endpoint_has_atom(p.target(), name);
    case PathKind::Rho: return endpoint_has_atom(p.at(), name);
    case PathKind::RuleStep: return atom_occurs(p.from(), name) || atom_occurs(p.to(), name);
    default:
        for (std::size_t i = 0; i < p.arity(); ++i)
            if (atom_occurs(p.child(i), name)) return true;
        return false;
    }
}

void collect_atom_names(const Path& p, std::set<std::string>& out) {
    switch (p.kind()) {
    case PathKind::Atom:
        out.insert(p.name());
        [[fallthrough]];
    case PathKind::Rho:
        if (p.source().is_path()) collect_atom_names(p.source().path(), out);
        if (p.target().is_path()) collect_atom_names(p.target().path(), out);
        return;
    case PathKind::RuleStep:
        collect_atom_names(p.from(), out);
        collect_atom_names(p.to(), out);
        return;
    default:
        for (std::size_t i = 0; i < p.arity(); ++i) collect_atom_names(p.child(i), out);
    }
}

void collect_term_names(const Path& p, std::set<std::string>& out) {
    endpoint_term_names(p.source(), out);
    endpoint_term_names(p.target(), out);
    if (p.kind() == PathKind::Xi) out.insert(p.name());
    for (std::size_t i = 0; i < p.arity(); ++i) collect_term_names(p.child(i), out);
}

bool term_var_occurs_free(const Path& p, std::string_view x) {
    // Endpoints of a node are built from its children's, so the root's
    // endpoints plus the interior of composite nodes cover every term.
    if (endpoint_has_free(p.source(), x) || endpoint_has_free(p.target(), x)) return true;
    if (p.kind() == PathKind::Xi && p.name() == x) return false;
    for (std::size_t i = 0; i < p.arity(); ++i)
        if (term_var_occurs_free(p.child(i), x)) return true;
    return false;
}

std::size_t count_kind(const Path& p, PathKind kind) {
    std::size_t n = p.kind() == kind ? 1 : 0;
    for (std::size_t i = 0; i < p.arity(); ++i) n += count_kind(p.child(i), kind);
    return n;
}

std::string to_string(const Endpoint& e) {
    if (e.is_term()) return to_string(e.term());
    return "{" + to_string(e.path()) + "}";
}

std::string to_string(const Path& p) {
    auto basic = [&](std::string_view tag) {
        return std::string(tag) + "[" + to_string(p.source().term()) + " => " + to_string(p.target().term()) + "]";
    };
    switch (p.kind()) {
    case PathKind::Rho:
        return p.at().is_term() ? "rho[" + to_string(p.at().term()) + "]" : "rho" + to_string(p.at());
    case PathKind::Beta: return basic("beta");
    case PathKind::Eta: return basic("eta");
    case PathKind::Alpha: return basic("alpha");
    case PathKind::Atom: return "#" + p.name() + ": " + to_string(p.source()) + " -> " + to_string(p.target());
    case PathKind::Sigma: return "sigma(" + to_string(p.inner()) + ")";
    case PathKind::Tau: return "tau(" + to_string(p.left()) + ", " + to_string(p.right()) + ")";
    case PathKind::Xi: return "xi(" + p.name() + "." + to_string(p.child(0)) + ")";
    case PathKind::Mu: return "mu(" + to_string(p.term()) + ", " + to_string(p.child(0)) + ")";
    case PathKind::Nu: return "nu(" + to_string(p.child(0)) + ", " + to_string(p.term()) + ")";
    case PathKind::RuleStep:
        return std::string(rule_name(p.rule())) + "{" + to_string(p.from()) + " => " + to_string(p.to()) + "}";
    }
    return {};
}

std::string to_ground(const Endpoint& e) {
    return e.is_term() ? to_notation(e.term()) : to_ground(e.path());
}

std::string to_ground(const Path& p) {
    auto basic = [&](std::string_view tag) {
        return std::string(tag) + "(" + to_notation(p.source().term()) + "," + to_notation(p.target().term()) + ")";
    };
    switch (p.kind()) {
    case PathKind::Rho: return "ρ";
    case PathKind::Beta: return basic("β");
    case PathKind::Eta: return basic("η");
    case PathKind::Alpha: return basic("α");
    case PathKind::Atom: return p.name();
    case PathKind::Sigma: return "σ(" + to_ground(p.inner()) + ")";
    case PathKind::Tau: return "τ(" + to_ground(p.left()) + "," + to_ground(p.right()) + ")";
    case PathKind::Xi: return "ξ(" + to_ground(p.child(0)) + ")";
    case PathKind::Mu: return "μ(" + to_ground(p.child(0)) + ")";
    case PathKind::Nu: return "ν(" + to_ground(p.child(0)) + ")";
    case PathKind::RuleStep:
        return std::string(rule_name(p.rule())) + "(" + to_ground(p.from()) + "," + to_ground(p.to()) + ")";
    }
    return {};
}

}  // namespace cpath
