#include "cpath/rewrite.hpp"

#include <string>

#include "cpath/error.hpp"

namespace cpath {

namespace {

bool is_kind(const Path& p, PathKind k) { return p.kind() == k; }

}  // namespace

bool rule_matches(RuleId rule, const Path& n) {
    switch (rule) {
    case RuleId::sr: return is_kind(n, PathKind::Sigma) && is_kind(n.inner(), PathKind::Rho);
    case RuleId::ss: return is_kind(n, PathKind::Sigma) && is_kind(n.inner(), PathKind::Sigma);
    case RuleId::tr:
        return is_kind(n, PathKind::Tau) && is_kind(n.right(), PathKind::Sigma) &&
               path_eq(n.left(), n.right().inner());
    case RuleId::tsr:
        return is_kind(n, PathKind::Tau) && is_kind(n.left(), PathKind::Sigma) &&
               path_eq(n.left().inner(), n.right());
    case RuleId::trr: return is_kind(n, PathKind::Tau) && is_kind(n.right(), PathKind::Rho);
    case RuleId::tlr: return is_kind(n, PathKind::Tau) && is_kind(n.left(), PathKind::Rho);
    case RuleId::tt: return is_kind(n, PathKind::Tau) && is_kind(n.left(), PathKind::Tau);
    }
    return false;
}

std::vector<RuleId> matching_rules(const Path& node) {
    std::vector<RuleId> out;
    for (RuleId r : kAllRules)
        if (rule_matches(r, node)) out.push_back(r);
    return out;
}

Path contract_node(RuleId rule, const Path& n) {
    if (!rule_matches(rule, n))
        throw Error(ErrorKind::RuleNotApplicable,
                    "rule " + std::string(rule_name(rule)) + " does not apply to " + to_string(n));
    switch (rule) {
    case RuleId::sr: return n.inner();
    case RuleId::ss: return n.inner().inner();
    case RuleId::tr: return mk_rho(n.left().source());
    case RuleId::tsr: return mk_rho(n.right().target());
    case RuleId::trr: return n.left();
    case RuleId::tlr: return n.right();
    case RuleId::tt: {
        const Path& inner = n.left();
        return mk_tau(inner.left(), mk_tau(inner.right(), n.right()));
    }
    }
    return n;
}

const Path& subpath_at(const Path& p, const Position& at) {
    const Path* cur = &p;
    for (std::size_t i : at) cur = &cur->child(i);
    return *cur;
}

namespace {

Path rebuild_with_child(const Path& p, std::size_t i, Path kid) {
    switch (p.kind()) {
    case PathKind::Sigma: return mk_sigma(std::move(kid));
    case PathKind::Tau: return i == 0 ? mk_tau(std::move(kid), p.right()) : mk_tau(p.left(), std::move(kid));
    case PathKind::Xi: return mk_xi(p.name(), std::move(kid));
    case PathKind::Mu: return mk_mu(p.term(), std::move(kid));
    case PathKind::Nu: return mk_nu(std::move(kid), p.term());
    default: throw Error(ErrorKind::InvalidArgument, "path node has no children");
    }
}

Path replace_from(const Path& p, const Position& at, std::size_t depth, Path replacement) {
    if (depth == at.size()) return replacement;
    std::size_t i = at[depth];
    return rebuild_with_child(p, i, replace_from(p.child(i), at, depth + 1, std::move(replacement)));
}

void positions_into(const Path& p, Position& pos, std::vector<Position>& out) {
    out.push_back(pos);
    for (std::size_t i = 0; i < p.arity(); ++i) {
        pos.push_back(i);
        positions_into(p.child(i), pos, out);
        pos.pop_back();
    }
}

std::size_t tau_left_weight(const Path& p) {
    std::size_t w = p.kind() == PathKind::Tau ? p.left().size() : 0;
    for (std::size_t i = 0; i < p.arity(); ++i) w += tau_left_weight(p.child(i));
    return w;
}

bool find_innermost(const Path& p, Position& pos, std::optional<std::pair<Position, RuleId>>& out) {
    for (std::size_t i = 0; i < p.arity(); ++i) {
        pos.push_back(i);
        bool found = find_innermost(p.child(i), pos, out);
        pos.pop_back();
        if (found) return true;
    }
    for (RuleId r : kAllRules) {
        if (rule_matches(r, p)) {
            out = std::make_pair(pos, r);
            return true;
        }
    }
    return false;
}

}  // namespace

Path replace_subpath(const Path& p, const Position& at, Path replacement) {
    return replace_from(p, at, 0, std::move(replacement));
}

std::vector<Position> positions(const Path& p) {
    std::vector<Position> out;
    Position pos;
    positions_into(p, pos, out);
    return out;
}

std::optional<RuleId> match_rule(const Path& p, const Position& at) {
    const Path& n = subpath_at(p, at);
    for (RuleId r : kAllRules)
        if (rule_matches(r, n)) return r;
    return std::nullopt;
}

Path apply_rule(const Path& p, const Position& at, RuleId rule) {
    return replace_subpath(p, at, contract_node(rule, subpath_at(p, at)));
}

Measure measure(const Path& p) { return Measure{p.size(), tau_left_weight(p)}; }

std::optional<std::pair<Position, RuleId>> find_redex(const Path& p) {
    std::optional<std::pair<Position, RuleId>> out;
    Position pos;
    find_innermost(p, pos, out);
    return out;
}

bool is_normal(const Path& p) { return !find_redex(p).has_value(); }

PathNormalization normalize_path(const Path& p) {
    PathNormalization r{p, Trace{p, {}}};
    while (auto redex = find_redex(r.normal_form)) {
        Path next = apply_rule(r.normal_form, redex->first, redex->second);
        r.trace.steps.push_back(RewriteStep{redex->second, redex->first, r.normal_form, next});
        r.normal_form = std::move(next);
    }
    return r;
}

bool Trace::valid() const {
    const Path* cur = &initial;
    for (const RewriteStep& s : steps) {
        if (!path_eq(*cur, s.before)) return false;
        try {
            if (!path_eq(apply_rule(s.before, s.position, s.rule), s.after)) return false;
        } catch (const Error&) {
            return false;
        }
        cur = &s.after;
    }
    return true;
}

Path Trace::as_path() const {
    if (steps.empty()) return mk_rho(initial);
    Path acc = mk_rule_step_unchecked(steps.front().rule, steps.front().before, steps.front().after);
    for (std::size_t i = 1; i < steps.size(); ++i)
        acc = mk_tau(std::move(acc), mk_rule_step_unchecked(steps[i].rule, steps[i].before, steps[i].after));
    return acc;
}

bool rule_relates(RuleId rule, const Path& from, const Path& to) {
    for (const Position& pos : positions(from)) {
        if (!rule_matches(rule, subpath_at(from, pos))) continue;
        if (path_eq(apply_rule(from, pos, rule), to)) return true;
    }
    return false;
}

Path mk_rule_step(RuleId rule, Path from, Path to) {
    if (!rule_relates(rule, from, to))
        throw Error(ErrorKind::RuleMismatch, std::string(rule_name(rule)) + " does not rewrite " +
                                                 to_string(from) + " into " + to_string(to));
    return mk_rule_step_unchecked(rule, std::move(from), std::move(to));
}

std::vector<RewriteStep> one_step_reducts(const Path& p) {
    std::vector<RewriteStep> out;
    for (const Position& pos : positions(p)) {
        const Path& n = subpath_at(p, pos);
        for (RuleId r : kAllRules)
            if (rule_matches(r, n)) out.push_back(RewriteStep{r, pos, p, apply_rule(p, pos, r)});
    }
    return out;
}

}  // namespace cpath
