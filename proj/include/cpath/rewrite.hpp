#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cpath/path.hpp"

namespace cpath {

// Whether `rule`'s left-hand schema matches the node itself:
//   sr   σ(ρ)          ss   σ(σ(r))
//   tr   τ(r, σ(r))    tsr  τ(σ(r), r)
//   trr  τ(r, ρ)       tlr  τ(ρ, r)
//   tt   τ(τ(t, r), s)
// The repeated r of tr/tsr must be structurally identical (path_eq).
bool rule_matches(RuleId rule, const Path& node);

// Matching rules for the node in priority order sr, ss, tr, tsr, trr, tlr, tt.
std::vector<RuleId> matching_rules(const Path& node);

// Right-hand side for a node matched by `rule`; throws RuleNotApplicable.
Path contract_node(RuleId rule, const Path& node);

const Path& subpath_at(const Path& p, const Position& at);
Path replace_subpath(const Path& p, const Position& at, Path replacement);

// All node positions in preorder.
std::vector<Position> positions(const Path& p);

// First matching rule (priority order) at `at`.
std::optional<RuleId> match_rule(const Path& p, const Position& at);

// Rewrites the subnode at `at` with `rule`. Throws RuleNotApplicable if the
// schema does not match there.
Path apply_rule(const Path& p, const Position& at, RuleId rule);

// Lexicographic termination measure: (node count, sum over tau nodes of the
// node count of their left child). Every rule application strictly decreases it.
struct Measure {
    std::size_t nodes = 0;
    std::size_t tau_left_weight = 0;

    auto operator<=>(const Measure&) const = default;
};

Measure measure(const Path& p);

struct RewriteStep {
    RuleId rule;
    Position position;
    Path before;
    Path after;
};

struct Trace {
    Path initial;
    std::vector<RewriteStep> steps;

    const Path& final_path() const { return steps.empty() ? initial : steps.back().after; }

    // Snapshots chain and every step is a genuine application of its rule.
    bool valid() const;

    // The trace read one level up: rule steps composed with tau (left nested),
    // or rho of the initial path when there are no steps.
    Path as_path() const;
};

struct PathNormalization {
    Path normal_form;
    Trace trace;
};

// Leftmost-innermost redex (postorder) with the first matching rule.
std::optional<std::pair<Position, RuleId>> find_redex(const Path& p);

// Rewrites with find_redex until no rule matches.
PathNormalization normalize_path(const Path& p);

bool is_normal(const Path& p);

// True iff some application of `rule` (at any position) turns `from` into `to`.
bool rule_relates(RuleId rule, const Path& from, const Path& to);

// Level n+1 step between `from` and `to`; throws RuleMismatch unless
// rule_relates(rule, from, to).
Path mk_rule_step(RuleId rule, Path from, Path to);

// Every one-step reduct of `p`: all positions, all matching rules.
std::vector<RewriteStep> one_step_reducts(const Path& p);

}  // namespace cpath
