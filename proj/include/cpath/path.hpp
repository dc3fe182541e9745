#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cpath/term.hpp"

namespace cpath {

// The seven redundancy-removing rules on paths. Declared here because a
// RuleStep node names one; matching and rewriting live in rewrite.hpp.
enum class RuleId : std::uint8_t { sr, ss, tr, tsr, trr, tlr, tt };

inline constexpr std::array<RuleId, 7> kAllRules = {RuleId::sr,  RuleId::ss,  RuleId::tr, RuleId::tsr,
                                                    RuleId::trr, RuleId::tlr, RuleId::tt};

std::string_view rule_name(RuleId rule) noexcept;
std::optional<RuleId> rule_from_name(std::string_view name) noexcept;

class Path;
class Endpoint;

enum class PathKind : std::uint8_t { Rho, Beta, Eta, Alpha, Atom, Sigma, Tau, Xi, Mu, Nu, RuleStep };

std::string_view to_string(PathKind kind) noexcept;

// A computational path. Every node caches its endpoints, its level and its
// size, and is validated when built; a Path value is therefore always
// well-formed. Immutable; copies share structure.
class Path {
public:
    Path() = default;

    PathKind kind() const;
    const Endpoint& source() const;
    const Endpoint& target() const;

    // 0 when the endpoints are terms, otherwise 1 + level of the endpoints.
    std::size_t level() const;
    // Number of path nodes; endpoints of leaves are not counted.
    std::size_t size() const;

    // Rho
    const Endpoint& at() const;
    // Beta / Eta
    const Term& subject() const;
    const RedexSite& site() const;
    // Atom name, Xi binder
    const std::string& name() const;
    // RuleStep
    RuleId rule() const;
    const Path& from() const;
    const Path& to() const;
    // Mu function term, Nu argument term
    const Term& term() const;

    // Sub-paths that rewriting positions address: Sigma[inner], Tau[left, right],
    // Xi[body], Mu[arg path], Nu[fun path]. Leaves have none.
    std::size_t arity() const;
    const Path& child(std::size_t i) const;
    const Path& inner() const { return child(0); }
    const Path& left() const { return child(0); }
    const Path& right() const { return child(1); }

    bool empty() const noexcept { return node_ == nullptr; }
    bool same_node(const Path& other) const noexcept { return node_ == other.node_; }

    // Defined in path.cpp; public only so the factory there can name it.
    struct Node;

private:
    explicit Path(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const Node& node() const;

    std::shared_ptr<const Node> node_;

    friend struct PathFactory;
};

class Endpoint {
public:
    Endpoint(Term t) : value_(std::move(t)) {}
    Endpoint(Path p) : value_(std::move(p)) {}

    bool is_term() const noexcept { return std::holds_alternative<Term>(value_); }
    bool is_path() const noexcept { return std::holds_alternative<Path>(value_); }
    const Term& term() const;
    const Path& path() const;

    // 0 for terms; 1 + path level for paths. Two endpoints of one path always
    // share this value.
    std::size_t rank() const;

private:
    std::variant<Term, Path> value_;
};

// Structural equality with embedded terms compared up to alpha. Basic steps
// compare by subject and result.
bool path_eq(const Path& a, const Path& b);
bool endpoint_eq(const Endpoint& a, const Endpoint& b);

Path mk_rho(Endpoint at);
Path mk_sigma(Path p);
// Throws EndpointMismatch unless target(p) and source(q) agree up to alpha.
Path mk_tau(Path p, Path q);
Path mk_xi(std::string binder, Path body);
Path mk_mu(Term fun, Path arg_path);
Path mk_nu(Path fun_path, Term arg);
Path mk_beta(Term subject, Position at);
Path mk_eta(Term subject, Position at);
Path mk_alpha(Term from, Term to);
Path mk_atom(std::string name, Endpoint src, Endpoint tgt);
// Checks only that `from` and `to` are parallel paths; use mk_rule_step in
// rewrite.hpp for the schema check.
Path mk_rule_step_unchecked(RuleId rule, Path from, Path to);

// Builds the path for a consecutive contraction history starting at `start`:
// empty history gives rho, one step the basic step, otherwise a left-nested
// tau chain. Throws NonConsecutive when a step does not continue the previous.
Path path_from_history(const Term& start, const std::vector<RedexSite>& history);

// Normalizes both terms and joins them: m's contraction path, an alpha step
// if the normal forms differ only by bound names, then sigma of n's path.
// Empty segments are dropped; returns nullopt when the normal forms differ.
std::optional<Path> find_betaeta_path(const Term& m, const Term& n, std::size_t fuel);

// Replaces every atom called `name` (including inside endpoints of higher
// paths) by `replacement`.
Path substitute_atom(const Path& p, const std::string& name, const Path& replacement);
// Applies a capture-avoiding term substitution to every term inside the path.
Path substitute_term(const Path& p, const std::string& x, const Term& replacement);

// Renames every atom called `from` to `to`, keeping each occurrence's endpoints.
Path rename_atom(const Path& p, const std::string& from, const std::string& to);

bool atom_occurs(const Path& p, std::string_view name);
void collect_atom_names(const Path& p, std::set<std::string>& out);
void collect_term_names(const Path& p, std::set<std::string>& out);
bool term_var_occurs_free(const Path& p, std::string_view x);

// Counts of basic steps (beta/eta/alpha) and tau nodes.
std::size_t count_kind(const Path& p, PathKind kind);

// Concrete syntax (parseable by parse_path).
std::string to_string(const Path& p);
std::string to_string(const Endpoint& e);
// Ground notation: τ(τ(η(M,N),β(N,P)),β(P,Q)), σ(ρ), tt(from,to), ...
std::string to_ground(const Path& p);
std::string to_ground(const Endpoint& e);

}  // namespace cpath
