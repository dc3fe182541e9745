#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cpath {

// Sequence of child indices from the root of a tree. For terms: Abs has one
// child (the body), App has two (function, argument).
using Position = std::vector<std::size_t>;

bool is_identifier(std::string_view s) noexcept;

// Untyped lambda term with named variables. Immutable; copies share structure.
class Term {
public:
    enum class Kind : std::uint8_t { Var, Abs, App };

    Term() = default;

    static Term var(std::string name);
    static Term abs(std::string binder, Term body);
    static Term app(Term fun, Term arg);

    Kind kind() const;
    bool is_var() const { return kind() == Kind::Var; }
    bool is_abs() const { return kind() == Kind::Abs; }
    bool is_app() const { return kind() == Kind::App; }

    // Var: the variable name. Abs: the binder.
    const std::string& name() const;
    const Term& body() const;
    const Term& fun() const;
    const Term& arg() const;

    std::size_t arity() const;
    const Term& child(std::size_t i) const;

    // Number of nodes.
    std::size_t size() const;

    bool empty() const noexcept { return node_ == nullptr; }
    bool same_node(const Term& other) const noexcept { return node_ == other.node_; }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const Node& node() const;

    std::shared_ptr<const Node> node_;
};

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, std::string_view x);
void collect_names(const Term& t, std::set<std::string>& out);

// Fresh variant of `base` (trailing digits replaced by a counter) not in `avoid`.
std::string fresh_name(std::string_view base, const std::set<std::string>& avoid);

// Capture-avoiding [replacement/x]body.
Term substitute(const Term& body, const std::string& x, const Term& replacement);

bool alpha_eq(const Term& a, const Term& b);

// Exact syntactic equality, binder names included.
bool identical(const Term& a, const Term& b);

const Term& subterm_at(const Term& t, const Position& at);
Term replace_at(const Term& t, const Position& at, Term replacement);

enum class RedexKind : std::uint8_t { Beta, Eta };

struct RedexSite {
    Position position;
    RedexKind kind;
    Term result;  // whole term after contracting this occurrence
};

// Contracts the redex of the given kind at `at`; throws InvalidArgument when
// the addressed node is not such a redex.
Term contract_at(const Term& t, const Position& at, RedexKind kind);

// All beta and eta redex occurrences in preorder, beta before eta at a node.
std::vector<RedexSite> contraction_sites(const Term& t);

struct TermNormalization {
    Term term;
    std::vector<RedexSite> history;
};

// Contracts until no redex remains. Eta sites are taken first (leftmost),
// otherwise the leftmost-outermost beta site. Throws FuelExhausted when more
// than `fuel` contractions would be needed.
TermNormalization normalize_term(const Term& t, std::size_t fuel);

// Canonical concrete syntax: x | (\x.M) | (M N). Always a single atom.
std::string to_string(const Term& t);

// Conventional notation with λ, minimal parentheses and juxtaposition; names
// are run together when every variable is a single character.
std::string to_notation(const Term& t);

}  // namespace cpath
