#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cpath/path.hpp"
#include "cpath/term.hpp"

namespace cpath {

// Proof terms of the identity-type calculus. Var/Lam/Apply mirror lambda
// terms; Witness is s(a,b), Rewr is REWR(m, g.h) binding the path variable g
// in h, Embed places a path where an object is expected (for Id types over
// paths). Constructors do not validate anything; check() does.
class ProofTerm {
public:
    enum class Kind { Var, Lam, Apply, Witness, Rewr, Embed };

    ProofTerm() = default;

    static ProofTerm var(std::string name);
    static ProofTerm lam(std::string binder, ProofTerm body);
    static ProofTerm apply(ProofTerm fun, ProofTerm arg);
    static ProofTerm witness(Path path, ProofTerm lhs, ProofTerm rhs);
    static ProofTerm rewr(ProofTerm major, std::string bound, ProofTerm minor);
    static ProofTerm embed(Path path);
    // Lambda terms embed structurally (Var/Lam/Apply).
    static ProofTerm from_term(const Term& t);

    Kind kind() const;
    // Var name, Lam binder, Rewr bound path variable
    const std::string& name() const;
    // Lam body, Rewr minor
    const ProofTerm& body() const;
    const ProofTerm& fun() const;
    const ProofTerm& arg() const;
    const ProofTerm& major() const;
    // Witness / Embed
    const Path& path() const;
    const ProofTerm& lhs() const;
    const ProofTerm& rhs() const;

    bool empty() const noexcept { return node_ == nullptr; }

private:
    struct Node;
    explicit ProofTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    const Node& node() const;
    std::shared_ptr<const Node> node_;
};

class TypeExpr {
public:
    enum class Kind { Base, Id, Pi, Arrow };

    TypeExpr() = default;

    static TypeExpr base(std::string name);
    static TypeExpr id(TypeExpr carrier, ProofTerm lhs, ProofTerm rhs);
    static TypeExpr pi(std::string binder, TypeExpr domain, TypeExpr codomain);
    static TypeExpr arrow(TypeExpr domain, TypeExpr codomain);

    Kind kind() const;
    // Base name, Pi binder
    const std::string& name() const;
    const TypeExpr& carrier() const;
    const ProofTerm& lhs() const;
    const ProofTerm& rhs() const;
    const TypeExpr& domain() const;
    const TypeExpr& codomain() const;

    bool empty() const noexcept { return node_ == nullptr; }

private:
    struct Node;
    explicit TypeExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    const Node& node() const;
    std::shared_ptr<const Node> node_;
};

struct Judgment {
    enum class Kind { IsType, Typing, PathEq };

    Kind kind = Kind::Typing;
    ProofTerm subject;  // Typing
    ProofTerm lhs;      // PathEq: lhs =_path rhs : type
    Path path;
    ProofTerm rhs;
    TypeExpr type;

    static Judgment is_type(TypeExpr t);
    static Judgment typing(ProofTerm subject, TypeExpr t);
    static Judgment path_eq(ProofTerm lhs, Path path, ProofTerm rhs, TypeExpr t);
};

enum class Rule { Hyp, IdF, IdI1, IdI2, IdE1, IdE2, PiI, PiE, EqAxiom };

// Equality axioms of the lambda-beta-eta theory, plus Rewrite for a single
// rule step between paths (rho..nu mirror path constructors).
enum class Axiom { None, Rho, Sigma, Tau, Xi, Mu, Nu, Beta, Eta, Rewrite };

struct Derivation {
    Rule rule = Rule::Hyp;
    Axiom axiom = Axiom::None;
    std::string label;  // hypothesis name for Hyp, free-form elsewhere
    Judgment conclusion;
    std::vector<Derivation> premises;
    std::vector<std::string> discharged;
    // Source location when read from a file (0 = unknown).
    std::size_t line = 0;
    std::size_t column = 0;
};

// Tags as written in derivation files: hyp, id-f, id-i1, ..., eq-rho, eq-rw.
std::string_view rule_tag(Rule rule, Axiom axiom);
std::optional<std::pair<Rule, Axiom>> rule_from_tag(std::string_view tag);

// ---------------------------------------------------------------------------
// Syntax-level operations

bool pt_eq(const ProofTerm& a, const ProofTerm& b);  // up to bound names
bool type_eq(const TypeExpr& a, const TypeExpr& b);  // Arrow = non-dependent Pi
bool judgment_eq(const Judgment& a, const Judgment& b);

std::optional<Term> to_term(const ProofTerm& t);
// Term for Var/Lam/Apply objects, the path for Embed, nothing otherwise.
std::optional<Endpoint> to_endpoint(const ProofTerm& t);
ProofTerm from_endpoint(const Endpoint& e);

bool pt_occurs_free(const ProofTerm& t, std::string_view x);
bool type_occurs_free(const TypeExpr& t, std::string_view x);
bool judgment_occurs_free(const Judgment& j, std::string_view x);
// Path variable g free (Rewr binds it in its minor).
bool pt_path_var_free(const ProofTerm& t, std::string_view g);
bool type_path_var_free(const TypeExpr& t, std::string_view g);
bool judgment_path_var_free(const Judgment& j, std::string_view g);

// Capture-avoiding substitution of object variable x.
ProofTerm substitute_pt(const ProofTerm& t, const std::string& x, const ProofTerm& replacement);
TypeExpr substitute_type(const TypeExpr& t, const std::string& x, const ProofTerm& replacement);
Judgment substitute_judgment(const Judgment& j, const std::string& x, const ProofTerm& replacement);
// h(m/g): replaces the path variable g by the path m.
ProofTerm substitute_path_var(const ProofTerm& t, const std::string& g, const Path& m);
TypeExpr substitute_path_var(const TypeExpr& t, const std::string& g, const Path& m);
Judgment substitute_path_var(const Judgment& j, const std::string& g, const Path& m);

// ---------------------------------------------------------------------------
// Checking

struct CheckResult {
    Judgment conclusion;
    std::map<std::string, Judgment> open;  // undischarged hypotheses by label
};

// Validates every node against its rule. Throws RuleMismatch,
// EndpointMismatch or UndischargedHypothesis with the offending node in the
// message. check() additionally requires that no hypothesis is left open.
CheckResult check_open(const Derivation& d);
Judgment check(const Derivation& d);

// ---------------------------------------------------------------------------
// REWR reductions

enum class RewrReduction { None, Beta, Eta };

std::string_view to_string(RewrReduction r) noexcept;

struct RewrStep {
    ProofTerm term;
    RewrReduction tag;
};

// One reduction at the outermost (preorder-first) REWR redex; eta is tried
// before beta at the same node.
RewrStep reduce_rewr(const ProofTerm& t);

struct RewrNormalization {
    ProofTerm term;
    std::vector<RewrReduction> steps;
};

// Iterates reduce_rewr to a fixpoint (at most `limit` steps).
RewrNormalization normalize_rewr(const ProofTerm& t, std::size_t limit = 1000);

// The derivation-level counterpart of reduce_rewr: rewrites the first
// reducible Id-E1 node (preorder). Beta splices the major's Id-I1 premise in
// place of the discharged path hypotheses of the minor; eta replaces the node
// by its major premise. Returns nullopt when no Id-E1 node is reducible.
std::optional<Derivation> reduce_derivation(const Derivation& d);

// Replaces every hypothesis leaf labelled `label` concluding x : T by `proof`
// (which must conclude some t : T) and substitutes t for x in all judgments.
// Used to instantiate the bodies of the built-in constructions.
Derivation plug_hypothesis(const Derivation& d, const std::string& label, const Derivation& proof);

// ---------------------------------------------------------------------------
// Built-in constructions: refl, symm, trans.

std::map<std::string, Derivation> builtin_constructions();

// ---------------------------------------------------------------------------
// Printing

// Conventional notation: λa.ρ(a,a), REWR(p, t́.(σ(t))(b,a)),
// Π_(a:A)(Id_A(a,b) → Id_A(b,a)), a =_s b : A.
std::string to_notation(const ProofTerm& t);
std::string to_notation(const TypeExpr& t);
std::string to_notation(const Judgment& j);

// Derivation-file syntax; read back by parse_derivation.
std::string to_sexpr(const ProofTerm& t);
std::string to_sexpr(const TypeExpr& t);
std::string to_sexpr(const Judgment& j);
std::string to_sexpr(const Derivation& d, std::size_t indent = 0);

// Derivation files:
//   deriv := (rule TAG [(label ID)] (conclusion J) [(premises deriv*)] [(discharge ID*)])
//   J     := (is-type T) | (has PT T) | (eq PT PATH PT T)
//   T     := ID | (Id T PT PT) | (Pi ID T T) | (-> T T)
//   PT    := ID | (lam ID PT) | (app PT PT) | (witness PATH PT PT)
//          | (rewr PT ID PT) | (embed PATH) | (\x.M) lambda term
// `;` starts a line comment. Throws ParseError with line and column.
Derivation parse_derivation(std::string_view text);
ProofTerm parse_proof_term(std::string_view text);
TypeExpr parse_type(std::string_view text);
Judgment parse_judgment(std::string_view text);

}  // namespace cpath
