#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cpath/harness.hpp"
#include "cpath/kernel.hpp"
#include "cpath/path.hpp"
#include "cpath/rewrite.hpp"

namespace cpath {

enum class LawId { assoc, left_unit, right_unit, left_inverse, right_inverse, double_sym };

struct GroupoidLaw {
    LawId id;
    std::string name;
    RuleId witness_rule;
    std::size_t atom_count;  // 3 for assoc, 1 otherwise
};

// The six laws in the order assoc, left_unit, right_unit, left_inverse,
// right_inverse, double_sym.
const std::vector<GroupoidLaw>& groupoid_laws();

// Both sides of `law` over `atoms` (p, q, r for assoc; r for the rest).
// Throws InvalidArgument on the wrong atom count and EndpointMismatch when
// the atoms do not compose.
std::pair<Path, Path> instantiate(const GroupoidLaw& law, const std::vector<Path>& atoms);

// p: x -> y, q: y -> w, r: w -> z for assoc; r: x -> y otherwise.
std::vector<Path> default_atoms(const GroupoidLaw& law);

struct LawWitness {
    GroupoidLaw law;
    Path lhs;
    Path rhs;
    Path normal_form;
    Trace lhs_trace;
    Trace rhs_trace;
    // as_path(lhs trace) composed with the reversed rhs trace: lhs -> rhs.
    Path witness;
    // The same without the trailing reflexivity; for the six laws a single
    // rule step such as tt(τ(τ(p,q),r),τ(p,τ(q,r))).
    Path inhabitant;
    // Id-I1 at level one: inhabitant(lhs, rhs) : Id_{Id_A(x,z)}(lhs, rhs).
    Derivation derivation;
    Judgment judgment;  // as validated by check()
};

// Normalizes both sides, requires structurally equal normal forms (LawFailed
// otherwise) and assembles the witness and its kernel derivation.
LawWitness verify_law(const GroupoidLaw& law, const std::vector<Path>& atoms);
LawWitness verify_law(const GroupoidLaw& law);

// 0 for paths between terms, n + 1 for paths between level-n paths; terms
// are not paths (NotAPath).
std::size_t level(const Endpoint& e);
std::size_t level(const Path& p);

// ---------------------------------------------------------------------------
// Globular towers

// layers[0] is a pair of terms, layers[k] a pair of level-(k-1) paths between
// the objects of layers[k-1]; `top` runs between the objects of the last
// layer. depth() counts the layers plus the top.
struct GlobularInstance {
    std::vector<std::pair<Endpoint, Endpoint>> layers;
    Path top;

    std::size_t depth() const noexcept { return layers.size() + 1; }
};

// Reads the tower off a path: the top's endpoints, then the endpoints of the
// top's source, and so on down to terms.
GlobularInstance tower_from_path(const Path& top);

// True iff s(s(x)) = s(t(x)) and t(s(x)) = t(t(x)) for every object x at
// layer 2 or above (the top included). Throws MalformedTower when levels or
// the declared layers do not chain, InvalidArgument when depth() < 2.
bool globular_check(const GlobularInstance& instance);

// ---------------------------------------------------------------------------
// Random generation (property tests, the globular command)

using Rng = std::mt19937_64;

// A random well-formed level-0 path over `chain` from point i to point j,
// biased towards rule redexes. `depth` bounds the template nesting.
Path random_path(Rng& rng, const AtomChain& chain, std::size_t from, std::size_t to, std::size_t depth);
Path random_path(Rng& rng, const AtomChain& chain, std::size_t depth);

// Wraps a path of any level in redundancy (σσx, τ(x,ρ), τ(x,σx) ...) without
// changing its endpoints.
Path decorate(Rng& rng, const Path& p, std::size_t rounds);

// A tower whose top has level depth-2: a random level-0 path, then repeatedly
// the path read from the normalization trace of a decorated copy.
GlobularInstance random_tower(Rng& rng, std::size_t depth);

struct GlobularReport {
    std::size_t towers = 0;
    std::size_t objects_checked = 0;
    std::size_t failures = 0;
    std::vector<std::size_t> depth_histogram;  // index = depth
};

GlobularReport globular_property(std::uint64_t seed, std::size_t count, std::size_t max_depth);

struct EndpointReport {
    std::size_t applications = 0;
    std::size_t failures = 0;
};

// Applies `count` random rule applications (random path, random redex
// position, random matching rule) and compares whole-path endpoints.
EndpointReport endpoint_property(std::uint64_t seed, std::size_t count);

}  // namespace cpath
