#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpath/path.hpp"
#include "cpath/rewrite.hpp"

namespace cpath {

inline constexpr std::size_t kDefaultBudget = 200000;
inline constexpr std::size_t kMaxHarnessAtoms = 3;
inline constexpr std::size_t kMaxHarnessNodes = 9;

// Atoms p, q, r laid out as a composable chain x -> y -> w -> z.
struct AtomChain {
    std::vector<Term> points;
    std::vector<Path> atoms;
};

AtomChain make_chain(std::size_t atom_count);

// Every well-formed path built from rho (at any chain point), the chain atoms,
// sigma and tau with at most `max_nodes` nodes, ordered by size. Throws
// BudgetExceeded once more than `budget` paths would be produced.
std::vector<Path> enumerate_paths(std::size_t atom_count, std::size_t max_nodes,
                                  std::size_t budget = kDefaultBudget);

// ---------------------------------------------------------------------------
// Termination certificate: for every subject, every applicable rule at every
// position strictly decreases the measure and preserves endpoints, and
// normalize_path ends in a redex-free path.

struct TerminationViolation {
    Path subject;
    std::string reason;
};

struct TerminationReport {
    std::size_t subjects = 0;
    std::size_t rule_applications = 0;
    std::size_t normalization_steps = 0;
    std::vector<TerminationViolation> violations;
};

TerminationReport termination_certificate(const std::vector<Path>& subjects);
TerminationReport termination_certificate_serial(const std::vector<Path>& subjects);

// ---------------------------------------------------------------------------
// Joinability: explores every reduction sequence of every subject and reports
// subjects with more than one reachable normal form.

struct Divergence {
    Path subject;
    Trace left;   // subject ->* one normal form
    Trace right;  // subject ->* a different normal form
};

struct JoinabilityReport {
    std::size_t atom_count = 0;
    std::size_t max_nodes = 0;
    std::size_t subjects = 0;
    std::size_t reducts_explored = 0;
    std::vector<Divergence> divergences;

    bool all_joinable() const noexcept { return divergences.empty(); }

    // One summary document.
    nlohmann::json to_json() const;
    // Line-delimited records: a summary line, then one line per divergence,
    // or an explicit {"joinable":"all"} line.
    std::vector<std::string> to_records() const;
};

// The set of normal forms reachable from `subject`, each with a trace.
std::vector<Trace> reachable_normal_forms(const Path& subject, std::size_t* explored = nullptr);

JoinabilityReport joinability_harness(std::size_t atom_count, std::size_t max_nodes,
                                      std::size_t budget = kDefaultBudget);
JoinabilityReport joinability_harness_serial(std::size_t atom_count, std::size_t max_nodes,
                                             std::size_t budget = kDefaultBudget);
JoinabilityReport check_joinability(const std::vector<Path>& subjects);
JoinabilityReport check_joinability_serial(const std::vector<Path>& subjects);

nlohmann::json trace_to_json(const Trace& trace);
nlohmann::json step_to_json(const RewriteStep& step);

}  // namespace cpath
