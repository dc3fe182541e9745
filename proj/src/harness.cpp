#include "cpath/harness.hpp"

#include <map>
#include <optional>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cpath/error.hpp"

namespace cpath {

AtomChain make_chain(std::size_t atom_count) {
    static const char* kPoints[] = {"x", "y", "w", "z"};
    static const char* kAtoms[] = {"p", "q", "r"};
    if (atom_count == 0 || atom_count > kMaxHarnessAtoms)
        throw Error(ErrorKind::InvalidArgument,
                    "atom count must be between 1 and " + std::to_string(kMaxHarnessAtoms));
    AtomChain chain;
    for (std::size_t i = 0; i <= atom_count; ++i) chain.points.push_back(Term::var(kPoints[i]));
    for (std::size_t i = 0; i < atom_count; ++i)
        chain.atoms.push_back(mk_atom(kAtoms[i], chain.points[i], chain.points[i + 1]));
    return chain;
}

std::vector<Path> enumerate_paths(std::size_t atom_count, std::size_t max_nodes, std::size_t budget) {
    if (max_nodes == 0 || max_nodes > kMaxHarnessNodes)
        throw Error(ErrorKind::InvalidArgument,
                    "max nodes must be between 1 and " + std::to_string(kMaxHarnessNodes));
    AtomChain chain = make_chain(atom_count);
    const std::size_t k = chain.points.size();

    // by_size[n][i * k + j]: paths of exactly n nodes from point i to point j.
    std::vector<std::vector<std::vector<Path>>> by_size(max_nodes + 1, std::vector<std::vector<Path>>(k * k));
    std::size_t total = 0;
    auto add = [&](std::size_t n, std::size_t i, std::size_t j, Path p) {
        if (++total > budget)
            throw Error(ErrorKind::BudgetExceeded,
                        "enumeration exceeds the budget of " + std::to_string(budget) + " paths");
        by_size[n][i * k + j].push_back(std::move(p));
    };

    for (std::size_t i = 0; i < k; ++i) add(1, i, i, mk_rho(chain.points[i]));
    for (std::size_t a = 0; a < chain.atoms.size(); ++a) add(1, a, a + 1, chain.atoms[a]);

    for (std::size_t n = 2; n <= max_nodes; ++n) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (const Path& p : by_size[n - 1][j * k + i]) add(n, i, j, mk_sigma(p));
        for (std::size_t left = 1; left + 1 < n; ++left) {
            std::size_t right = n - 1 - left;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t m = 0; m < k; ++m)
                    for (std::size_t j = 0; j < k; ++j)
                        for (const Path& p : by_size[left][i * k + m])
                            for (const Path& q : by_size[right][m * k + j]) add(n, i, j, mk_tau(p, q));
        }
    }

    std::vector<Path> out;
    out.reserve(total);
    for (auto& level : by_size)
        for (auto& bucket : level)
            for (Path& p : bucket) out.push_back(std::move(p));
    return out;
}

namespace {

struct SubjectTermination {
    std::size_t applications = 0;
    std::size_t steps = 0;
    std::optional<std::string> violation;
};

SubjectTermination certify(const Path& subject) {
    SubjectTermination r;
    const Measure before = measure(subject);
    for (const RewriteStep& s : one_step_reducts(subject)) {
        ++r.applications;
        const std::string where = std::string(rule_name(s.rule)) + " at depth " + std::to_string(s.position.size());
        if (!(measure(s.after) < before)) {
            r.violation = where + " does not decrease the measure";
            return r;
        }
        if (!endpoint_eq(s.after.source(), subject.source()) || !endpoint_eq(s.after.target(), subject.target())) {
            r.violation = where + " changes the endpoints";
            return r;
        }
    }
    PathNormalization nf = normalize_path(subject);
    r.steps = nf.trace.steps.size();
    if (!is_normal(nf.normal_form)) r.violation = "normal form still contains a redex";
    return r;
}

TerminationReport merge(const std::vector<Path>& subjects, const std::vector<SubjectTermination>& results) {
    TerminationReport report;
    report.subjects = subjects.size();
    for (std::size_t i = 0; i < results.size(); ++i) {
        report.rule_applications += results[i].applications;
        report.normalization_steps += results[i].steps;
        if (results[i].violation) report.violations.push_back({subjects[i], *results[i].violation});
    }
    return report;
}

}  // namespace

TerminationReport termination_certificate_serial(const std::vector<Path>& subjects) {
    std::vector<SubjectTermination> results(subjects.size());
    for (std::size_t i = 0; i < subjects.size(); ++i) results[i] = certify(subjects[i]);
    return merge(subjects, results);
}

TerminationReport termination_certificate(const std::vector<Path>& subjects) {
    std::vector<SubjectTermination> results(subjects.size());
    const long n = static_cast<long>(subjects.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long i = 0; i < n; ++i) results[i] = certify(subjects[i]);
    return merge(subjects, results);
}

namespace {

// Reduction graph of one subject, memoized by printed form.
class ReductionGraph {
public:
    struct Node {
        std::vector<RewriteStep> reducts;
        // normal form key -> index of the first reduct leading there (-1: self)
        std::map<std::string, long> normal_forms;
    };

    const Node& explore(const Path& p, const std::string& key) {
        if (auto it = nodes_.find(key); it != nodes_.end()) return it->second;
        Node node;
        node.reducts = one_step_reducts(p);
        if (node.reducts.empty()) node.normal_forms.emplace(key, -1);
        for (std::size_t i = 0; i < node.reducts.size(); ++i) {
            const Node& child = explore(node.reducts[i].after, to_string(node.reducts[i].after));
            for (const auto& nf : child.normal_forms) node.normal_forms.emplace(nf.first, static_cast<long>(i));
        }
        return nodes_.emplace(key, std::move(node)).first->second;
    }

    Trace trace_to(const Path& subject, const std::string& nf_key) const {
        Trace t{subject, {}};
        std::string key = to_string(subject);
        for (;;) {
            const Node& n = nodes_.at(key);
            long via = n.normal_forms.at(nf_key);
            if (via < 0) return t;
            const RewriteStep& s = n.reducts[static_cast<std::size_t>(via)];
            t.steps.push_back(s);
            key = to_string(s.after);
        }
    }

    std::size_t size() const noexcept { return nodes_.size(); }

private:
    std::unordered_map<std::string, Node> nodes_;
};

struct SubjectJoinability {
    std::size_t explored = 0;
    std::optional<Divergence> divergence;
};

SubjectJoinability join_subject(const Path& subject) {
    ReductionGraph g;
    const std::string key = to_string(subject);
    const auto& nfs = g.explore(subject, key).normal_forms;
    SubjectJoinability r;
    r.explored = g.size();
    if (nfs.size() > 1) {
        auto it = nfs.begin();
        const std::string first = it->first;
        const std::string second = (++it)->first;
        r.divergence = Divergence{subject, g.trace_to(subject, first), g.trace_to(subject, second)};
    }
    return r;
}

JoinabilityReport merge(const std::vector<Path>& subjects, std::vector<SubjectJoinability>& results) {
    JoinabilityReport report;
    report.subjects = subjects.size();
    for (auto& r : results) {
        report.reducts_explored += r.explored;
        if (r.divergence) report.divergences.push_back(std::move(*r.divergence));
    }
    return report;
}

}  // namespace

std::vector<Trace> reachable_normal_forms(const Path& subject, std::size_t* explored) {
    ReductionGraph g;
    const auto& nfs = g.explore(subject, to_string(subject)).normal_forms;
    std::vector<Trace> out;
    for (const auto& nf : nfs) out.push_back(g.trace_to(subject, nf.first));
    if (explored) *explored = g.size();
    return out;
}

JoinabilityReport check_joinability_serial(const std::vector<Path>& subjects) {
    std::vector<SubjectJoinability> results(subjects.size());
    for (std::size_t i = 0; i < subjects.size(); ++i) results[i] = join_subject(subjects[i]);
    return merge(subjects, results);
}

JoinabilityReport check_joinability(const std::vector<Path>& subjects) {
    std::vector<SubjectJoinability> results(subjects.size());
    const long n = static_cast<long>(subjects.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) results[i] = join_subject(subjects[i]);
    return merge(subjects, results);
}

JoinabilityReport joinability_harness(std::size_t atom_count, std::size_t max_nodes, std::size_t budget) {
    JoinabilityReport r = check_joinability(enumerate_paths(atom_count, max_nodes, budget));
    r.atom_count = atom_count;
    r.max_nodes = max_nodes;
    return r;
}

JoinabilityReport joinability_harness_serial(std::size_t atom_count, std::size_t max_nodes, std::size_t budget) {
    JoinabilityReport r = check_joinability_serial(enumerate_paths(atom_count, max_nodes, budget));
    r.atom_count = atom_count;
    r.max_nodes = max_nodes;
    return r;
}

nlohmann::json step_to_json(const RewriteStep& step) {
    return {{"rule", rule_name(step.rule)},
            {"position", step.position},
            {"before", to_string(step.before)},
            {"after", to_string(step.after)}};
}

nlohmann::json trace_to_json(const Trace& trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const RewriteStep& s : trace.steps) steps.push_back(step_to_json(s));
    return {{"initial", to_string(trace.initial)}, {"final", to_string(trace.final_path())}, {"steps", steps}};
}

namespace {

nlohmann::json divergence_to_json(const Divergence& d) {
    return {{"subject", to_string(d.subject)},
            {"normal_forms", {to_string(d.left.final_path()), to_string(d.right.final_path())}},
            {"left", trace_to_json(d.left)},
            {"right", trace_to_json(d.right)}};
}

nlohmann::json summary(const JoinabilityReport& r) {
    return {{"atoms", r.atom_count},
            {"max_nodes", r.max_nodes},
            {"subjects", r.subjects},
            {"reducts_explored", r.reducts_explored},
            {"non_joinable", r.divergences.size()}};
}

}  // namespace

nlohmann::json JoinabilityReport::to_json() const {
    nlohmann::json doc = summary(*this);
    if (divergences.empty()) {
        doc["joinable"] = "all";
        doc["divergences"] = nlohmann::json::array();
    } else {
        doc["joinable"] = "not all";
        nlohmann::json list = nlohmann::json::array();
        for (const Divergence& d : divergences) list.push_back(divergence_to_json(d));
        doc["divergences"] = std::move(list);
    }
    return doc;
}

std::vector<std::string> JoinabilityReport::to_records() const {
    std::vector<std::string> lines;
    nlohmann::json head = summary(*this);
    head["record"] = "summary";
    lines.push_back(head.dump());
    if (divergences.empty()) {
        lines.push_back(nlohmann::json{{"record", "joinability"}, {"joinable", "all"}}.dump());
        return lines;
    }
    for (const Divergence& d : divergences) {
        nlohmann::json rec = divergence_to_json(d);
        rec["record"] = "divergence";
        lines.push_back(rec.dump());
    }
    return lines;
}

}  // namespace cpath
