#include "cpath/groupoid.hpp"

#include "cpath/error.hpp"

namespace cpath {

const std::vector<GroupoidLaw>& groupoid_laws() {
    static const std::vector<GroupoidLaw> laws = {
        {LawId::assoc, "assoc", RuleId::tt, 3},
        {LawId::left_unit, "left_unit", RuleId::tlr, 1},
        {LawId::right_unit, "right_unit", RuleId::trr, 1},
        {LawId::left_inverse, "left_inverse", RuleId::tsr, 1},
        {LawId::right_inverse, "right_inverse", RuleId::tr, 1},
        {LawId::double_sym, "double_sym", RuleId::ss, 1},
    };
    return laws;
}

std::pair<Path, Path> instantiate(const GroupoidLaw& law, const std::vector<Path>& atoms) {
    if (atoms.size() != law.atom_count)
        throw Error(ErrorKind::InvalidArgument, law.name + " takes " + std::to_string(law.atom_count) +
                                                    " path(s), got " + std::to_string(atoms.size()));
    switch (law.id) {
    case LawId::assoc: {
        const Path &p = atoms[0], &q = atoms[1], &r = atoms[2];
        return {mk_tau(mk_tau(p, q), r), mk_tau(p, mk_tau(q, r))};
    }
    case LawId::left_unit: return {mk_tau(mk_rho(atoms[0].source()), atoms[0]), atoms[0]};
    case LawId::right_unit: return {mk_tau(atoms[0], mk_rho(atoms[0].target())), atoms[0]};
    case LawId::left_inverse: return {mk_tau(mk_sigma(atoms[0]), atoms[0]), mk_rho(atoms[0].target())};
    case LawId::right_inverse: return {mk_tau(atoms[0], mk_sigma(atoms[0])), mk_rho(atoms[0].source())};
    case LawId::double_sym: return {mk_sigma(mk_sigma(atoms[0])), atoms[0]};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown law");
}

std::vector<Path> default_atoms(const GroupoidLaw& law) {
    if (law.atom_count == 3) return make_chain(3).atoms;
    Term x = Term::var("x"), y = Term::var("y");
    return {mk_atom("r", x, y)};
}

namespace {

ProofTerm object(const Endpoint& e) { return from_endpoint(e); }

// Id_{Id_A(x,y)}(lhs, rhs) for level-0 sides; deeper sides nest the carrier.
TypeExpr carrier_of(const Path& p) {
    if (p.source().is_term()) return TypeExpr::id(TypeExpr::base("A"), object(p.source()), object(p.target()));
    return TypeExpr::id(carrier_of(p.source().path()), object(p.source()), object(p.target()));
}

// Derivation of lhs =_inhabitant rhs : carrier from eq-rw leaves composed by
// eq-tau / eq-sigma; a bare rho becomes an (open) hypothesis.
Derivation derive_equation(const Path& p, const TypeExpr& carrier) {
    Derivation d;
    d.rule = Rule::EqAxiom;
    d.conclusion = Judgment::path_eq(object(p.source()), p, object(p.target()), carrier);
    switch (p.kind()) {
    case PathKind::RuleStep: d.axiom = Axiom::Rewrite; break;
    case PathKind::Sigma:
        d.axiom = Axiom::Sigma;
        d.premises.push_back(derive_equation(p.inner(), carrier));
        break;
    case PathKind::Tau:
        d.axiom = Axiom::Tau;
        d.premises.push_back(derive_equation(p.left(), carrier));
        d.premises.push_back(derive_equation(p.right(), carrier));
        break;
    case PathKind::Rho: {
        d.axiom = Axiom::Rho;
        Derivation h;
        h.rule = Rule::Hyp;
        h.label = "o";
        h.conclusion = Judgment::typing(object(p.at()), carrier);
        d.premises.push_back(std::move(h));
        break;
    }
    default: throw Error(ErrorKind::InvalidArgument, "no derivation for " + to_ground(p));
    }
    return d;
}

}  // namespace

LawWitness verify_law(const GroupoidLaw& law, const std::vector<Path>& atoms) {
    auto [lhs, rhs] = instantiate(law, atoms);
    PathNormalization nl = normalize_path(lhs);
    PathNormalization nr = normalize_path(rhs);
    if (!path_eq(nl.normal_form, nr.normal_form))
        throw Error(ErrorKind::LawFailed, law.name + ": normal forms differ: " + to_ground(nl.normal_form) +
                                              " and " + to_ground(nr.normal_form));

    Path forward = nl.trace.as_path();
    Path witness = nr.trace.steps.empty() ? mk_tau(forward, mk_rho(rhs))
                                          : mk_tau(forward, mk_sigma(nr.trace.as_path()));
    Path inhabitant;
    if (nr.trace.steps.empty())
        inhabitant = forward;
    else if (nl.trace.steps.empty())
        inhabitant = mk_sigma(nr.trace.as_path());
    else
        inhabitant = mk_tau(forward, mk_sigma(nr.trace.as_path()));

    TypeExpr carrier = carrier_of(lhs);
    Derivation intro;
    intro.rule = Rule::IdI1;
    intro.conclusion = Judgment::typing(ProofTerm::witness(inhabitant, ProofTerm::embed(lhs), ProofTerm::embed(rhs)),
                                        TypeExpr::id(carrier, ProofTerm::embed(lhs), ProofTerm::embed(rhs)));
    intro.premises.push_back(derive_equation(inhabitant, carrier));
    Judgment j = check_open(intro).conclusion;

    return LawWitness{law,         lhs,     rhs,        nl.normal_form,   nl.trace, nr.trace,
                      witness,     inhabitant, std::move(intro), std::move(j)};
}

LawWitness verify_law(const GroupoidLaw& law) { return verify_law(law, default_atoms(law)); }

std::size_t level(const Endpoint& e) {
    if (e.is_term()) throw Error(ErrorKind::NotAPath, "a term has no level: " + to_string(e.term()));
    return level(e.path());
}

std::size_t level(const Path& p) { return p.level(); }

// ---------------------------------------------------------------------------
// Globular towers

GlobularInstance tower_from_path(const Path& top) {
    std::vector<std::pair<Endpoint, Endpoint>> rev;
    Endpoint s = top.source(), t = top.target();
    for (;;) {
        rev.emplace_back(s, t);
        if (s.is_term()) break;
        Path next = s.path();
        s = next.source();
        t = next.target();
    }
    return GlobularInstance{{rev.rbegin(), rev.rend()}, top};
}

bool globular_check(const GlobularInstance& inst) {
    if (inst.depth() < 2) throw Error(ErrorKind::InvalidArgument, "a globular tower needs depth at least 2");
    const std::size_t n = inst.layers.size();
    auto malformed = [](const std::string& msg) { throw Error(ErrorKind::MalformedTower, msg); };

    // Levels: layer 0 holds terms, layer k paths of level k-1, the top level n-1.
    for (std::size_t k = 0; k < n; ++k) {
        const auto& [a, b] = inst.layers[k];
        if (k == 0) {
            if (!a.is_term() || !b.is_term()) malformed("layer 0 must hold two terms");
            continue;
        }
        if (!a.is_path() || !b.is_path()) malformed("layer " + std::to_string(k) + " must hold two paths");
        if (level(a.path()) != k - 1 || level(b.path()) != k - 1)
            malformed("layer " + std::to_string(k) + " must hold paths of level " + std::to_string(k - 1));
    }
    if (level(inst.top) != n - 1) malformed("the top must have level " + std::to_string(n - 1));

    // The identities, read from each object's own endpoints.
    std::vector<Path> objects;
    for (std::size_t k = 2; k < n; ++k) {
        objects.push_back(inst.layers[k].first.path());
        objects.push_back(inst.layers[k].second.path());
    }
    if (n >= 2) objects.push_back(inst.top);
    for (const Path& x : objects) {
        const Path& s = x.source().path();
        const Path& t = x.target().path();
        if (!endpoint_eq(s.source(), t.source()) || !endpoint_eq(s.target(), t.target())) return false;
    }

    // Chaining: every object runs between the objects of the layer below.
    auto chained = [](const Path& p, const std::pair<Endpoint, Endpoint>& below) {
        return endpoint_eq(p.source(), below.first) && endpoint_eq(p.target(), below.second);
    };
    for (std::size_t k = 1; k < n; ++k)
        for (const Endpoint* e : {&inst.layers[k].first, &inst.layers[k].second})
            if (!chained(e->path(), inst.layers[k - 1]))
                malformed("a layer " + std::to_string(k) + " path " + to_ground(e->path()) +
                          " does not run between the layer " + std::to_string(k - 1) + " objects");
    if (!chained(inst.top, inst.layers[n - 1])) malformed("the top does not run between the last layer's objects");
    return true;
}

// ---------------------------------------------------------------------------
// Random generation

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// The plain path between two chain points: composed atoms, reversed by sigma.
Path direct(const AtomChain& chain, std::size_t i, std::size_t j) {
    if (i == j) return mk_rho(chain.points[i]);
    if (i > j) return mk_sigma(direct(chain, j, i));
    Path acc = chain.atoms[i];
    for (std::size_t k = i + 1; k < j; ++k) acc = mk_tau(acc, chain.atoms[k]);
    return acc;
}

}  // namespace

Path random_path(Rng& rng, const AtomChain& chain, std::size_t i, std::size_t j, std::size_t depth) {
    const std::size_t k = chain.points.size();
    if (depth == 0) return direct(chain, i, j);
    auto sub = [&](std::size_t a, std::size_t b) { return random_path(rng, chain, a, b, depth - 1); };
    const std::size_t m = pick(rng, k);
    switch (pick(rng, i == j ? 10 : 7)) {
    case 0: return direct(chain, i, j);
    case 1: return mk_sigma(sub(j, i));
    case 2: return mk_tau(sub(i, m), sub(m, j));
    case 3: return mk_sigma(mk_sigma(sub(i, j)));
    case 4: return mk_tau(sub(i, j), mk_rho(chain.points[j]));
    case 5: return mk_tau(mk_rho(chain.points[i]), sub(i, j));
    case 6: return mk_tau(mk_tau(sub(i, m), sub(m, m)), sub(m, j));
    case 7: {
        Path x = sub(i, m);
        return mk_tau(x, mk_sigma(x));
    }
    case 8: {
        Path x = sub(m, i);
        return mk_tau(mk_sigma(x), x);
    }
    default: return mk_sigma(mk_rho(chain.points[i]));
    }
}

Path random_path(Rng& rng, const AtomChain& chain, std::size_t depth) {
    const std::size_t k = chain.points.size();
    return random_path(rng, chain, pick(rng, k), pick(rng, k), depth);
}

Path decorate(Rng& rng, const Path& p, std::size_t rounds) {
    Path x = p;
    for (std::size_t r = 0; r < rounds; ++r) {
        switch (pick(rng, 6)) {
        case 0: x = mk_sigma(mk_sigma(x)); break;
        case 1: x = mk_tau(x, mk_rho(x.target())); break;
        case 2: x = mk_tau(mk_rho(x.source()), x); break;
        case 3: x = mk_tau(mk_tau(x, mk_sigma(x)), x); break;
        case 4: x = mk_tau(mk_sigma(mk_sigma(x)), mk_tau(mk_sigma(x), x)); break;
        default: x = mk_tau(mk_tau(mk_rho(x.source()), x), mk_sigma(mk_rho(x.target()))); break;
        }
    }
    return x;
}

GlobularInstance random_tower(Rng& rng, std::size_t depth) {
    if (depth < 2) throw Error(ErrorKind::InvalidArgument, "a globular tower needs depth at least 2");
    static const AtomChain chain = make_chain(3);
    Path x = random_path(rng, chain, 3);
    for (std::size_t lvl = 1; lvl + 2 <= depth; ++lvl) {
        Path y = decorate(rng, x, 1 + pick(rng, 2));
        x = normalize_path(y).trace.as_path();
    }
    return tower_from_path(x);
}

GlobularReport globular_property(std::uint64_t seed, std::size_t count, std::size_t max_depth) {
    if (max_depth < 2) throw Error(ErrorKind::InvalidArgument, "max depth must be at least 2");
    Rng rng(seed);
    GlobularReport r;
    r.depth_histogram.assign(max_depth + 1, 0);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t depth = 2 + pick(rng, max_depth - 1);
        GlobularInstance t = random_tower(rng, depth);
        ++r.towers;
        ++r.depth_histogram[t.depth()];
        r.objects_checked += t.depth() >= 3 ? 2 * (t.depth() - 3) + 1 : 0;
        try {
            if (!globular_check(t)) ++r.failures;
        } catch (const Error&) {
            ++r.failures;
        }
    }
    return r;
}

EndpointReport endpoint_property(std::uint64_t seed, std::size_t count) {
    Rng rng(seed);
    static const AtomChain chain = make_chain(3);
    EndpointReport r;
    while (r.applications < count) {
        Path p = random_path(rng, chain, 1 + pick(rng, 4));
        std::vector<RewriteStep> reducts = one_step_reducts(p);
        if (reducts.empty()) continue;
        const RewriteStep& s = reducts[pick(rng, reducts.size())];
        ++r.applications;
        if (!endpoint_eq(s.after.source(), p.source()) || !endpoint_eq(s.after.target(), p.target())) ++r.failures;
    }
    return r;
}

}  // namespace cpath
