#include "relcalc/calculus.hpp"

#include "relcalc/error.hpp"
#include "relcalc/sat.hpp"

#include <algorithm>
#include <functional>

namespace relcalc {

std::string to_string(AxiomSystem s) {
    switch (s) {
    case AxiomSystem::Uniq: return "uniq";
    case AxiomSystem::Srec: return "srec";
    case AxiomSystem::Rec: return "rec";
    }
    return "?";
}

AxiomSystem parse_system(std::string_view text) {
    if (text == "uniq") return AxiomSystem::Uniq;
    if (text == "srec") return AxiomSystem::Srec;
    if (text == "rec") return AxiomSystem::Rec;
    throw SchemaError("unknown axiom system '" + std::string(text) + "' (expected uniq, srec or rec)");
}

void check_formulas(const Signature& sig, std::span<const Formula> gamma) {
    for (const auto& f : gamma)
        if (!f.variables().subset_of(sig.all())) throw SignatureMismatch("formula mentions variables outside the signature");
}

// ---------------------------------------------------------------------------
// Graph-theoretic reading of an extension

VarSet parent_set(const Extension& e, std::size_t y) {
    const std::size_t n = e.signature().size();
    const VarSet rest = VarSet::all(n) - VarSet::single(y);
    std::vector<VarSet> candidates;
    for_each_subset(rest, [&](VarSet p) {
        if (p != rest) candidates.push_back(p);
    });
    std::stable_sort(candidates.begin(), candidates.end(), [](VarSet a, VarSet b) { return a.size() < b.size(); });
    for (VarSet p : candidates) {
        if (e.value(Atom(rest - p, VarSet::single(y), p))) return p;
    }
    return rest;
}

Digraph syntactic_graph(const Extension& e) {
    const std::size_t n = e.signature().size();
    Digraph g(n);
    for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x : parent_set(e, y).members()) g.add_edge(x, y);
    return g;
}

std::vector<std::size_t> path_witness(const Extension& e, std::size_t x, std::size_t y, VarSet z) {
    const Atom a(VarSet::single(x), VarSet::single(y), z);
    if (e.value(a)) throw PreconditionError("path witness requested for a true atom");
    auto path = syntactic_graph(e).find_path(x, y, z);
    if (!path) throw InvalidExtension("no path avoiding the conditioning set; the assignment is not an extension");
    return *path;
}

namespace {

// Edges present under a (partial) assignment: the edge atom is false.
Digraph edge_graph(std::size_t n, const std::function<bool(std::size_t)>& atom_false) {
    const AtomSpace& space = AtomSpace::of(n);
    Digraph g(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (x != y && atom_false(space.edge_atom(x, y))) g.add_edge(x, y);
    return g;
}

// Some directed cycle as a vertex sequence v0 -> v1 -> ... -> v0, if any.
std::optional<std::vector<std::size_t>> find_cycle(const Digraph& g) {
    const std::size_t n = g.vertices();
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u : g.predecessors(v).members()) {
            if (u == v) continue;
            if (auto back = g.find_path(v, u)) return back;
        }
    }
    return std::nullopt;
}

} // namespace

bool has_acyclic_graph(const Extension& e) { return syntactic_graph(e).acyclic(); }

bool is_extension(const Extension& e, AxiomSystem sys) {
    if (!satisfies_axioms(e)) return false;
    switch (sys) {
    case AxiomSystem::Uniq: return true;
    case AxiomSystem::Srec: return has_acyclic_graph(e);
    case AxiomSystem::Rec: return has_all_fragments(e);
    }
    return false;
}

// ---------------------------------------------------------------------------
// SAT encoding

namespace {

class StructuralTheory : public sat::Theory {
public:
    StructuralTheory(const Signature& sig, AxiomSystem sys) : sig_(sig), sys_(sys), space_(AtomSpace::of(sig.size())) {}

    std::vector<sat::Clause> propagate(const sat::Solver& s) override {
        if (sys_ != AxiomSystem::Srec) return {};
        const std::size_t n = sig_.size();
        Digraph present = edge_graph(n, [&](std::size_t a) { return s.is_false(sat::Lit::pos(a)); });
        if (auto cycle = find_cycle(present)) {
            // cycle = v0 .. vk with an edge vk -> v0 closing it.
            sat::Clause lemma;
            for (std::size_t i = 0; i < cycle->size(); ++i) {
                const std::size_t from = (*cycle)[i];
                const std::size_t to = (*cycle)[(i + 1) % cycle->size()];
                lemma.push_back(sat::Lit::pos(space_.edge_atom(from, to)));
            }
            return {lemma};
        }
        // An open edge x -> y whose reverse path y ~> x is present would close
        // a cycle, so its atom must be true.
        std::vector<sat::Clause> lemmas;
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                if (x == y) continue;
                const std::size_t a = space_.edge_atom(x, y);
                if (s.value(a) != sat::Value::Unassigned) continue;
                auto back = present.find_path(y, x);
                if (!back) continue;
                sat::Clause lemma{sat::Lit::pos(a)};
                for (std::size_t i = 0; i + 1 < back->size(); ++i)
                    lemma.push_back(sat::Lit::pos(space_.edge_atom((*back)[i], (*back)[i + 1])));
                lemmas.push_back(std::move(lemma));
            }
        }
        return lemmas;
    }

    std::vector<sat::Clause> final_check(const sat::Solver& s) override {
        if (sys_ != AxiomSystem::Rec) return {};
        std::vector<bool> values(space_.size());
        for (std::size_t i = 0; i < space_.size(); ++i) values[i] = s.is_true(sat::Lit::pos(i));
        if (has_all_fragments(Extension(sig_, std::move(values)))) return {};
        sat::Clause block;
        for (sat::Lit d : s.decisions()) block.push_back(~d);
        return {block};
    }

private:
    Signature sig_;
    AxiomSystem sys_;
    const AtomSpace& space_;
};

sat::Lit encode(sat::Solver& solver, const AtomSpace& space, const Formula& f) {
    using sat::Lit;
    switch (f.kind()) {
    case Formula::Kind::Atom: return Lit::pos(space.index(f.atom_value()));
    case Formula::Kind::Not: return ~encode(solver, space, f.lhs());
    default: break;
    }
    Lit a = encode(solver, space, f.lhs());
    Lit b = encode(solver, space, f.rhs());
    if (f.kind() == Formula::Kind::Implies) a = ~a;
    const std::size_t v = solver.new_var(false);
    const Lit out = Lit::pos(v);
    if (f.kind() == Formula::Kind::And) {
        solver.add_clause({~out, a});
        solver.add_clause({~out, b});
        solver.add_clause({out, ~a, ~b});
    } else {
        solver.add_clause({~out, a, b});
        solver.add_clause({out, ~a});
        solver.add_clause({out, ~b});
    }
    return out;
}

void assert_formula(sat::Solver& solver, const AtomSpace& space, const Formula& f) {
    if (f.kind() == Formula::Kind::And) {
        assert_formula(solver, space, f.lhs());
        assert_formula(solver, space, f.rhs());
        return;
    }
    if (auto lit = f.as_literal()) {
        solver.add_clause({sat::Lit::make(space.index(lit->atom), lit->positive)});
        return;
    }
    solver.add_clause({encode(solver, space, f)});
}

} // namespace

struct ExtensionEnumerator::State {
    Signature sig;
    const AtomSpace& space;
    StructuralTheory theory;
    sat::Solver solver;

    State(const Signature& s, AxiomSystem sys)
        : sig(s), space(AtomSpace::of(s.size())), theory(s, sys), solver(space.size()) {}
};

ExtensionEnumerator::ExtensionEnumerator(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys)
    : state_(std::make_unique<State>(sig, sys)) {
    check_formulas(sig, gamma);
    auto& solver = state_->solver;
    for (const auto& inst : instantiate_axioms(sig.size())) {
        sat::Clause clause;
        for (const Atom& a : inst.antecedents) clause.push_back(sat::Lit::neg(state_->space.index(a)));
        clause.push_back(sat::Lit::pos(state_->space.index(inst.consequent)));
        solver.add_clause(std::move(clause));
    }
    for (const auto& f : gamma) assert_formula(solver, state_->space, f);
    solver.set_theory(&state_->theory);
}

ExtensionEnumerator::~ExtensionEnumerator() = default;

std::optional<Extension> ExtensionEnumerator::next() {
    auto& solver = state_->solver;
    if (!solver.solve()) return std::nullopt;
    std::vector<bool> values(state_->space.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = solver.is_true(sat::Lit::pos(i));
    solver.block_current();
    return Extension(state_->sig, std::move(values));
}

std::optional<Extension> consistent(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys) {
    return ExtensionEnumerator(sig, gamma, sys).next();
}

std::vector<Extension> extensions(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys,
                                  std::size_t limit) {
    ExtensionEnumerator en(sig, gamma, sys);
    std::vector<Extension> out;
    while (auto e = en.next()) {
        if (out.size() == limit)
            throw TooManyExtensions("more than " + std::to_string(limit) + " extensions; raise the limit to continue");
        out.push_back(std::move(*e));
    }
    return out;
}

bool derives(const Signature& sig, std::span<const Formula> gamma, const Formula& phi, AxiomSystem sys) {
    std::vector<Formula> premises(gamma.begin(), gamma.end());
    premises.push_back(Formula::negation(phi));
    return !consistent(sig, premises, sys).has_value();
}

} // namespace relcalc
