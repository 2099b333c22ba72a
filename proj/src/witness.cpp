#include "relcalc/error.hpp"
#include "relcalc/fragments.hpp"
#include "relcalc/semantics.hpp"

#include <algorithm>
#include <map>

namespace relcalc {

namespace {

constexpr std::size_t kMaxSubgraphEdges = 12;

// Literal theories of fragment models, keyed by edge list.
class FragmentTheories {
public:
    explicit FragmentTheories(const Signature& sig) : sig_(sig) {}

    const std::vector<bool>& of(const Digraph& g) {
        auto key = g.edges();
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, theory_literals(fragment_model(g, sig_)).values()).first;
        return it->second;
    }

private:
    Signature sig_;
    std::map<std::vector<std::pair<std::size_t, std::size_t>>, std::vector<bool>> cache_;
};

std::vector<Atom> negative_singleton_anchors(const Extension& e) {
    std::vector<Atom> out;
    const AtomSpace& space = e.space();
    for (std::size_t i = 0; i < space.size(); ++i)
        if (!e[i] && space[i].x().size() == 1 && space[i].y().size() == 1) out.push_back(space[i]);
    return out;
}

} // namespace

CausalModel srec_witness(const Extension& e) {
    const Signature& sig = e.signature();
    const std::size_t n = sig.size();
    const AtomSpace& space = e.space();
    if (!has_acyclic_graph(e)) throw PreconditionError("strong-recursive witness requested for a cyclic extension");

    FragmentTheories theories(sig);
    // A fragment model may join the sum only if it keeps every positive
    // literal of e.
    auto keeps_positives = [&](const std::vector<bool>& t) {
        for (std::size_t i = 0; i < t.size(); ++i)
            if (e[i] && !t[i]) return false;
        return true;
    };

    const auto all_anchors = negative_singleton_anchors(e);
    std::vector<Digraph> chosen;
    std::vector<bool> covered(space.size(), false);
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (e[i] || covered[i]) continue;
        const Atom& target = space[i];

        std::vector<Atom> near;
        for (std::size_t x : target.x().members()) {
            for (std::size_t y : target.y().members()) {
                const VarSet z = target.z() | (target.x() - VarSet::single(x)) | (target.y() - VarSet::single(y));
                const Atom anchor(VarSet::single(x), VarSet::single(y), z);
                if (!e.value(anchor)) near.push_back(anchor);
            }
        }
        auto try_graphs = [&](const std::vector<Atom>& anchors, bool filtered) -> std::optional<Digraph> {
            for (const Atom& a : anchors) {
                const std::size_t x = a.x().first(), y = a.y().first();
                auto candidates = filtered ? find_fragments(e, x, y, a.z()) : fragment_shapes(e, x, y, a.z());
                for (const auto& f : candidates) {
                    const auto& t = theories.of(f.graph);
                    if (!t[i] && keeps_positives(t)) return f.graph;
                }
            }
            return std::nullopt;
        };
        // Min-max models over arbitrary subgraphs of the graph of e can mask
        // along several paths at once, which a single fragment cannot.
        auto try_subgraphs = [&]() -> std::optional<Digraph> {
            const auto edges = syntactic_graph(e).edges();
            if (edges.size() > kMaxSubgraphEdges) return std::nullopt;
            for (std::uint32_t mask = 1; mask < (1U << edges.size()); ++mask) {
                Digraph h(n);
                for (std::size_t k = 0; k < edges.size(); ++k)
                    if (mask >> k & 1U) h.add_edge(edges[k].first, edges[k].second);
                const auto& t = theories.of(h);
                if (!t[i] && keeps_positives(t)) return h;
            }
            return std::nullopt;
        };
        auto g = try_graphs(near, true);
        if (!g) g = try_graphs(all_anchors, true);
        if (!g) g = try_graphs(all_anchors, false);
        if (!g) g = try_subgraphs();
        if (!g) throw InvalidExtension("no fragment model witnesses " + render_literal({target, false}, sig));

        const auto& t = theories.of(*g);
        for (std::size_t k = 0; k < t.size(); ++k)
            if (!t[k]) covered[k] = true;
        chosen.push_back(*g);
    }
    if (chosen.empty()) chosen.emplace_back(n);

    std::vector<CausalModel> models;
    for (const auto& g : chosen) models.push_back(fragment_model(g, sig));
    return direct_sum(models);
}

Foliation foliation(const Signature& sig, std::span<const Formula> gamma, const Literal& phi) {
    check_formulas(sig, gamma);
    if (phi.positive) throw PreconditionError("a foliation is seeded by a negative literal");
    const bool listed = std::any_of(gamma.begin(), gamma.end(), [&](const Formula& f) { return f.as_literal() == phi; });
    if (!listed) throw PreconditionError("the seed literal " + render_literal(phi, sig) + " is not a negative literal of the theory");

    std::vector<Formula> current{Formula::literal(phi)};
    std::vector<Literal> own;
    for (const auto& f : gamma) {
        auto lit = f.as_literal();
        if (!lit) continue;
        own.push_back(*lit);
        if (lit->positive) current.push_back(f);
    }
    auto witness = consistent(sig, current, AxiomSystem::Srec);
    if (!witness) throw Inconsistent("the seed of the foliation has no strong-recursive extension");

    // Fixed literal enumeration: the theory's own literals in atom order,
    // then every atom in atom order, positive before negative.
    const AtomSpace& space = AtomSpace::of(sig.size());
    std::sort(own.begin(), own.end(), [&](const Literal& a, const Literal& b) {
        return space.index(a.atom) < space.index(b.atom) || (a.atom == b.atom && a.positive && !b.positive);
    });
    std::vector<Literal> order = own;
    for (const Atom& a : space.atoms()) order.push_back(Literal{a, true});

    for (const Literal& psi : order) {
        if (witness->satisfies(psi)) {
            current.push_back(Formula::literal(psi));
            continue;
        }
        current.push_back(Formula::literal(psi));
        if (auto next = consistent(sig, current, AxiomSystem::Srec)) {
            witness = std::move(next);
        } else {
            current.back() = Formula::literal(psi.negated());
        }
    }
    return Foliation{phi, *witness};
}

CausalModel rec_witness(const Extension& e) {
    const Signature& sig = e.signature();
    const auto gamma = e.formulas();
    std::vector<Formula> positives;
    for (const Literal& l : e.literals())
        if (l.positive) positives.push_back(Formula::literal(l));
    std::vector<Extension> leaves;
    std::vector<CausalModel> models;
    for (const Literal& phi : e.negatives()) {
        std::optional<Foliation> leaf;
        try {
            leaf = foliation(sig, gamma, phi);
        } catch (const Inconsistent&) {
            throw InvalidExtension("no strong-recursive foliation seeded by " + render_literal(phi, sig));
        }
        if (std::find(leaves.begin(), leaves.end(), leaf->psi) != leaves.end()) continue;
        try {
            models.push_back(srec_witness(leaf->psi));
            leaves.push_back(std::move(leaf->psi));
            continue;
        } catch (const InvalidExtension&) {
        }
        // Any strong-recursive extension of the seed and the positives of e
        // serves as a leaf; try later ones when the foliation is not realized.
        auto seed = positives;
        seed.push_back(Formula::literal(phi));
        ExtensionEnumerator candidates(sig, seed, AxiomSystem::Srec);
        bool found = false;
        for (std::size_t tried = 0; tried < kDefaultWitnessAttempts && !found; ++tried) {
            auto psi = candidates.next();
            if (!psi) break;
            try {
                models.push_back(srec_witness(*psi));
                leaves.push_back(std::move(*psi));
                found = true;
            } catch (const InvalidExtension&) {
            }
        }
        if (!found) throw InvalidExtension("no leaf seeded by " + render_literal(phi, sig) + " was realized by fragment models");
    }
    if (models.empty()) return fragment_model(Digraph(sig.size()), sig);
    return direct_sum(models);
}

CausalModel witness_model(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys, std::size_t attempts) {
    if (sys == AxiomSystem::Uniq) throw PreconditionError("witness models are built for srec or rec only");
    ExtensionEnumerator extensions(sig, gamma, sys);
    std::string last;
    for (std::size_t tried = 0; tried < attempts; ++tried) {
        auto e = extensions.next();
        if (!e) {
            if (tried == 0) throw Inconsistent("the theory is " + to_string(sys) + "-inconsistent");
            break;
        }
        try {
            return sys == AxiomSystem::Srec ? srec_witness(*e) : rec_witness(*e);
        } catch (const InvalidExtension& ex) {
            last = ex.what();
        }
    }
    throw InvalidExtension("no extension of the theory was realized by fragment models (last failure: " + last + ")");
}

} // namespace relcalc
