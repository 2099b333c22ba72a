#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace oracle {

using relcalc::AtomSpace;

std::vector<Atom> all_atoms(std::size_t n) {
    std::vector<Atom> out;
    const std::uint32_t full = (1U << n) - 1;
    for (std::uint32_t x = 1; x <= full; ++x)
        for (std::uint32_t y = 1; y <= full; ++y)
            for (std::uint32_t z = 0; z <= full; ++z)
                if ((x & y) == 0 && (x & z) == 0 && (y & z) == 0) out.emplace_back(VarSet(x), VarSet(y), VarSet(z));
    return out;
}

// ---------------------------------------------------------------------------

BruteSemantics::BruteSemantics(const CausalModel& m) : m_(m), n_(m.variables()) {
    for (std::size_t v = 0; v < n_; ++v) {
        dom_.push_back(m.signature().domain_size(v));
        keys_ *= dom_[v] + 1;
    }
    build();
}

std::size_t BruteSemantics::key(const std::vector<int>& fixed) const {
    std::size_t k = 0;
    for (std::size_t v = n_; v-- > 0;) k = k * (dom_[v] + 1) + static_cast<std::size_t>(fixed[v] + 1);
    return k;
}

void BruteSemantics::build() {
    const std::size_t contexts = m_.contexts().size();
    cache_.assign(contexts, std::vector<std::vector<Value>>(keys_));
    counts_.assign(contexts, std::vector<std::size_t>(keys_, 0));
    std::vector<int> fixed(n_, -1);
    // Walk every intervention as a mixed-radix counter over {free, 0..d-1}.
    while (true) {
        const std::size_t k = key(fixed);
        for (std::size_t c = 0; c < contexts; ++c) {
            std::vector<Value> full(n_, 0);
            for (std::size_t v = 0; v < n_; ++v)
                if (fixed[v] >= 0) full[v] = static_cast<Value>(fixed[v]);
            while (true) {
                bool fixpoint = true;
                for (std::size_t v = 0; v < n_ && fixpoint; ++v)
                    if (fixed[v] < 0 && m_.evaluate(v, c, full) != full[v]) fixpoint = false;
                if (fixpoint) {
                    if (++counts_[c][k] == 1) cache_[c][k] = full;
                    else cache_[c][k].clear();
                }
                std::size_t v = 0;
                for (; v < n_; ++v) {
                    if (fixed[v] >= 0) continue;
                    if (++full[v] < dom_[v]) break;
                    full[v] = 0;
                }
                if (v == n_) break;
            }
        }
        std::size_t v = 0;
        for (; v < n_; ++v) {
            if (++fixed[v] < static_cast<int>(dom_[v])) break;
            fixed[v] = -1;
        }
        if (v == n_) break;
    }
}

std::optional<std::vector<Value>> BruteSemantics::solution(std::size_t c, const std::vector<int>& fixed) const {
    const std::size_t k = key(fixed);
    if (counts_[c][k] != 1) return std::nullopt;
    return cache_[c][k];
}

std::size_t BruteSemantics::solution_count(std::size_t c, const std::vector<int>& fixed) const {
    return counts_[c][key(fixed)];
}

bool BruteSemantics::uniq() const {
    for (const auto& per_context : counts_)
        for (std::size_t k : per_context)
            if (k != 1) return false;
    return true;
}

bool BruteSemantics::atom(const Atom& a) const {
    const VarSet rest = VarSet::all(n_) - a.mentioned();
    const auto xs = a.x().members();
    const auto ys = a.y().members();
    bool holds = true;
    relcalc::for_each_subset(rest, [&](VarSet w) {
        if (!holds) return;
        const auto cond = (a.z() | w).members();
        // All valuations of Z u W, then all pairs of X valuations.
        std::vector<int> fixed(n_, -1);
        std::function<void(std::size_t)> over_cond;
        std::vector<std::vector<int>> x_values;
        std::vector<int> scratch(n_, -1);
        std::function<void(std::size_t)> collect_x = [&](std::size_t i) {
            if (i == xs.size()) {
                x_values.push_back(scratch);
                return;
            }
            for (std::size_t val = 0; val < dom_[xs[i]]; ++val) {
                scratch[xs[i]] = static_cast<int>(val);
                collect_x(i + 1);
            }
        };
        collect_x(0);
        over_cond = [&](std::size_t i) {
            if (!holds) return;
            if (i < cond.size()) {
                for (std::size_t val = 0; val < dom_[cond[i]]; ++val) {
                    fixed[cond[i]] = static_cast<int>(val);
                    over_cond(i + 1);
                }
                fixed[cond[i]] = -1;
                return;
            }
            for (std::size_t c = 0; c < m_.contexts().size() && holds; ++c) {
                std::optional<std::vector<Value>> reference;
                for (const auto& xv : x_values) {
                    std::vector<int> f = fixed;
                    for (std::size_t x : xs) f[x] = xv[x];
                    auto s = solution(c, f);
                    if (!s) throw std::logic_error("brute semantics needs a model with unique solutions");
                    if (!reference) {
                        reference = s;
                        continue;
                    }
                    for (std::size_t y : ys)
                        if ((*s)[y] != (*reference)[y]) holds = false;
                }
            }
        };
        over_cond(0);
    });
    return holds;
}

std::vector<bool> BruteSemantics::theory() const {
    const AtomSpace& space = AtomSpace::of(n_);
    std::vector<bool> out;
    for (const Atom& a : space.atoms()) out.push_back(atom(a));
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> BruteSemantics::graph_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < n_; ++x) {
        for (std::size_t y = 0; y < n_; ++y) {
            if (x == y) continue;
            bool edge = false;
            std::vector<Value> full(n_, 0);
            for (std::size_t c = 0; c < m_.contexts().size() && !edge; ++c) {
                std::fill(full.begin(), full.end(), 0);
                while (!edge) {
                    std::vector<Value> other = full;
                    for (std::size_t val = 0; val < dom_[x] && !edge; ++val) {
                        other[x] = static_cast<Value>(val);
                        if (m_.evaluate(y, c, other) != m_.evaluate(y, c, full)) edge = true;
                    }
                    std::size_t v = 0;
                    for (; v < n_; ++v) {
                        if (++full[v] < dom_[v]) break;
                        full[v] = 0;
                    }
                    if (v == n_) break;
                }
            }
            if (edge) out.emplace_back(x, y);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

enum Letter { X, Y, Z, W, U, V, kLetters };

std::vector<Letter> letters_of(int axiom) {
    switch (axiom) {
    case 2: case 3: case 4: case 5: case 6: case 7: return {X, Y, Z, W};
    case 8: return {X, Y, Z, W, U, V};
    case 9: return {X, Y, Z, W, V};
    }
    throw std::invalid_argument("axiom id");
}

struct Triple {
    VarSet x, y, z;
};

std::optional<Instance> build(int axiom, const std::vector<VarSet>& r) {
    const VarSet x = r[X], y = r[Y], z = r[Z], w = r[W], u = r[U], v = r[V];
    // Weak right decomposition and context substitution take a single W.
    if ((axiom == 4 || axiom == 9) && w.size() != 1) return std::nullopt;
    std::vector<Triple> ants;
    Triple cons;
    switch (axiom) {
    case 2: ants = {{x, y, z}}; cons = {x, y, z | w}; break;
    case 3: ants = {{x | w, y, z}}; cons = {x, y, z}; break;
    case 4: ants = {{x, y | w, z}, {x, y, z | w}}; cons = {x, y, z}; break;
    case 5: ants = {{x, y | w, z}, {w, y, z | x}}; cons = {x, y, z | w}; break;
    case 6: ants = {{x, y, z | w}, {w, y, z | x}}; cons = {x | w, y, z}; break;
    case 7: ants = {{x, y, z | w}, {x, w, z | y}}; cons = {x, y | w, z}; break;
    case 8: ants = {{x, y, z | v}, {x, y, z | u}, {u, v, z | x | w}, {v, u, z | x | w}}; cons = {x, y, z | w}; break;
    case 9: ants = {{x, y | w, z}, {x, v, z | y | w}, {w, y, z | x}}; cons = {x, y | v, z}; break;
    default: throw std::invalid_argument("axiom id");
    }
    Instance out{{}, Atom(VarSet(1), VarSet(2), VarSet())};
    for (const auto& t : ants) {
        if (!relcalc::Atom::valid(t.x, t.y, t.z)) return std::nullopt;
        out.antecedents.emplace_back(t.x, t.y, t.z);
    }
    if (!relcalc::Atom::valid(cons.x, cons.y, cons.z)) return std::nullopt;
    out.consequent = Atom(cons.x, cons.y, cons.z);
    if (std::find(out.antecedents.begin(), out.antecedents.end(), out.consequent) != out.antecedents.end())
        return std::nullopt;
    std::sort(out.antecedents.begin(), out.antecedents.end());
    out.antecedents.erase(std::unique(out.antecedents.begin(), out.antecedents.end()), out.antecedents.end());
    return out;
}

} // namespace

std::vector<Instance> axiom_instances(int axiom, std::size_t n) {
    const auto letters = letters_of(axiom);
    std::vector<Instance> out;
    std::vector<VarSet> roles(kLetters);
    // Nested loop: each letter takes any subset of what earlier letters left.
    std::function<void(std::size_t, VarSet)> assign = [&](std::size_t i, VarSet left) {
        if (i == letters.size()) {
            if (auto inst = build(axiom, roles)) out.push_back(*inst);
            return;
        }
        relcalc::for_each_subset(left, [&](VarSet s) {
            roles[letters[i]] = s;
            assign(i + 1, left - s);
        });
        roles[letters[i]] = VarSet();
    };
    assign(0, VarSet::all(n));
    std::sort(out.begin(), out.end(), [](const Instance& a, const Instance& b) {
        return std::tie(a.antecedents, a.consequent) < std::tie(b.antecedents, b.consequent);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Instance& a, const Instance& b) {
                              return a.antecedents == b.antecedents && a.consequent == b.consequent;
                          }),
              out.end());
    return out;
}

bool acyclic(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<bool> removed(n, false);
    for (std::size_t round = 0; round < n; ++round) {
        bool progress = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (removed[v]) continue;
            bool source = true;
            for (auto [a, b] : edges)
                if (b == v && !removed[a]) source = false;
            if (source) {
                removed[v] = true;
                progress = true;
            }
        }
        if (!progress) break;
    }
    return std::all_of(removed.begin(), removed.end(), [](bool r) { return r; });
}

std::vector<std::vector<bool>> brute_extensions(const std::vector<relcalc::Literal>& gamma, relcalc::AxiomSystem sys) {
    if (sys == relcalc::AxiomSystem::Rec) throw std::invalid_argument("no brute-force reference for rec");
    constexpr std::size_t n = 3;
    const AtomSpace& space = AtomSpace::of(n);
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> clauses;
    for (int ax = 2; ax <= 9; ++ax) {
        for (const auto& inst : axiom_instances(ax, n)) {
            std::vector<std::size_t> ants;
            for (const auto& a : inst.antecedents) ants.push_back(space.index(a));
            clauses.emplace_back(ants, space.index(inst.consequent));
        }
    }
    std::vector<std::vector<bool>> out;
    const std::size_t atoms = space.size();
    for (std::uint32_t bits = 0; bits < (1U << atoms); ++bits) {
        auto val = [&](std::size_t i) { return ((bits >> i) & 1U) != 0; };
        bool ok = true;
        for (const auto& l : gamma)
            if (val(space.index(l.atom)) != l.positive) ok = false;
        for (std::size_t c = 0; c < clauses.size() && ok; ++c) {
            bool all = true;
            for (std::size_t a : clauses[c].first) all = all && val(a);
            if (all && !val(clauses[c].second)) ok = false;
        }
        if (!ok) continue;
        if (sys == relcalc::AxiomSystem::Srec) {
            std::vector<std::pair<std::size_t, std::size_t>> edges;
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (x != y && !val(space.edge_atom(x, y))) edges.emplace_back(x, y);
            if (!acyclic(n, edges)) continue;
        }
        std::vector<bool> v(atoms);
        for (std::size_t i = 0; i < atoms; ++i) v[i] = val(i);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace oracle
