#include "relcalc/calculus.hpp"

#include "relcalc/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>

namespace relcalc {

namespace {

// Schema letters. Each atom template names its components as unions of
// letters.
enum Letter : std::uint8_t { X = 1, Y = 2, Z = 4, W = 8, U = 16, V = 32 };

struct Template {
    std::uint8_t x, y, z;
};

struct Schema {
    int axiom;
    std::size_t letters;  // letters in use are the lowest `letters` bits
    std::vector<Template> antecedents;
    Template consequent;
    bool single_w = false;  // W must be exactly one variable
};

const std::vector<Schema>& schemata() {
    static const std::vector<Schema> all = {
        {2, 4, {{X, Y, Z}}, {X, Y, Z | W}},
        {3, 4, {{X | W, Y, Z}}, {X, Y, Z}},
        // A4 and A9 only for a single W: with two or more, intervening on part
        // of W can open a path to Y that neither premise constrains.
        {4, 4, {{X, Y | W, Z}, {X, Y, Z | W}}, {X, Y, Z}, true},
        {5, 4, {{X, Y | W, Z}, {W, Y, Z | X}}, {X, Y, Z | W}},
        {6, 4, {{X, Y, Z | W}, {W, Y, Z | X}}, {X | W, Y, Z}},
        {7, 4, {{X, Y, Z | W}, {X, W, Z | Y}}, {X, Y | W, Z}},
        {8, 6, {{X, Y, Z | V}, {X, Y, Z | U}, {U, V, Z | X | W}, {V, U, Z | X | W}}, {X, Y, Z | W}},
        {9, 6, {{X, Y | W, Z}, {X, V, Z | Y | W}, {W, Y, Z | X}}, {X, Y | V, Z}, true},
    };
    return all;
}

std::vector<AxiomInstance> build_instances(std::size_t n) {
    std::vector<AxiomInstance> out;
    std::set<std::pair<std::vector<Atom>, Atom>> seen;
    for (const Schema& schema : schemata()) {
        // Each variable takes one letter (0..letters-1) or none (= letters).
        std::vector<std::size_t> role(n, 0);
        const std::size_t choices = schema.letters + 1;
        while (true) {
            std::array<VarSet, 6> sets{};
            for (std::size_t v = 0; v < n; ++v)
                if (role[v] < schema.letters) sets[role[v]] |= VarSet::single(v);
            auto expand = [&](std::uint8_t letters) {
                VarSet s;
                for (std::size_t l = 0; l < 6; ++l)
                    if (letters & (1U << l)) s |= sets[l];
                return s;
            };
            auto make = [&](const Template& t) -> std::optional<Atom> {
                VarSet x = expand(t.x), y = expand(t.y), z = expand(t.z);
                if (!Atom::valid(x, y, z)) return std::nullopt;
                return Atom(x, y, z);
            };
            bool ok = !schema.single_w || sets[3].size() == 1;
            std::vector<Atom> ante;
            for (const auto& t : schema.antecedents) {
                if (!ok) break;
                auto a = make(t);
                if (!a) {
                    ok = false;
                    break;
                }
                ante.push_back(*a);
            }
            std::optional<Atom> cons = ok ? make(schema.consequent) : std::nullopt;
            if (cons) {
                std::sort(ante.begin(), ante.end());
                ante.erase(std::unique(ante.begin(), ante.end()), ante.end());
                if (std::find(ante.begin(), ante.end(), *cons) == ante.end() && seen.emplace(ante, *cons).second)
                    out.push_back(AxiomInstance{schema.axiom, ante, *cons});
            }
            std::size_t i = 0;
            while (i < n && ++role[i] == choices) role[i++] = 0;
            if (i == n) break;
        }
    }
    return out;
}

} // namespace

const std::vector<AxiomInstance>& instantiate_axioms(std::size_t n) {
    if (n > kHardMaxVariables) throw PreconditionError("too many variables for axiom instantiation");
    static std::mutex mutex;
    static std::map<std::size_t, std::vector<AxiomInstance>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_instances(n)).first;
    return it->second;
}

bool satisfies_axioms(const Extension& e) {
    for (const auto& inst : instantiate_axioms(e.signature().size())) {
        bool all = std::all_of(inst.antecedents.begin(), inst.antecedents.end(), [&](const Atom& a) { return e.value(a); });
        if (all && !e.value(inst.consequent)) return false;
    }
    return true;
}

} // namespace relcalc
