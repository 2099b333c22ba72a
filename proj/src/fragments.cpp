#include "relcalc/fragments.hpp"

#include "relcalc/error.hpp"

#include <algorithm>
#include <sstream>

namespace relcalc {

namespace {

VarSet vertex_set(const std::vector<std::size_t>& path) {
    VarSet s;
    for (auto v : path) s |= VarSet::single(v);
    return s;
}

VarSet interior(const std::vector<std::size_t>& path) {
    VarSet s;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) s |= VarSet::single(path[i]);
    return s;
}

Digraph without_vertex(const Digraph& g, std::size_t v) {
    Digraph out(g);
    for (std::size_t u = 0; u < g.vertices(); ++u) {
        out.remove_edge(u, v);
        out.remove_edge(v, u);
    }
    return out;
}

} // namespace

bool is_fragment(const Digraph& g, const Extension& e, std::size_t x, std::size_t y, VarSet z) {
    const std::size_t n = e.signature().size();
    if (g.vertices() != n) return false;
    if (!g.single_connected() || !g.acyclic()) return false;
    const Atom anchor(VarSet::single(x), VarSet::single(y), z);

    auto distinguished = g.find_path(x, y);
    if (!e.value(anchor) && (!distinguished || !interior(*distinguished).disjoint(z))) return false;
    const VarSet on_path = distinguished ? vertex_set(*distinguished) : VarSet{};

    for (std::size_t v = 0; v < n; ++v) {
        const bool incident = !(g.successors(v) | g.predecessors(v)).empty();
        if (incident && !on_path.contains(v) && !g.is_root(v)) return false;
    }

    // For every pair with a path P = U ~> V and every T leaving P open: each
    // true (U -/-> V S | T) needs S to hold an ancestor of V that reaches V
    // without passing through U and is not on P. S = {} covers positive
    // literals with open paths outright.
    const VarSet all = VarSet::all(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (u == v) continue;
            auto p = g.find_path(u, v);
            if (!p) continue;
            const VarSet rest = all - VarSet::single(u) - VarSet::single(v);
            const VarSet blockers = without_vertex(g, u).ancestors(v) - vertex_set(*p);
            bool ok = true;
            for_each_subset(rest - interior(*p), [&](VarSet t) {
                if (!ok) return;
                for_each_subset(rest - t - blockers, [&](VarSet s) {
                    if (ok && e.value(Atom(VarSet::single(u), VarSet::single(v) | s, t))) ok = false;
                });
            });
            if (!ok) return false;
        }
    }
    return true;
}

std::vector<Fragment> fragment_shapes(const Extension& e, std::size_t x, std::size_t y, VarSet z) {
    const std::size_t n = e.signature().size();
    const Digraph g = syntactic_graph(e);
    std::vector<Fragment> out;
    for (const auto& path : g.all_paths(x, y, z)) {
        const VarSet on_path = vertex_set(path);
        std::vector<std::size_t> off;
        std::vector<std::vector<std::size_t>> options;  // targets on the path
        for (std::size_t r = 0; r < n; ++r) {
            if (on_path.contains(r)) continue;
            std::vector<std::size_t> targets;
            for (std::size_t p : path)
                if (g.has_edge(r, p)) targets.push_back(p);
            if (targets.empty()) continue;
            off.push_back(r);
            options.push_back(std::move(targets));
        }
        std::vector<std::size_t> choice(off.size(), 0);  // 0 = not attached
        while (true) {
            Fragment f{Digraph(n), x, y, z, path};
            for (std::size_t i = 0; i + 1 < path.size(); ++i) f.graph.add_edge(path[i], path[i + 1]);
            for (std::size_t k = 0; k < off.size(); ++k)
                if (choice[k] > 0) f.graph.add_edge(off[k], options[k][choice[k] - 1]);
            out.push_back(std::move(f));
            std::size_t k = 0;
            while (k < off.size() && ++choice[k] > options[k].size()) choice[k++] = 0;
            if (k == off.size()) break;
        }
    }
    return out;
}

std::vector<Fragment> find_fragments(const Extension& e, std::size_t x, std::size_t y, VarSet z) {
    const Atom anchor(VarSet::single(x), VarSet::single(y), z);
    const std::size_t n = e.signature().size();
    if (e.value(anchor)) return {Fragment{Digraph(n), x, y, z, {}}};
    std::vector<Fragment> out;
    for (auto& f : fragment_shapes(e, x, y, z))
        if (is_fragment(f.graph, e, x, y, z)) out.push_back(std::move(f));
    return out;
}

std::optional<Fragment> find_fragment(const Extension& e, std::size_t x, std::size_t y, VarSet z) {
    const Atom anchor(VarSet::single(x), VarSet::single(y), z);
    const std::size_t n = e.signature().size();
    if (e.value(anchor)) return Fragment{Digraph(n), x, y, z, {}};
    for (auto& f : fragment_shapes(e, x, y, z))
        if (is_fragment(f.graph, e, x, y, z)) return std::move(f);
    return std::nullopt;
}

bool has_all_fragments(const Extension& e) {
    const AtomSpace& space = e.space();
    for (std::size_t i = 0; i < space.size(); ++i) {
        const Atom& a = space[i];
        if (e[i] || a.x().size() != 1 || a.y().size() != 1) continue;
        if (!find_fragment(e, a.x().first(), a.y().first(), a.z())) return false;
    }
    return true;
}

CausalModel fragment_model(const Digraph& g, const Signature& sig) {
    const std::size_t n = sig.size();
    std::vector<std::string> values;
    for (std::size_t v = 0; v <= n; ++v) values.push_back(std::to_string(v));
    Signature s(sig.names(), std::vector<std::vector<std::string>>(n, values), kHardMaxVariables);
    std::vector<VarSet> parents(n);
    for (std::size_t v = 0; v < n; ++v) parents[v] = g.predecessors(v);
    return CausalModel::from_function(std::move(s), {"u"}, [&](std::size_t var, std::size_t, std::span<const Value> full) {
        Value out = 0;
        for (std::size_t p : parents[var].members()) {
            if (full[p] == 0) return Value{0};
            out = std::max(out, full[p]);
        }
        return out;
    });
}

CausalModel fragment_model(const Fragment& f, const Signature& sig) { return fragment_model(f.graph, sig); }

std::string render_fragment(const Fragment& f, const Signature& sig) {
    std::string out = "anchor: " + sig.name(f.x) + "; " + sig.name(f.y) + ";";
    if (!f.z.empty()) out += " " + sig.render(f.z);
    out += "\n";
    return out + f.graph.render(sig);
}

Fragment parse_fragment(std::string_view text, const Signature& sig) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<Fragment> f;
    std::string edges;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (t.rfind("anchor:", 0) == 0) {
            if (f) throw SchemaError("fragment with two anchor lines");
            std::vector<std::string> parts;
            std::stringstream ss(t.substr(7));
            std::string part;
            while (std::getline(ss, part, ';')) parts.push_back(trim(part));
            if (parts.size() < 2 || parts.size() > 3) throw SchemaError("anchor line must read 'anchor: X; Y; Z'");
            VarSet z;
            if (parts.size() == 3 && !parts[2].empty()) {
                std::stringstream zs(parts[2]);
                while (std::getline(zs, part, ',')) z |= VarSet::single(sig.index_of(trim(part)));
            }
            const std::size_t x = sig.index_of(parts[0]);
            const std::size_t y = sig.index_of(parts[1]);
            (void)Atom(VarSet::single(x), VarSet::single(y), z);
            f = Fragment{Digraph(sig.size()), x, y, z, {}};
        } else {
            edges += line + "\n";
        }
    }
    if (!f) throw SchemaError("fragment without an anchor line");
    f->graph = parse_edge_list(edges, sig);
    if (auto p = f->graph.find_path(f->x, f->y)) f->path = *p;
    return *f;
}

} // namespace relcalc
