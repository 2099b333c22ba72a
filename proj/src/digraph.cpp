#include "relcalc/digraph.hpp"

#include "relcalc/error.hpp"

#include <functional>
#include <numeric>
#include <sstream>

namespace relcalc {

void Digraph::add_edge(std::size_t from, std::size_t to) {
    if (from == to) throw PreconditionError("self-loops are not allowed");
    succ_[from] |= VarSet::single(to);
}

void Digraph::remove_edge(std::size_t from, std::size_t to) { succ_[from] = succ_[from] - VarSet::single(to); }

VarSet Digraph::predecessors(std::size_t v) const {
    VarSet out;
    for (std::size_t u = 0; u < succ_.size(); ++u)
        if (succ_[u].contains(v)) out |= VarSet::single(u);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Digraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < succ_.size(); ++u)
        for (std::size_t v : succ_[u].members()) out.emplace_back(u, v);
    return out;
}

std::size_t Digraph::edge_count() const {
    std::size_t c = 0;
    for (auto s : succ_) c += s.size();
    return c;
}

bool Digraph::acyclic() const {
    // Kahn's algorithm on masks.
    const std::size_t n = succ_.size();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v : succ_[u].members()) ++indegree[v];
    std::vector<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v)
        if (indegree[v] == 0) ready.push_back(v);
    std::size_t seen = 0;
    while (!ready.empty()) {
        std::size_t u = ready.back();
        ready.pop_back();
        ++seen;
        for (std::size_t v : succ_[u].members())
            if (--indegree[v] == 0) ready.push_back(v);
    }
    return seen == n;
}

bool Digraph::single_connected() const {
    const std::size_t n = succ_.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t v) {
        return parent[v] == v ? v : parent[v] = root(parent[v]);
    };
    for (auto [u, v] : edges()) {
        auto ru = root(u), rv = root(v);
        if (ru == rv) return false;
        parent[ru] = rv;
    }
    return true;
}

VarSet Digraph::ancestors(std::size_t v) const {
    VarSet found;
    VarSet frontier = predecessors(v);
    while (!frontier.empty()) {
        std::size_t u = frontier.first();
        frontier = frontier - VarSet::single(u);
        if (found.contains(u)) continue;
        found |= VarSet::single(u);
        frontier |= predecessors(u) - found;
    }
    return found - VarSet::single(v);
}

std::vector<std::vector<std::size_t>> Digraph::all_paths(std::size_t from, std::size_t to, VarSet blocked) const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> path{from};
    std::function<void(std::size_t, VarSet)> walk = [&](std::size_t u, VarSet visited) {
        for (std::size_t v : succ_[u].members()) {
            if (visited.contains(v)) continue;
            if (v == to) {
                path.push_back(v);
                out.push_back(path);
                path.pop_back();
                continue;
            }
            if (blocked.contains(v)) continue;
            path.push_back(v);
            walk(v, visited | VarSet::single(v));
            path.pop_back();
        }
    };
    if (from != to) walk(from, VarSet::single(from));
    return out;
}

std::optional<std::vector<std::size_t>> Digraph::find_path(std::size_t from, std::size_t to, VarSet blocked) const {
    std::optional<std::vector<std::size_t>> result;
    std::vector<std::size_t> path{from};
    std::function<bool(std::size_t, VarSet)> walk = [&](std::size_t u, VarSet visited) {
        for (std::size_t v : succ_[u].members()) {
            if (visited.contains(v)) continue;
            if (v == to) {
                path.push_back(v);
                result = path;
                return true;
            }
            if (blocked.contains(v)) continue;
            path.push_back(v);
            if (walk(v, visited | VarSet::single(v))) return true;
            path.pop_back();
        }
        return false;
    };
    if (from != to) walk(from, VarSet::single(from));
    return result;
}

bool Digraph::subgraph_of(const Digraph& other) const {
    for (std::size_t u = 0; u < succ_.size(); ++u)
        if (!succ_[u].subset_of(other.succ_[u])) return false;
    return true;
}

Digraph Digraph::united(const Digraph& other) const {
    Digraph g(*this);
    for (std::size_t u = 0; u < succ_.size(); ++u) g.succ_[u] |= other.succ_[u];
    return g;
}

Digraph Digraph::intersected(const Digraph& other) const {
    Digraph g(*this);
    for (std::size_t u = 0; u < succ_.size(); ++u) g.succ_[u] = succ_[u] & other.succ_[u];
    return g;
}

Digraph Digraph::minus(const Digraph& other) const {
    Digraph g(*this);
    for (std::size_t u = 0; u < succ_.size(); ++u) g.succ_[u] = succ_[u] - other.succ_[u];
    return g;
}

std::string Digraph::render(const Signature& sig) const {
    std::string out;
    for (auto [u, v] : edges()) out += sig.name(u) + " -> " + sig.name(v) + "\n";
    return out;
}

std::string Digraph::render_dot(const Signature& sig) const {
    std::string out = "digraph G {\n";
    for (std::size_t v = 0; v < sig.size(); ++v) out += "  \"" + sig.name(v) + "\";\n";
    for (auto [u, v] : edges()) out += "  \"" + sig.name(u) + "\" -> \"" + sig.name(v) + "\";\n";
    out += "}\n";
    return out;
}

Digraph parse_edge_list(std::string_view text, const Signature& sig) {
    Digraph g(sig.size());
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw SchemaError("edge line without '->': " + line);
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        g.add_edge(sig.index_of(trim(line.substr(0, arrow))), sig.index_of(trim(line.substr(arrow + 2))));
    }
    return g;
}

} // namespace relcalc
