#pragma once

#include "relcalc/language.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace relcalc {

// Directed graph whose vertices are the signature variables 0..n-1. Edges are
// kept as per-vertex successor masks.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : succ_(n) {}

    [[nodiscard]] std::size_t vertices() const { return succ_.size(); }
    [[nodiscard]] bool has_edge(std::size_t from, std::size_t to) const { return succ_[from].contains(to); }
    // Self-loops are rejected.
    void add_edge(std::size_t from, std::size_t to);
    void remove_edge(std::size_t from, std::size_t to);

    [[nodiscard]] VarSet successors(std::size_t v) const { return succ_[v]; }
    [[nodiscard]] VarSet predecessors(std::size_t v) const;
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const;
    [[nodiscard]] std::size_t edge_count() const;

    [[nodiscard]] bool acyclic() const;
    // Underlying undirected graph is a forest (opposite edges count as a cycle).
    [[nodiscard]] bool single_connected() const;
    [[nodiscard]] bool is_root(std::size_t v) const { return predecessors(v).empty(); }
    // Vertices with a directed path to v, v excluded.
    [[nodiscard]] VarSet ancestors(std::size_t v) const;

    // Lexicographically smallest simple directed path from -> ... -> to whose
    // interior vertices avoid `blocked`.
    [[nodiscard]] std::optional<std::vector<std::size_t>> find_path(std::size_t from, std::size_t to,
                                                                    VarSet blocked = {}) const;
    // All such simple paths, in lexicographic order.
    [[nodiscard]] std::vector<std::vector<std::size_t>> all_paths(std::size_t from, std::size_t to,
                                                                  VarSet blocked = {}) const;

    // Edge-subgraph order G <= G'.
    [[nodiscard]] bool subgraph_of(const Digraph& other) const;
    [[nodiscard]] Digraph united(const Digraph& other) const;
    [[nodiscard]] Digraph intersected(const Digraph& other) const;
    [[nodiscard]] Digraph minus(const Digraph& other) const;

    // "A -> B" per line, sorted by (from, to) signature order.
    [[nodiscard]] std::string render(const Signature& sig) const;
    [[nodiscard]] std::string render_dot(const Signature& sig) const;

    bool operator==(const Digraph&) const = default;

private:
    std::vector<VarSet> succ_;
};

// Parses "A -> B" lines (blank lines and '#' comments ignored).
Digraph parse_edge_list(std::string_view text, const Signature& sig);

} // namespace relcalc
