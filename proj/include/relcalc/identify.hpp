#pragma once

// Structure identification from relevance statements: the edges shared by
// every extension, cost ranking of information options and the
// recursiveness test.

#include "relcalc/calculus.hpp"
#include "relcalc/digraph.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace relcalc {

using Rational = boost::rational<std::int64_t>;

// Edges present in the syntactic graph of every sys-extension of gamma
// (sys is Srec or Rec). Decided one edge at a time: x -> y is identified
// iff gamma plus ({x} -/-> {y} | rest) is sys-inconsistent.
// Throws Inconsistent.
Digraph identified_graph(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys);

// The same intersection computed by enumerating every extension. Throws
// TooManyExtensions past `limit`.
Digraph identified_graph_exhaustive(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys,
                                    std::size_t limit);

// A rational cost or +infinity.
class PonderedCost {
public:
    static PonderedCost infinite() { return PonderedCost(); }
    explicit PonderedCost(Rational value) : value_(value) {}

    [[nodiscard]] bool is_infinite() const { return !value_.has_value(); }
    [[nodiscard]] const Rational& value() const { return *value_; }
    [[nodiscard]] std::string render() const;

    std::strong_ordering operator<=>(const PonderedCost& other) const;
    bool operator==(const PonderedCost& other) const = default;

private:
    PonderedCost() = default;
    std::optional<Rational> value_;
};

// cost / new_edges, infinite when new_edges is 0.
PonderedCost pondered_cost(const Rational& cost, std::size_t new_edges);

struct InfoOption {
    std::vector<Formula> gamma;  // must contain every base formula
    Rational cost;
};

struct RankedOption {
    std::size_t index = 0;  // position in the input list
    std::size_t new_edges = 0;
    PonderedCost cost = PonderedCost::infinite();
};

// Sorted by pondered cost, ties kept in input order. Throws Inconsistent
// naming the offending option, PreconditionError when an option does not
// extend the base set.
std::vector<RankedOption> rank_options(const Signature& sig, std::span<const Formula> gamma,
                                       std::span<const InfoOption> options, AxiomSystem sys);

// Options file: [{"formulas": [string], "cost": number}].
std::vector<InfoOption> parse_options(std::string_view json_text, const Signature& sig);
std::vector<InfoOption> read_options(const std::filesystem::path& path, const Signature& sig);
// Variable names used by an options document, for signature inference.
std::vector<std::string> option_variable_names(std::string_view json_text);

enum class Recursiveness { PossiblyRecursive, NonRecursive };
std::string to_string(Recursiveness r);
Recursiveness recursiveness_test(const Signature& sig, std::span<const Formula> gamma);

// For every negative literal (X -/-> Y | Z) of gamma: some directed path from
// X to Y avoiding Z must exist in any compatible causal graph.
struct PathConstraint {
    VarSet from;
    VarSet to;
    VarSet avoid;
};
std::vector<PathConstraint> path_constraints(std::span<const Formula> gamma);
// JSON array of {"from": [...], "to": [...], "avoid": [...]}.
std::string render_path_constraints(std::span<const PathConstraint> constraints, const Signature& sig);

} // namespace relcalc
