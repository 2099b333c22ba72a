#pragma once

// Fragments: small single-connected DAGs inside the syntactic graph that
// witness one negative literal (x -/-> y | z) while respecting every positive
// literal of the extension. Their max/zero models are glued together into
// witness models for consistent theories.

#include "relcalc/calculus.hpp"
#include "relcalc/digraph.hpp"
#include "relcalc/scm.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace relcalc {

struct Fragment {
    Digraph graph;
    std::size_t x = 0;
    std::size_t y = 0;
    VarSet z;
    // Distinguished path x ~> y; empty when the graph has none.
    std::vector<std::size_t> path;

    bool operator==(const Fragment&) const = default;
};

bool is_fragment(const Digraph& g, const Extension& e, std::size_t x, std::size_t y, VarSet z);

// Candidate shapes inside the syntactic graph of e for the anchor: a simple
// path x ~> y avoiding z, plus at most one edge from each off-path vertex into
// the path. Canonical order: paths lexicographically, then attachments as a
// mixed-radix counter over off-path vertices. Shapes are not filtered.
std::vector<Fragment> fragment_shapes(const Extension& e, std::size_t x, std::size_t y, VarSet z);

// First shape passing is_fragment. When (x -/-> y | z) is true in e the
// empty fragment is returned right away.
std::optional<Fragment> find_fragment(const Extension& e, std::size_t x, std::size_t y, VarSet z);
// Every shape passing is_fragment (the empty fragment alone for true atoms).
std::vector<Fragment> find_fragments(const Extension& e, std::size_t x, std::size_t y, VarSet z);

// Singleton-context model on domains {0..n}: a vertex with fragment parents
// is 0 if some parent is 0 and their maximum otherwise; vertices without
// parents are constant 0.
CausalModel fragment_model(const Digraph& g, const Signature& sig);
CausalModel fragment_model(const Fragment& f, const Signature& sig);

// "anchor: X1; X4; X2" followed by "A -> B" lines.
std::string render_fragment(const Fragment& f, const Signature& sig);
Fragment parse_fragment(std::string_view text, const Signature& sig);

struct Foliation {
    Literal phi;
    Extension psi;
};

// Greedy maximal Srec-consistent set containing phi and the positive literals
// of gamma. phi must occur in gamma as a negative literal (PreconditionError);
// Inconsistent when the seed set has no strong-recursive extension.
Foliation foliation(const Signature& sig, std::span<const Formula> gamma, const Literal& phi);

// A strong-recursive model whose literal theory is exactly e. e must be a
// Srec-extension. InvalidExtension when the sum-of-fragments construction
// finds no fragment model for some negative literal of e.
CausalModel srec_witness(const Extension& e);
// A recursive model whose literal theory is exactly e, assembled from one
// foliation per negative literal. e must be a Rec-extension.
CausalModel rec_witness(const Extension& e);

inline constexpr std::size_t kDefaultWitnessAttempts = 256;

// A model satisfying gamma; sys is Srec or Rec. Extensions of gamma are tried
// in enumeration order until the construction realizes one. Throws
// Inconsistent, or InvalidExtension once `attempts` extensions have failed.
CausalModel witness_model(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys,
                          std::size_t attempts = kDefaultWitnessAttempts);

} // namespace relcalc
