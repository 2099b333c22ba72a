#pragma once

// Axiom instances over the finite atom space and the extension machinery of
// the three axiomatic systems.
//
// An extension is a total truth assignment to the atom space that satisfies
// every axiom instance and the premises. Srec additionally asks the
// syntactic graph to be acyclic; Rec asks for a fragment for every negative
// atom with single-variable first and second components.

#include "relcalc/digraph.hpp"
#include "relcalc/language.hpp"
#include "relcalc/semantics.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace relcalc {

enum class AxiomSystem { Uniq, Srec, Rec };

std::string to_string(AxiomSystem s);
// "uniq" | "srec" | "rec"; throws SchemaError otherwise.
AxiomSystem parse_system(std::string_view text);

// Clause (!antecedents[0] | ... | consequent). `axiom` is 2..9.
struct AxiomInstance {
    int axiom = 0;
    std::vector<Atom> antecedents;
    Atom consequent;
};

// All non-trivial instances of A2..A9 over n variables, deduplicated as
// clauses (the first axiom producing a clause keeps it). Cached per n.
const std::vector<AxiomInstance>& instantiate_axioms(std::size_t n);

using Extension = AtomValuation;

// True when every axiom instance holds under e.
bool satisfies_axioms(const Extension& e);

// Smallest P (by size, then bitmask) with ((P y)^c -/-> y | P) true in e;
// the complement of y when there is none.
VarSet parent_set(const Extension& e, std::size_t y);
// Edge x -> y iff x is in the parent set of y.
Digraph syntactic_graph(const Extension& e);
// Lexicographically smallest path x ~> y in the syntactic graph whose inner
// vertices avoid z. PreconditionError when (x -/-> y | z) is true in e;
// InvalidExtension when no such path exists.
std::vector<std::size_t> path_witness(const Extension& e, std::size_t x, std::size_t y, VarSet z);

// Structural side conditions, checked directly on a total assignment.
bool has_acyclic_graph(const Extension& e);
bool has_all_fragments(const Extension& e);
bool is_extension(const Extension& e, AxiomSystem sys);

// Streams the sys-extensions of gamma, each exactly once, in a fixed order.
// The first one produced is the canonical witness used everywhere else.
class ExtensionEnumerator {
public:
    ExtensionEnumerator(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys);
    ~ExtensionEnumerator();
    ExtensionEnumerator(const ExtensionEnumerator&) = delete;
    ExtensionEnumerator& operator=(const ExtensionEnumerator&) = delete;

    std::optional<Extension> next();

private:
    struct State;
    std::unique_ptr<State> state_;
};

// The canonical extension, or nothing when gamma is sys-inconsistent.
std::optional<Extension> consistent(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys);

// Every extension. Throws TooManyExtensions once more than `limit` exist.
std::vector<Extension> extensions(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys,
                                  std::size_t limit = static_cast<std::size_t>(-1));

// gamma |- phi: phi holds in every sys-extension of gamma.
bool derives(const Signature& sig, std::span<const Formula> gamma, const Formula& phi, AxiomSystem sys);

// Throws SignatureMismatch if some formula mentions variables outside sig.
void check_formulas(const Signature& sig, std::span<const Formula> gamma);

} // namespace relcalc
