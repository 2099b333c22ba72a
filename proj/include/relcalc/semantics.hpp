#pragma once

// Satisfaction of relevance atoms and formulas by a causal model.
//
// (X -/-> Y | Z) holds in T when for every W disjoint from X, Y, Z, every
// valuation z, w and every context u, the potential responses of each member
// of Y under [x, z, w] do not depend on x.

#include "relcalc/language.hpp"
#include "relcalc/scm.hpp"

#include <string>
#include <vector>

namespace relcalc {

// Answers many satisfaction queries against one model. Construction builds
// the full response table and throws NotUniq for models outside T_uniq.
class Evaluator {
public:
    explicit Evaluator(const CausalModel& m, unsigned jobs = 1);

    [[nodiscard]] const CausalModel& model() const { return table_.model(); }
    [[nodiscard]] const ResponseTable& responses() const { return table_; }

    [[nodiscard]] bool satisfies(const Atom& a) const;
    [[nodiscard]] bool satisfies(const Formula& f) const;

private:
    ResponseTable table_;
};

bool satisfies_atom(const CausalModel& m, const Atom& a);
bool satisfies(const CausalModel& m, const Formula& f);

// A total truth assignment over AtomSpace::of(n), indexed like the atom space.
// Used both for model theories and for calculus extensions.
class AtomValuation {
public:
    AtomValuation() = default;
    AtomValuation(Signature sig, std::vector<bool> values);

    [[nodiscard]] const Signature& signature() const { return sig_; }
    [[nodiscard]] const AtomSpace& space() const { return *space_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] bool operator[](std::size_t atom_index) const { return values_[atom_index]; }
    [[nodiscard]] bool value(const Atom& a) const { return values_[space_->index(a)]; }
    [[nodiscard]] bool satisfies(const Formula& f) const;
    [[nodiscard]] bool satisfies(const Literal& l) const { return value(l.atom) == l.positive; }
    [[nodiscard]] const std::vector<bool>& values() const { return values_; }

    // Lit(.) as literals in atom order, positive ones and negative ones.
    [[nodiscard]] std::vector<Literal> literals() const;
    [[nodiscard]] std::vector<Literal> positives() const;
    [[nodiscard]] std::vector<Literal> negatives() const;
    // The literals as formulas, in atom order.
    [[nodiscard]] std::vector<Formula> formulas() const;

    // "irr(...): true|false" per atom.
    [[nodiscard]] std::string render_verdicts() const;
    // One literal per line.
    [[nodiscard]] std::string render_literals() const;

    // Domains are ignored: theories of models and calculus extensions compare.
    bool operator==(const AtomValuation& other) const {
        return sig_.same_variables(other.sig_) && values_ == other.values_;
    }

private:
    Signature sig_;
    const AtomSpace* space_ = nullptr;
    std::vector<bool> values_;
};

using LiteralTheory = AtomValuation;

// Verdict for every atom of the model's signature, in atom order.
LiteralTheory theory_literals(const CausalModel& m, unsigned jobs = 1);
LiteralTheory theory_literals(const Evaluator& ev, unsigned jobs = 1);

} // namespace relcalc
