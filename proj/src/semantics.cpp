#include "relcalc/semantics.hpp"

#include "relcalc/error.hpp"

#include <algorithm>
#include <thread>

namespace relcalc {

Evaluator::Evaluator(const CausalModel& m, unsigned jobs) : table_(m, jobs) {}

bool Evaluator::satisfies(const Atom& a) const {
    const CausalModel& m = model();
    const std::size_t n = m.variables();
    if (!a.mentioned().subset_of(VarSet::all(n))) throw SignatureMismatch("atom mentions variables outside the model");
    const auto xs = table_.valuations(a.x());
    const auto targets = a.y().members();
    const std::size_t contexts = m.contexts().size();
    bool holds = true;
    for_each_subset(a.mentioned().complement(n), [&](VarSet w) {
        if (!holds) return;
        for (std::size_t base : table_.valuations(a.z() | w)) {
            for (std::size_t ctx = 0; ctx < contexts; ++ctx) {
                const std::size_t first = base + xs.front();
                for (std::size_t k = 1; k < xs.size(); ++k) {
                    for (std::size_t y : targets) {
                        if (table_.response(ctx, base + xs[k], y) != table_.response(ctx, first, y)) {
                            holds = false;
                            return;
                        }
                    }
                }
            }
        }
    });
    return holds;
}

bool Evaluator::satisfies(const Formula& f) const {
    return f.evaluate([this](const Atom& a) { return satisfies(a); });
}

bool satisfies_atom(const CausalModel& m, const Atom& a) { return Evaluator(m).satisfies(a); }

bool satisfies(const CausalModel& m, const Formula& f) { return Evaluator(m).satisfies(f); }

// ---------------------------------------------------------------------------

AtomValuation::AtomValuation(Signature sig, std::vector<bool> values)
    : sig_(std::move(sig)), space_(&AtomSpace::of(sig_.size())), values_(std::move(values)) {
    if (values_.size() != space_->size()) throw SignatureMismatch("valuation does not cover the atom space");
}

bool AtomValuation::satisfies(const Formula& f) const {
    return f.evaluate([this](const Atom& a) { return value(a); });
}

std::vector<Literal> AtomValuation::literals() const {
    std::vector<Literal> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out.push_back(Literal{(*space_)[i], values_[i]});
    return out;
}

std::vector<Literal> AtomValuation::positives() const {
    std::vector<Literal> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i]) out.push_back(Literal{(*space_)[i], true});
    return out;
}

std::vector<Literal> AtomValuation::negatives() const {
    std::vector<Literal> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!values_[i]) out.push_back(Literal{(*space_)[i], false});
    return out;
}

std::vector<Formula> AtomValuation::formulas() const {
    std::vector<Formula> out;
    for (const auto& l : literals()) out.push_back(Formula::literal(l));
    return out;
}

std::string AtomValuation::render_verdicts() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        out += render_atom((*space_)[i], sig_) + (values_[i] ? ": true\n" : ": false\n");
    return out;
}

std::string AtomValuation::render_literals() const {
    std::string out;
    for (const auto& l : literals()) out += render_literal(l, sig_) + "\n";
    return out;
}

LiteralTheory theory_literals(const Evaluator& ev, unsigned jobs) {
    const Signature& sig = ev.model().signature();
    const AtomSpace& space = AtomSpace::of(sig.size());
    std::vector<char> verdicts(space.size(), 0);
    const unsigned workers = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(space.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < space.size(); ++i) verdicts[i] = ev.satisfies(space[i]);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < space.size(); i += workers) verdicts[i] = ev.satisfies(space[i]);
            });
        for (auto& t : pool) t.join();
    }
    return LiteralTheory(sig, std::vector<bool>(verdicts.begin(), verdicts.end()));
}

LiteralTheory theory_literals(const CausalModel& m, unsigned jobs) { return theory_literals(Evaluator(m, jobs), jobs); }

} // namespace relcalc
