#pragma once

#include "relcalc/calculus.hpp"
#include "relcalc/fragments.hpp"
#include "relcalc/generator.hpp"
#include "relcalc/model_io.hpp"
#include "relcalc/semantics.hpp"

#include <string>
#include <vector>

#ifndef RELCALC_FIXTURE_DIR
#error "RELCALC_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(RELCALC_FIXTURE_DIR) + "/" + name; }

inline relcalc::Signature four() { return relcalc::Signature({"X1", "X2", "X3", "X4"}); }

// Theorem 11 style model: X2 copies the pair (X1, X3), X3 and X4 read its
// components back; unique solutions but a cyclic graph in its only context.
inline relcalc::CausalModel feedback_pair() { return relcalc::read_model(path("feedback_pair.json")); }

// Two binary variables, each depending on the other in a different context.
inline relcalc::CausalModel context_switch() { return relcalc::read_model(path("two_contexts.json")); }

// Collider X1 -> X3 <- X2 followed by X3 -> X4, as a min-max model.
inline relcalc::CausalModel collider_chain() {
    const auto sig = four();
    return relcalc::fragment_model(relcalc::parse_edge_list("X1 -> X3\nX2 -> X3\nX3 -> X4\n", sig), sig);
}

inline std::vector<relcalc::Formula> four_variable_statements() {
    return relcalc::read_formula_set(path("four_statements.txt"), four());
}

// Strong-recursive, X4 <- X1 -> X3 <- X2 style chain in which the second
// context pins X1 = 1 and so hides X2 from X3 unless X1 is intervened on.
inline relcalc::CausalModel masking() { return relcalc::read_model(path("masking.json")); }

inline std::vector<relcalc::CausalModel> fixture_models() {
    return {feedback_pair(), context_switch(), collider_chain(), masking()};
}

inline relcalc::CausalModel random_model(std::uint64_t seed, std::size_t n, relcalc::GeneratedClass kind,
                                         std::size_t contexts = 1, std::size_t domain = 2) {
    relcalc::Rng rng(seed);
    relcalc::GeneratorOptions opts;
    opts.variables = n;
    opts.domain = domain;
    opts.contexts = contexts;
    opts.kind = kind;
    return relcalc::random_model(rng, opts);
}

// Each literal of `e` kept with probability keep_percent / 100.
inline std::vector<relcalc::Formula> random_subset(const relcalc::Extension& e, relcalc::Rng& rng, unsigned keep_percent) {
    std::vector<relcalc::Formula> out;
    for (const auto& l : e.literals())
        if (rng.below(100) < keep_percent) out.push_back(relcalc::Formula::literal(l));
    return out;
}

inline std::vector<relcalc::Literal> literals_of(std::span<const relcalc::Formula> gamma) {
    std::vector<relcalc::Literal> out;
    for (const auto& f : gamma) out.push_back(*f.as_literal());
    return out;
}

} // namespace fixtures
