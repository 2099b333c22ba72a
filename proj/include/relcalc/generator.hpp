#pragma once

// Seeded random causal models for property suites and `relcalc gen`.

#include "relcalc/scm.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace relcalc {

// Portable draws on top of mt19937_64 (the standard distributions are
// implementation-defined, so they are avoided to keep seeds reproducible
// across standard libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    bool coin() { return below(2) == 1; }
    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

enum class GeneratedClass { StrongRecursive, Recursive, Uniq };

GeneratedClass parse_generated_class(std::string_view text);

struct GeneratorOptions {
    std::size_t variables = 3;
    std::size_t domain = 2;
    std::size_t contexts = 1;
    GeneratedClass kind = GeneratedClass::StrongRecursive;
};

// StrongRecursive: one random variable order shared by all contexts.
// Recursive: an independent order per context.
// Uniq: random (possibly cyclic) dependencies, rejection-sampled until the
// model is in T_uniq; falls back to a Recursive draw after a bounded number
// of attempts.
CausalModel random_model(Rng& rng, const GeneratorOptions& opts);

} // namespace relcalc
