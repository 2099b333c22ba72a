#include "relcalc/generator.hpp"

#include "relcalc/error.hpp"

#include <numeric>

namespace relcalc {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

GeneratedClass parse_generated_class(std::string_view text) {
    if (text == "srec") return GeneratedClass::StrongRecursive;
    if (text == "rec") return GeneratedClass::Recursive;
    if (text == "uniq") return GeneratedClass::Uniq;
    throw SchemaError("unknown model class '" + std::string(text) + "' (expected srec, rec or uniq)");
}

namespace {

std::vector<std::size_t> shuffled(Rng& rng, std::size_t n) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    return order;
}

// Random equations whose parents at context c are drawn from allowed[c][var].
CausalModel tabulate(Rng& rng, const GeneratorOptions& opts, const std::vector<std::vector<VarSet>>& allowed) {
    const std::size_t n = opts.variables;
    std::vector<std::string> names, values, contexts;
    for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
    for (std::size_t v = 0; v < opts.domain; ++v) values.push_back(std::to_string(v));
    for (std::size_t c = 0; c < opts.contexts; ++c) contexts.push_back("u" + std::to_string(c + 1));
    Signature sig(names, std::vector<std::vector<std::string>>(n, values), kHardMaxVariables);

    // tables[c][var] maps the parent valuation (mixed radix) to a value.
    std::vector<std::vector<std::vector<Value>>> tables(opts.contexts, std::vector<std::vector<Value>>(n));
    std::vector<std::vector<std::vector<std::size_t>>> parents(opts.contexts, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t c = 0; c < opts.contexts; ++c) {
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t p : allowed[c][v].members())
                if (rng.coin()) parents[c][v].push_back(p);
            std::size_t rows = 1;
            for (std::size_t k = 0; k < parents[c][v].size(); ++k) rows *= opts.domain;
            for (std::size_t r = 0; r < rows; ++r) tables[c][v].push_back(static_cast<Value>(rng.below(opts.domain)));
        }
    }
    return CausalModel::from_function(sig, contexts, [&](std::size_t var, std::size_t ctx, std::span<const Value> full) {
        std::size_t row = 0;
        for (std::size_t p : parents[ctx][var]) row = row * opts.domain + full[p];
        return tables[ctx][var][row];
    });
}

std::vector<std::vector<VarSet>> ordered_parents(const std::vector<std::size_t>& order) {
    std::vector<VarSet> allowed(order.size());
    VarSet earlier;
    for (std::size_t v : order) {
        allowed[v] = earlier;
        earlier |= VarSet::single(v);
    }
    return {allowed};
}

} // namespace

CausalModel random_model(Rng& rng, const GeneratorOptions& opts) {
    if (opts.variables == 0 || opts.variables > kHardMaxVariables) throw PreconditionError("variable count out of range");
    if (opts.domain == 0 || opts.domain > 255) throw PreconditionError("domain size out of range");
    if (opts.contexts == 0) throw PreconditionError("at least one context is needed");
    const std::size_t n = opts.variables;

    switch (opts.kind) {
    case GeneratedClass::StrongRecursive: {
        auto allowed = ordered_parents(shuffled(rng, n));
        return tabulate(rng, opts, std::vector<std::vector<VarSet>>(opts.contexts, allowed.front()));
    }
    case GeneratedClass::Recursive: {
        std::vector<std::vector<VarSet>> allowed;
        for (std::size_t c = 0; c < opts.contexts; ++c) allowed.push_back(ordered_parents(shuffled(rng, n)).front());
        return tabulate(rng, opts, allowed);
    }
    case GeneratedClass::Uniq: {
        std::vector<VarSet> anything(n);
        for (std::size_t v = 0; v < n; ++v) anything[v] = VarSet::all(n) - VarSet::single(v);
        // Prefer a model that actually uses a cycle; acyclic draws are kept as
        // the fallback.
        std::optional<CausalModel> acyclic;
        for (int attempt = 0; attempt < 64; ++attempt) {
            CausalModel m = tabulate(rng, opts, std::vector<std::vector<VarSet>>(opts.contexts, anything));
            if (!check_uniq(m)) continue;
            if (classify(m) == ModelClass::UniqOnly) return m;
            if (!acyclic) acyclic = std::move(m);
        }
        if (acyclic) return std::move(*acyclic);
        GeneratorOptions rec = opts;
        rec.kind = GeneratedClass::Recursive;
        return random_model(rng, rec);
    }
    }
    throw PreconditionError("unknown model class");
}

} // namespace relcalc
