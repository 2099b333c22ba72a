#pragma once

// Functional causal models over finite domains and a finite context set.
//
// Every equation F_Y is a first-match rule table with a mandatory default.
// On construction the table is compiled into a dense lookup indexed by the
// full assignment (mixed radix over the signature domains), one per context.
// All evaluation goes through the dense tables; the rules are kept for
// serialization.

#include "relcalc/digraph.hpp"
#include "relcalc/language.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace relcalc {

// Index into a variable's domain.
using Value = std::uint8_t;

// Partial valuation of signature variables.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::size_t n) : values_(n, kUnset) {}

    [[nodiscard]] std::size_t width() const { return values_.size(); }
    void set(std::size_t var, Value v) { values_[var] = static_cast<std::int16_t>(v); }
    void unset(std::size_t var) { values_[var] = kUnset; }
    [[nodiscard]] bool has(std::size_t var) const { return values_[var] != kUnset; }
    [[nodiscard]] Value at(std::size_t var) const { return static_cast<Value>(values_[var]); }
    [[nodiscard]] std::optional<Value> get(std::size_t var) const {
        return has(var) ? std::optional<Value>(at(var)) : std::nullopt;
    }
    [[nodiscard]] VarSet variables() const;
    // x restricted to `vars` (the projection x|Y).
    [[nodiscard]] Assignment restricted(VarSet vars) const;
    // Values of `other` override ours.
    [[nodiscard]] Assignment merged(const Assignment& other) const;

    // "X1=0,X2=1" in signature order.
    [[nodiscard]] std::string render(const Signature& sig) const;
    // Inverse of render; throws UnknownVariable / DomainError / SyntaxError.
    static Assignment parse(std::string_view text, const Signature& sig);

    bool operator==(const Assignment&) const = default;

private:
    static constexpr std::int16_t kUnset = -1;
    std::vector<std::int16_t> values_;
};

struct Rule {
    std::vector<std::pair<std::size_t, Value>> when;  // (variable, value), ascending variable
    std::optional<std::size_t> context;                // absent = any context
    Value then = 0;

    bool operator==(const Rule&) const = default;
};

struct Equation {
    std::vector<Rule> rules;
    Value fallback = 0;

    bool operator==(const Equation&) const = default;
};

class CausalModel {
public:
    // Validates rules (SchemaError, DomainError, SelfReference, UnknownContext).
    CausalModel(Signature sig, std::vector<std::string> contexts, std::vector<Equation> equations);

    // fn(var, ctx, full assignment) -> value of var. The full assignment's
    // entry for var itself must be ignored by fn. Rules are synthesized from
    // the resulting tables.
    using EquationFn = std::function<Value(std::size_t var, std::size_t ctx, std::span<const Value> full)>;
    static CausalModel from_function(Signature sig, std::vector<std::string> contexts, const EquationFn& fn);

    [[nodiscard]] const Signature& signature() const { return sig_; }
    [[nodiscard]] std::size_t variables() const { return sig_.size(); }
    [[nodiscard]] const std::vector<std::string>& contexts() const { return contexts_; }
    [[nodiscard]] const std::vector<Equation>& equations() const { return equations_; }
    // Throws UnknownContext.
    [[nodiscard]] std::size_t context_index(std::string_view id) const;

    // Number of total assignments (product of the domain sizes).
    [[nodiscard]] std::size_t assignment_count() const { return tables_->assignment_count; }
    [[nodiscard]] std::size_t stride(std::size_t var) const { return tables_->strides[var]; }
    [[nodiscard]] Value evaluate(std::size_t var, std::size_t ctx, std::size_t full_index) const {
        return tables_->table[ctx * sig_.size() + var][full_index];
    }
    [[nodiscard]] Value evaluate(std::size_t var, std::size_t ctx, std::span<const Value> full) const;
    // Non-trivial arguments of F_var at ctx, decided extensionally.
    [[nodiscard]] VarSet dependencies(std::size_t var, std::size_t ctx) const {
        return tables_->deps[ctx * sig_.size() + var];
    }

    // Same signature, context ids and equation tables (rules may differ).
    bool operator==(const CausalModel& other) const;

private:
    struct Tables {
        std::vector<std::size_t> strides;
        std::size_t assignment_count = 1;
        std::vector<std::vector<Value>> table;  // [ctx * n + var][full index]
        std::vector<VarSet> deps;               // [ctx * n + var]
    };

    CausalModel(Signature sig, std::vector<std::string> contexts, std::vector<Equation> equations,
                std::shared_ptr<const Tables> tables);
    static std::shared_ptr<Tables> blank_tables(const Signature& sig, std::size_t contexts);
    static void compute_dependencies(const Signature& sig, Tables& t);
    void validate() const;
    void compile();

    friend CausalModel intervene(const CausalModel&, const Assignment&);
    friend CausalModel direct_sum(std::span<const CausalModel>);
    static std::vector<Equation> synthesize_rules(const Signature& sig, std::size_t contexts, const Tables& t);

    Signature sig_;
    std::vector<std::string> contexts_;
    std::vector<Equation> equations_;
    std::shared_ptr<const Tables> tables_;
};

// [x]T: intervened variables get constant equations. Throws DomainError.
CausalModel intervene(const CausalModel& m, const Assignment& x);

struct SolveResult {
    enum class Kind { Unique, None, Multiple };
    Kind kind = Kind::None;
    std::size_t count = 0;
    Assignment solution;  // set when kind == Unique
};

// All simultaneous fixed points at context u. Throws UnknownContext.
SolveResult solve(const CausalModel& m, std::string_view context);
SolveResult solve(const CausalModel& m, std::size_t context);

// Solution of [x]T at context ctx, without materializing [x]T. `fixed` holds
// the intervened values.
SolveResult solve_intervened(const CausalModel& m, const Assignment& fixed, std::size_t ctx);

// [x]targets(u). Throws NotUnique when [x]T has no or several solutions at u.
Assignment potential_response(const CausalModel& m, const Assignment& x, VarSet targets, std::string_view context);
Assignment potential_response(const CausalModel& m, const Assignment& x, VarSet targets, std::size_t context);

bool check_uniq(const CausalModel& m, unsigned jobs = 1);

// G(T, u) for one context, or G(T) when ctx is empty.
Digraph semantic_graph(const CausalModel& m, std::optional<std::size_t> ctx = std::nullopt);

enum class ModelClass { NotUniq, UniqOnly, Recursive, StrongRecursive };
ModelClass classify(const CausalModel& m, unsigned jobs = 1);
std::string to_string(ModelClass c);

// T1 + ... + Tk. Context ids become "<i>:<u>" with i starting at 1. Throws
// SignatureMismatch.
CausalModel direct_sum(std::span<const CausalModel> models);

// Unique potential responses for every intervention and context. Building it
// amounts to check_uniq; throws NotUniq when some [x]T(u) is not unique.
//
// An intervention is encoded as a sum of per-variable offsets: variable i set
// to value v contributes (v + 1) * istride(i); unset contributes 0.
class ResponseTable {
public:
    explicit ResponseTable(const CausalModel& m, unsigned jobs = 1);

    [[nodiscard]] const CausalModel& model() const { return model_; }
    [[nodiscard]] std::size_t intervention_count() const { return interventions_; }
    [[nodiscard]] std::size_t offset(std::size_t var, Value v) const { return (std::size_t{v} + 1) * istride_[var]; }
    [[nodiscard]] std::size_t encode(const Assignment& x) const;
    [[nodiscard]] Value response(std::size_t ctx, std::size_t intervention, std::size_t var) const {
        return data_[(ctx * interventions_ + intervention) * n_ + var];
    }
    // Offsets of every valuation of `vars` (the empty set yields {0}).
    [[nodiscard]] std::vector<std::size_t> valuations(VarSet vars) const;

private:
    CausalModel model_;
    std::size_t n_;
    std::vector<std::size_t> istride_;
    std::size_t interventions_ = 1;
    std::vector<Value> data_;
};

} // namespace relcalc
