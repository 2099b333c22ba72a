#pragma once

// Small CDCL solver with a lazy theory hook: two watched literals, first-UIP
// learning, non-chronological backjumping, no restarts. Decisions follow the
// variable index order with a per-variable preferred polarity, so runs are
// fully deterministic.

#include <cstdint>
#include <vector>

namespace relcalc::sat {

// Literal encoding: 2 * var + (negative ? 1 : 0).
struct Lit {
    std::uint32_t code = 0;

    static Lit pos(std::size_t var) { return Lit{static_cast<std::uint32_t>(2 * var)}; }
    static Lit neg(std::size_t var) { return Lit{static_cast<std::uint32_t>(2 * var + 1)}; }
    static Lit make(std::size_t var, bool value) { return value ? pos(var) : neg(var); }

    [[nodiscard]] std::size_t var() const { return code >> 1; }
    [[nodiscard]] bool negative() const { return code & 1U; }
    Lit operator~() const { return Lit{code ^ 1U}; }
    auto operator<=>(const Lit&) const = default;
};

using Clause = std::vector<Lit>;

enum class Value : std::int8_t { False = 0, True = 1, Unassigned = 2 };

class Solver;

// Hook for non-clausal constraints. Both callbacks return lemmas: clauses
// implied by the constraint that are falsified or unit under the current
// assignment. An empty result means "no objection".
class Theory {
public:
    virtual ~Theory() = default;
    // Called whenever unit propagation reaches a fixpoint.
    virtual std::vector<Clause> propagate(const Solver& s) = 0;
    // Called on total assignments.
    virtual std::vector<Clause> final_check(const Solver& s) = 0;
};

class Solver {
public:
    explicit Solver(std::size_t vars = 0);

    std::size_t new_var(bool preferred = true);
    [[nodiscard]] std::size_t vars() const { return assigns_.size(); }
    void set_theory(Theory* theory) { theory_ = theory; }

    // May be called at any time, including between solve() calls.
    void add_clause(Clause clause);

    // Searches for the next satisfying assignment (respecting every clause
    // added so far). Returns false when none is left.
    bool solve();

    // Adds the negation of the current decision literals, which excludes the
    // current total assignment and nothing else that agrees with it on
    // decided variables.
    void block_current();

    [[nodiscard]] Value value(std::size_t var) const { return assigns_[var]; }
    [[nodiscard]] Value value(Lit l) const;
    [[nodiscard]] bool is_true(Lit l) const { return value(l) == Value::True; }
    [[nodiscard]] bool is_false(Lit l) const { return value(l) == Value::False; }
    [[nodiscard]] std::vector<Lit> decisions() const;
    [[nodiscard]] bool unsatisfiable() const { return unsat_; }

    [[nodiscard]] std::size_t conflicts() const { return conflicts_; }

private:
    static constexpr int kNoReason = -1;

    void enqueue(Lit l, int reason);
    int propagate();  // returns a conflicting clause index or kNoReason
    void analyze(int conflict);
    void backtrack(int level);
    int attach(Clause clause);  // returns index
    [[nodiscard]] int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    [[nodiscard]] bool theory_round(bool total);

    std::vector<Clause> clauses_;
    std::vector<std::vector<int>> watches_;  // per literal: clauses watching it
    std::vector<Value> assigns_;
    std::vector<bool> polarity_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<Lit> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<char> seen_;
    Theory* theory_ = nullptr;
    bool unsat_ = false;
    std::size_t conflicts_ = 0;
};

} // namespace relcalc::sat
