#include "relcalc/sat.hpp"

#include <algorithm>
#include <stdexcept>

namespace relcalc::sat {

Solver::Solver(std::size_t vars) {
    for (std::size_t i = 0; i < vars; ++i) new_var();
}

std::size_t Solver::new_var(bool preferred) {
    assigns_.push_back(Value::Unassigned);
    polarity_.push_back(preferred);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    return assigns_.size() - 1;
}

Value Solver::value(Lit l) const {
    Value v = assigns_[l.var()];
    if (v == Value::Unassigned) return v;
    return (v == Value::True) != l.negative() ? Value::True : Value::False;
}

std::vector<Lit> Solver::decisions() const {
    std::vector<Lit> out;
    for (auto start : trail_lim_) out.push_back(trail_[start]);
    return out;
}

void Solver::enqueue(Lit l, int reason) {
    assigns_[l.var()] = l.negative() ? Value::False : Value::True;
    level_[l.var()] = decision_level();
    reason_[l.var()] = reason;
    trail_.push_back(l);
}

int Solver::attach(Clause clause) {
    const int idx = static_cast<int>(clauses_.size());
    watches_[clause[0].code].push_back(idx);
    watches_[clause[1].code].push_back(idx);
    clauses_.push_back(std::move(clause));
    return idx;
}

void Solver::backtrack(int level) {
    if (decision_level() <= level) return;
    const std::size_t keep = trail_lim_[static_cast<std::size_t>(level)];
    for (std::size_t i = trail_.size(); i-- > keep;) {
        const std::size_t v = trail_[i].var();
        assigns_[v] = Value::Unassigned;
        reason_[v] = kNoReason;
    }
    trail_.resize(keep);
    trail_lim_.resize(static_cast<std::size_t>(level));
    qhead_ = trail_.size();
}

void Solver::add_clause(Clause clause) {
    if (unsat_) return;
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (std::size_t i = 1; i < clause.size(); ++i)
        if (clause[i].var() == clause[i - 1].var()) return;  // tautology
    if (clause.empty()) {
        unsat_ = true;
        return;
    }
    if (clause.size() == 1) {
        backtrack(0);
        if (is_false(clause[0])) unsat_ = true;
        else if (value(clause[0]) == Value::Unassigned) enqueue(clause[0], kNoReason);
        return;
    }

    // Non-false literals first, then false ones by decreasing level.
    auto key = [&](Lit l) { return is_false(l) ? level_[l.var()] : 1 << 30; };
    std::stable_sort(clause.begin(), clause.end(), [&](Lit a, Lit b) { return key(a) > key(b); });
    const std::size_t non_false = static_cast<std::size_t>(
        std::count_if(clause.begin(), clause.end(), [&](Lit l) { return !is_false(l); }));

    if (non_false >= 2) {
        attach(std::move(clause));
        return;
    }
    if (non_false == 1) {
        // Asserting: c[0] is implied at the level of the deepest false literal.
        const int target = level_[clause[1].var()];
        if (is_true(clause[0]) && level_[clause[0].var()] <= target) {
            attach(std::move(clause));
            return;
        }
        backtrack(target);
        const Lit unit = clause[0];
        const int idx = attach(std::move(clause));
        if (value(unit) == Value::Unassigned) enqueue(unit, idx);
        return;
    }
    // Falsified.
    const int top = level_[clause[0].var()];
    const int second = level_[clause[1].var()];
    if (top == 0) {
        unsat_ = true;
        return;
    }
    if (second < top) {
        backtrack(second);
        const Lit unit = clause[0];
        const int idx = attach(std::move(clause));
        enqueue(unit, idx);
        return;
    }
    backtrack(top);
    const int idx = attach(std::move(clause));
    ++conflicts_;
    analyze(idx);
}

int Solver::propagate() {
    while (qhead_ < trail_.size()) {
        const Lit p = trail_[qhead_++];
        const Lit false_lit = ~p;
        auto& ws = watches_[false_lit.code];
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
            const int ci = ws[i++];
            Clause& c = clauses_[static_cast<std::size_t>(ci)];
            if (c[0] == false_lit) std::swap(c[0], c[1]);
            if (is_true(c[0])) {
                ws[j++] = ci;
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k) {
                if (!is_false(c[k])) {
                    std::swap(c[1], c[k]);
                    watches_[c[1].code].push_back(ci);
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            ws[j++] = ci;
            if (is_false(c[0])) {
                while (i < ws.size()) ws[j++] = ws[i++];
                ws.resize(j);
                qhead_ = trail_.size();
                return ci;
            }
            enqueue(c[0], ci);
        }
        ws.resize(j);
    }
    return kNoReason;
}

void Solver::analyze(int conflict) {
    Clause learnt{Lit{}};
    int pending = 0;
    Lit p{};
    bool have_p = false;
    std::size_t index = trail_.size();
    int ci = conflict;
    do {
        if (ci == kNoReason) throw std::logic_error("conflict analysis reached a literal without reason");
        for (Lit q : clauses_[static_cast<std::size_t>(ci)]) {
            if (have_p && q == p) continue;
            const std::size_t v = q.var();
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            if (level_[v] >= decision_level()) ++pending;
            else learnt.push_back(q);
        }
        while (!seen_[trail_[--index].var()]) {
        }
        p = trail_[index];
        have_p = true;
        ci = reason_[p.var()];
        seen_[p.var()] = 0;
        --pending;
    } while (pending > 0);
    learnt[0] = ~p;
    for (std::size_t k = 1; k < learnt.size(); ++k) seen_[learnt[k].var()] = 0;

    int back = 0;
    std::size_t max_at = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
        if (level_[learnt[k].var()] > back) {
            back = level_[learnt[k].var()];
            max_at = k;
        }
    }
    backtrack(back);
    if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
        return;
    }
    std::swap(learnt[1], learnt[max_at]);
    const Lit asserting = learnt[0];
    const int idx = attach(std::move(learnt));
    enqueue(asserting, idx);
}

bool Solver::theory_round(bool total) {
    auto lemmas = total ? theory_->final_check(*this) : theory_->propagate(*this);
    if (lemmas.empty()) return false;
    const std::size_t before = trail_.size();
    const std::size_t conflicts_before = conflicts_;
    const int level_before = decision_level();
    bool effective = false;
    for (auto& lemma : lemmas) {
        bool satisfied_or_open = std::count_if(lemma.begin(), lemma.end(), [&](Lit l) { return !is_false(l); }) >= 2 ||
                                 std::any_of(lemma.begin(), lemma.end(), [&](Lit l) { return is_true(l); });
        if (!satisfied_or_open) effective = true;
        add_clause(std::move(lemma));
        if (unsat_) return true;
    }
    if (!effective && trail_.size() == before && conflicts_ == conflicts_before && decision_level() == level_before)
        throw std::logic_error("theory returned lemmas that neither conflict nor propagate");
    return true;
}

bool Solver::solve() {
    if (unsat_) return false;
    std::size_t next = 0;
    while (true) {
        const int conflict = propagate();
        if (conflict != kNoReason) {
            ++conflicts_;
            if (decision_level() == 0) {
                unsat_ = true;
                return false;
            }
            analyze(conflict);
            next = 0;
            continue;
        }
        if (theory_ && theory_round(false)) {
            if (unsat_) return false;
            next = 0;
            continue;
        }
        while (next < assigns_.size() && assigns_[next] != Value::Unassigned) ++next;
        if (next == assigns_.size()) {
            if (theory_ && theory_round(true)) {
                if (unsat_) return false;
                next = 0;
                continue;
            }
            return true;
        }
        trail_lim_.push_back(trail_.size());
        enqueue(Lit::make(next, polarity_[next]), kNoReason);
    }
}

void Solver::block_current() {
    Clause block;
    for (Lit d : decisions()) block.push_back(~d);
    if (block.empty()) {
        unsat_ = true;
        return;
    }
    add_clause(std::move(block));
}

} // namespace relcalc::sat
