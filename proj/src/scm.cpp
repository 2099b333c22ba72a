#include "relcalc/scm.hpp"

#include "relcalc/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <thread>

namespace relcalc {

// ---------------------------------------------------------------------------
// Assignment

VarSet Assignment::variables() const {
    VarSet out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (has(i)) out |= VarSet::single(i);
    return out;
}

Assignment Assignment::restricted(VarSet vars) const {
    Assignment out(values_.size());
    for (std::size_t i : vars.members())
        if (i < values_.size() && has(i)) out.set(i, at(i));
    return out;
}

Assignment Assignment::merged(const Assignment& other) const {
    Assignment out(*this);
    for (std::size_t i = 0; i < other.width() && i < width(); ++i)
        if (other.has(i)) out.set(i, other.at(i));
    return out;
}

std::string Assignment::render(const Signature& sig) const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!has(i)) continue;
        if (!out.empty()) out += ',';
        out += sig.name(i) + "=" + sig.domain(i)[at(i)];
    }
    return out;
}

Assignment Assignment::parse(std::string_view text, const Signature& sig) {
    Assignment out(sig.size());
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    std::size_t begin = 0;
    while (begin < text.size()) {
        std::size_t end = text.find(',', begin);
        if (end == std::string_view::npos) end = text.size();
        std::string_view item = trim(text.substr(begin, end - begin));
        begin = end + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw SyntaxError(0, "expected NAME=VALUE, got '" + std::string(item) + "'");
        const std::size_t var = sig.index_of(trim(item.substr(0, eq)));
        const std::string_view value = trim(item.substr(eq + 1));
        auto v = sig.find_value(var, value);
        if (!v) throw DomainError("value '" + std::string(value) + "' is not in the domain of " + sig.name(var));
        out.set(var, static_cast<Value>(*v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// CausalModel

namespace {

// Advances a mixed-radix counter over `radix`; returns false after the last.
bool next_digits(std::vector<Value>& digits, const std::vector<std::size_t>& radix) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < radix[i]) return true;
        digits[i] = 0;
    }
    return false;
}

std::vector<std::size_t> domain_sizes(const Signature& sig) {
    std::vector<std::size_t> d(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) d[i] = sig.domain_size(i);
    return d;
}

std::size_t full_index(std::span<const Value> values, const std::vector<std::size_t>& strides) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < values.size(); ++i) idx += values[i] * strides[i];
    return idx;
}

} // namespace

std::shared_ptr<CausalModel::Tables> CausalModel::blank_tables(const Signature& sig, std::size_t contexts) {
    auto t = std::make_shared<Tables>();
    t->strides.resize(sig.size());
    for (std::size_t i = 0; i < sig.size(); ++i) {
        t->strides[i] = t->assignment_count;
        t->assignment_count *= sig.domain_size(i);
    }
    t->table.assign(contexts * sig.size(), std::vector<Value>(t->assignment_count, 0));
    t->deps.assign(contexts * sig.size(), VarSet{});
    return t;
}

void CausalModel::compute_dependencies(const Signature& sig, Tables& t) {
    const std::size_t n = sig.size();
    const std::size_t contexts = n == 0 ? 0 : t.table.size() / n;
    for (std::size_t c = 0; c < contexts; ++c) {
        for (std::size_t y = 0; y < n; ++y) {
            const auto& table = t.table[c * n + y];
            VarSet deps;
            for (std::size_t x = 0; x < n; ++x) {
                if (x == y) continue;
                const std::size_t stride = t.strides[x];
                const std::size_t d = sig.domain_size(x);
                bool relevant = false;
                for (std::size_t idx = 0; idx < t.assignment_count && !relevant; ++idx) {
                    if ((idx / stride) % d != 0) continue;
                    for (std::size_t v = 1; v < d; ++v) {
                        if (table[idx + v * stride] != table[idx]) {
                            relevant = true;
                            break;
                        }
                    }
                }
                if (relevant) deps |= VarSet::single(x);
            }
            t.deps[c * n + y] = deps;
        }
    }
}

CausalModel::CausalModel(Signature sig, std::vector<std::string> contexts, std::vector<Equation> equations)
    : sig_(std::move(sig)), contexts_(std::move(contexts)), equations_(std::move(equations)) {
    validate();
    compile();
}

CausalModel::CausalModel(Signature sig, std::vector<std::string> contexts, std::vector<Equation> equations,
                         std::shared_ptr<const Tables> tables)
    : sig_(std::move(sig)), contexts_(std::move(contexts)), equations_(std::move(equations)),
      tables_(std::move(tables)) {}

void CausalModel::validate() const {
    if (contexts_.empty()) throw SchemaError("a model needs at least one context");
    std::set<std::string> seen;
    for (const auto& c : contexts_) {
        if (c.empty()) throw SchemaError("context ids must be non-empty");
        if (!seen.insert(c).second) throw SchemaError("duplicate context id '" + c + "'");
    }
    if (equations_.size() != sig_.size()) throw SchemaError("exactly one equation per variable is required");
    for (std::size_t y = 0; y < sig_.size(); ++y) {
        const auto& eq = equations_[y];
        const std::string& name = sig_.name(y);
        if (eq.fallback >= sig_.domain_size(y))
            throw DomainError("default of " + name + " lies outside its domain");
        for (const auto& rule : eq.rules) {
            if (rule.then >= sig_.domain_size(y)) throw DomainError("rule value for " + name + " lies outside its domain");
            if (rule.context && *rule.context >= contexts_.size())
                throw UnknownContext("#" + std::to_string(*rule.context));
            VarSet mentioned;
            for (auto [var, value] : rule.when) {
                if (var >= sig_.size()) throw SchemaError("rule for " + name + " mentions an unknown variable");
                if (var == y) throw SelfReference("rule for " + name + " conditions on " + name);
                if (mentioned.contains(var)) throw SchemaError("rule for " + name + " mentions a variable twice");
                mentioned |= VarSet::single(var);
                if (value >= sig_.domain_size(var))
                    throw DomainError("rule for " + name + " uses a value outside the domain of " + sig_.name(var));
            }
        }
    }
}

void CausalModel::compile() {
    auto t = blank_tables(sig_, contexts_.size());
    const std::size_t n = sig_.size();
    const auto radix = domain_sizes(sig_);
    for (std::size_t c = 0; c < contexts_.size(); ++c) {
        std::vector<Value> digits(n, 0);
        std::size_t idx = 0;
        do {
            for (std::size_t y = 0; y < n; ++y) {
                Value out = equations_[y].fallback;
                for (const auto& rule : equations_[y].rules) {
                    if (rule.context && *rule.context != c) continue;
                    bool match = std::all_of(rule.when.begin(), rule.when.end(),
                                             [&](const auto& cond) { return digits[cond.first] == cond.second; });
                    if (match) {
                        out = rule.then;
                        break;
                    }
                }
                t->table[c * n + y][idx] = out;
            }
            ++idx;
        } while (next_digits(digits, radix));
    }
    compute_dependencies(sig_, *t);
    tables_ = std::move(t);
}

std::vector<Equation> CausalModel::synthesize_rules(const Signature& sig, std::size_t contexts, const Tables& t) {
    const std::size_t n = sig.size();
    std::vector<Equation> out(n);
    for (std::size_t y = 0; y < n; ++y) {
        bool uniform = true;
        for (std::size_t c = 1; c < contexts && uniform; ++c) uniform = t.table[c * n + y] == t.table[y];

        struct Entry {
            std::optional<std::size_t> ctx;
            std::vector<std::pair<std::size_t, Value>> when;
            Value value;
        };
        std::vector<Entry> entries;
        for (std::size_t c = 0; c < (uniform ? 1 : contexts); ++c) {
            const auto deps = t.deps[c * n + y].members();
            std::vector<std::size_t> radix;
            for (auto d : deps) radix.push_back(sig.domain_size(d));
            std::vector<Value> digits(deps.size(), 0);
            do {
                std::size_t idx = 0;
                Entry e{uniform ? std::nullopt : std::optional<std::size_t>(c), {}, 0};
                for (std::size_t k = 0; k < deps.size(); ++k) {
                    idx += digits[k] * t.strides[deps[k]];
                    e.when.emplace_back(deps[k], digits[k]);
                }
                e.value = t.table[c * n + y][idx];
                entries.push_back(std::move(e));
            } while (next_digits(digits, radix));
        }
        std::map<Value, std::size_t> freq;
        for (const auto& e : entries) ++freq[e.value];
        Value fallback = 0;
        std::size_t best = 0;
        for (auto [v, count] : freq) {
            if (count > best) {
                best = count;
                fallback = v;
            }
        }
        out[y].fallback = fallback;
        for (auto& e : entries)
            if (e.value != fallback) out[y].rules.push_back(Rule{std::move(e.when), e.ctx, e.value});
    }
    return out;
}

CausalModel CausalModel::from_function(Signature sig, std::vector<std::string> contexts, const EquationFn& fn) {
    if (contexts.empty()) throw SchemaError("a model needs at least one context");
    auto t = blank_tables(sig, contexts.size());
    const std::size_t n = sig.size();
    const auto radix = domain_sizes(sig);
    for (std::size_t c = 0; c < contexts.size(); ++c) {
        std::vector<Value> digits(n, 0);
        std::size_t idx = 0;
        do {
            for (std::size_t y = 0; y < n; ++y) {
                Value v = fn(y, c, digits);
                if (v >= sig.domain_size(y)) throw DomainError("equation of " + sig.name(y) + " left its domain");
                t->table[c * n + y][idx] = v;
            }
            ++idx;
        } while (next_digits(digits, radix));
    }
    compute_dependencies(sig, *t);
    auto equations = synthesize_rules(sig, contexts.size(), *t);
    CausalModel m(std::move(sig), std::move(contexts), std::move(equations), std::move(t));
    m.validate();
    return m;
}

std::size_t CausalModel::context_index(std::string_view id) const {
    for (std::size_t c = 0; c < contexts_.size(); ++c)
        if (contexts_[c] == id) return c;
    throw UnknownContext(std::string(id));
}

Value CausalModel::evaluate(std::size_t var, std::size_t ctx, std::span<const Value> full) const {
    return evaluate(var, ctx, full_index(full, tables_->strides));
}

bool CausalModel::operator==(const CausalModel& other) const {
    return sig_ == other.sig_ && contexts_ == other.contexts_ &&
           (tables_ == other.tables_ || tables_->table == other.tables_->table);
}

CausalModel intervene(const CausalModel& m, const Assignment& x) {
    const auto& sig = m.signature();
    if (x.width() != sig.size()) throw SignatureMismatch("intervention width does not match the signature");
    auto equations = m.equations();
    auto tables = std::make_shared<CausalModel::Tables>(*m.tables_);
    const std::size_t n = sig.size();
    for (std::size_t var : x.variables().members()) {
        if (x.at(var) >= sig.domain_size(var))
            throw DomainError("intervention value outside the domain of " + sig.name(var));
        equations[var] = Equation{{}, x.at(var)};
        for (std::size_t c = 0; c < m.contexts().size(); ++c) {
            std::fill(tables->table[c * n + var].begin(), tables->table[c * n + var].end(), x.at(var));
            tables->deps[c * n + var] = VarSet{};
        }
    }
    return CausalModel(sig, m.contexts(), std::move(equations), std::move(tables));
}

// ---------------------------------------------------------------------------
// Solving

namespace {

// Counts fixed points of [fixed]T at ctx, stopping once `limit` is reached.
// Variables whose (context-specific) dependencies are all determined are
// forced; the remainder is enumerated.
std::size_t count_fixed_points(const CausalModel& m, const Assignment& fixed, std::size_t ctx, std::size_t limit,
                               std::vector<Value>* first) {
    const std::size_t n = m.variables();
    std::vector<Value> cur(n, 0);
    VarSet known = fixed.variables();
    for (std::size_t i : known.members()) cur[i] = fixed.at(i);
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (known.contains(i) || !m.dependencies(i, ctx).subset_of(known)) continue;
            cur[i] = m.evaluate(i, ctx, std::span<const Value>(cur));
            known |= VarSet::single(i);
            progress = true;
        }
    }
    const auto unknown = (VarSet::all(n) - known).members();
    std::vector<std::size_t> radix;
    for (auto u : unknown) radix.push_back(m.signature().domain_size(u));
    std::vector<Value> digits(unknown.size(), 0);
    std::size_t count = 0;
    do {
        for (std::size_t k = 0; k < unknown.size(); ++k) cur[unknown[k]] = digits[k];
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) idx += cur[i] * m.stride(i);
        bool ok = std::all_of(unknown.begin(), unknown.end(), [&](std::size_t u) { return m.evaluate(u, ctx, idx) == cur[u]; });
        if (ok) {
            if (count == 0 && first) *first = cur;
            if (++count >= limit) break;
        }
    } while (next_digits(digits, radix));
    return count;
}

SolveResult make_result(std::size_t count, const std::vector<Value>& first) {
    SolveResult r;
    r.count = count;
    if (count == 0) {
        r.kind = SolveResult::Kind::None;
    } else if (count == 1) {
        r.kind = SolveResult::Kind::Unique;
        r.solution = Assignment(first.size());
        for (std::size_t i = 0; i < first.size(); ++i) r.solution.set(i, first[i]);
    } else {
        r.kind = SolveResult::Kind::Multiple;
    }
    return r;
}

unsigned effective_jobs(unsigned jobs, std::size_t work) {
    if (jobs <= 1 || work <= 1) return 1;
    return static_cast<unsigned>(std::min<std::size_t>(jobs, work));
}

} // namespace

SolveResult solve_intervened(const CausalModel& m, const Assignment& fixed, std::size_t ctx) {
    if (ctx >= m.contexts().size()) throw UnknownContext("#" + std::to_string(ctx));
    if (fixed.width() != m.variables()) throw SignatureMismatch("intervention width does not match the signature");
    std::vector<Value> first;
    const std::size_t count = count_fixed_points(m, fixed, ctx, static_cast<std::size_t>(-1), &first);
    return make_result(count, first);
}

SolveResult solve(const CausalModel& m, std::size_t context) {
    return solve_intervened(m, Assignment(m.variables()), context);
}

SolveResult solve(const CausalModel& m, std::string_view context) { return solve(m, m.context_index(context)); }

Assignment potential_response(const CausalModel& m, const Assignment& x, VarSet targets, std::size_t context) {
    auto r = solve_intervened(m, x, context);
    if (r.kind != SolveResult::Kind::Unique)
        throw NotUnique("intervened system has " + std::string(r.kind == SolveResult::Kind::None ? "no" : "several") +
                        " solutions at context '" + m.contexts()[context] + "'");
    return r.solution.restricted(targets);
}

Assignment potential_response(const CausalModel& m, const Assignment& x, VarSet targets, std::string_view context) {
    return potential_response(m, x, targets, m.context_index(context));
}

ResponseTable::ResponseTable(const CausalModel& m, unsigned jobs) : model_(m), n_(m.variables()), istride_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
        istride_[i] = interventions_;
        interventions_ *= m.signature().domain_size(i) + 1;
    }
    const std::size_t contexts = m.contexts().size();
    data_.assign(contexts * interventions_ * n_, 0);

    std::vector<std::size_t> radix(n_);
    for (std::size_t i = 0; i < n_; ++i) radix[i] = m.signature().domain_size(i) + 1;

    auto fill_context = [&](std::size_t ctx) -> bool {
        std::vector<Value> digits(n_, 0);
        std::vector<Value> solution;
        std::size_t idx = 0;
        do {
            Assignment fixed(n_);
            for (std::size_t i = 0; i < n_; ++i)
                if (digits[i] != 0) fixed.set(i, static_cast<Value>(digits[i] - 1));
            if (count_fixed_points(m, fixed, ctx, 2, &solution) != 1) return false;
            std::copy(solution.begin(), solution.end(), data_.begin() + static_cast<std::ptrdiff_t>((ctx * interventions_ + idx) * n_));
            ++idx;
        } while (next_digits(digits, radix));
        return true;
    };

    const unsigned workers = effective_jobs(jobs, contexts);
    std::vector<char> ok(contexts, 1);
    if (workers == 1) {
        for (std::size_t c = 0; c < contexts; ++c) {
            if (!fill_context(c)) throw NotUniq("model is not in T_uniq: context '" + m.contexts()[c] + "' has an intervention without a unique solution");
        }
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < contexts; c += workers) ok[c] = fill_context(c) ? 1 : 0;
        });
    }
    for (auto& t : pool) t.join();
    for (std::size_t c = 0; c < contexts; ++c)
        if (!ok[c]) throw NotUniq("model is not in T_uniq: context '" + m.contexts()[c] + "' has an intervention without a unique solution");
}

std::size_t ResponseTable::encode(const Assignment& x) const {
    std::size_t idx = 0;
    for (std::size_t i : x.variables().members()) idx += offset(i, x.at(i));
    return idx;
}

std::vector<std::size_t> ResponseTable::valuations(VarSet vars) const {
    std::vector<std::size_t> out{0};
    for (std::size_t var : vars.members()) {
        std::vector<std::size_t> next;
        const std::size_t d = model_.signature().domain_size(var);
        next.reserve(out.size() * d);
        for (std::size_t base : out)
            for (std::size_t v = 0; v < d; ++v) next.push_back(base + offset(var, static_cast<Value>(v)));
        out = std::move(next);
    }
    return out;
}

bool check_uniq(const CausalModel& m, unsigned jobs) {
    try {
        ResponseTable table(m, jobs);
        return true;
    } catch (const NotUniq&) {
        return false;
    }
}

Digraph semantic_graph(const CausalModel& m, std::optional<std::size_t> ctx) {
    const std::size_t n = m.variables();
    Digraph g(n);
    auto add_context = [&](std::size_t c) {
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t x : m.dependencies(y, c).members()) g.add_edge(x, y);
    };
    if (ctx) {
        if (*ctx >= m.contexts().size()) throw UnknownContext("#" + std::to_string(*ctx));
        add_context(*ctx);
    } else {
        for (std::size_t c = 0; c < m.contexts().size(); ++c) add_context(c);
    }
    return g;
}

ModelClass classify(const CausalModel& m, unsigned jobs) {
    if (!check_uniq(m, jobs)) return ModelClass::NotUniq;
    if (semantic_graph(m).acyclic()) return ModelClass::StrongRecursive;
    for (std::size_t c = 0; c < m.contexts().size(); ++c)
        if (!semantic_graph(m, c).acyclic()) return ModelClass::UniqOnly;
    return ModelClass::Recursive;
}

std::string to_string(ModelClass c) {
    switch (c) {
    case ModelClass::NotUniq: return "not-uniq";
    case ModelClass::UniqOnly: return "uniq";
    case ModelClass::Recursive: return "recursive";
    case ModelClass::StrongRecursive: return "strong-recursive";
    }
    return "?";
}

CausalModel direct_sum(std::span<const CausalModel> models) {
    if (models.empty()) throw PreconditionError("direct sum of an empty list");
    const Signature& sig = models.front().signature();
    for (const auto& m : models)
        if (!(m.signature() == sig)) throw SignatureMismatch("direct sum summands must share a signature");
    std::size_t total = 0;
    for (const auto& m : models) total += m.contexts().size();
    auto t = CausalModel::blank_tables(sig, total);
    std::vector<std::string> contexts;
    const std::size_t n = sig.size();
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto& m = models[i];
        for (std::size_t c = 0; c < m.contexts().size(); ++c) {
            const std::size_t target = contexts.size();
            contexts.push_back(std::to_string(i + 1) + ":" + m.contexts()[c]);
            for (std::size_t y = 0; y < n; ++y) {
                t->table[target * n + y] = m.tables_->table[c * n + y];
                t->deps[target * n + y] = m.tables_->deps[c * n + y];
            }
        }
    }
    auto equations = CausalModel::synthesize_rules(sig, total, *t);
    return CausalModel(sig, std::move(contexts), std::move(equations), std::move(t));
}

} // namespace relcalc
