#include "relcalc/language.hpp"

#include "relcalc/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>

namespace relcalc {

std::vector<std::size_t> VarSet::members() const {
    std::vector<std::size_t> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(__builtin_ctz(b)));
    return out;
}

namespace {

void check_names(const std::vector<std::string>& names, std::size_t max_variables) {
    if (max_variables > kHardMaxVariables)
        throw SchemaError("variable cap " + std::to_string(max_variables) + " exceeds the hard limit of " +
                          std::to_string(kHardMaxVariables));
    if (names.size() > max_variables)
        throw SchemaError("signature has " + std::to_string(names.size()) + " variables; the cap is " +
                          std::to_string(max_variables));
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw SchemaError("variable names must be non-empty");
        const bool lexical = (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_') &&
                             std::all_of(n.begin(), n.end(), [](char c) {
                                 return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
                             });
        if (!lexical || n == "irr") throw SchemaError("'" + n + "' is not a valid variable name");
        if (!seen.insert(n).second) throw SchemaError("duplicate variable name '" + n + "'");
    }
}

} // namespace

Signature::Signature(std::vector<std::string> names, std::size_t max_variables)
    : names_(std::move(names)), domains_(names_.size(), std::vector<std::string>{"0", "1"}) {
    check_names(names_, max_variables);
}

Signature::Signature(std::vector<std::string> names, std::vector<std::vector<std::string>> domains,
                     std::size_t max_variables)
    : names_(std::move(names)), domains_(std::move(domains)) {
    check_names(names_, max_variables);
    if (domains_.size() != names_.size()) throw SchemaError("one domain per variable is required");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (domains_[i].empty()) throw SchemaError("domain of '" + names_[i] + "' is empty");
        if (domains_[i].size() > 255) throw SchemaError("domain of '" + names_[i] + "' has more than 255 values");
        std::set<std::string> seen(domains_[i].begin(), domains_[i].end());
        if (seen.size() != domains_[i].size())
            throw SchemaError("domain of '" + names_[i] + "' has duplicate values");
    }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw UnknownVariable(std::string(name));
}

std::optional<std::size_t> Signature::find_value(std::size_t var, std::string_view value) const {
    const auto& d = domains_[var];
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] == value) return i;
    return std::nullopt;
}

std::string Signature::render(VarSet set) const {
    std::string out;
    for (std::size_t i : set.members()) {
        if (!out.empty()) out += ',';
        out += names_[i];
    }
    return out;
}

bool Atom::valid(VarSet x, VarSet y, VarSet z) {
    return !x.empty() && !y.empty() && x.disjoint(y) && x.disjoint(z) && y.disjoint(z);
}

Atom::Atom(VarSet x, VarSet y, VarSet z) : x_(x), y_(y), z_(z) {
    if (x.empty()) throw MalformedAtom("first component of an atom must be non-empty");
    if (y.empty()) throw MalformedAtom("second component of an atom must be non-empty");
    if (!x.disjoint(y) || !x.disjoint(z) || !y.disjoint(z))
        throw MalformedAtom("components of an atom must be pairwise disjoint");
}

Formula Formula::atom(const Atom& a) {
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, a, std::nullopt, std::nullopt}));
}

Formula Formula::literal(const Literal& l) {
    return l.positive ? atom(l.atom) : negation(atom(l.atom));
}

Formula Formula::negation(Formula f) {
    return Formula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, std::move(f), std::nullopt}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::And, std::nullopt, std::move(lhs), std::move(rhs)}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::Or, std::nullopt, std::move(lhs), std::move(rhs)}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::Implies, std::nullopt, std::move(lhs), std::move(rhs)}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Atom& Formula::atom_value() const { return *node_->atom; }
const Formula& Formula::lhs() const { return *node_->lhs; }
const Formula& Formula::rhs() const { return *node_->rhs; }

std::optional<Literal> Formula::as_literal() const {
    if (node_->kind == Kind::Atom) return Literal{*node_->atom, true};
    if (node_->kind == Kind::Not) {
        // Double negation normalizes.
        if (auto inner = node_->lhs->as_literal()) return inner->negated();
    }
    return std::nullopt;
}

VarSet Formula::variables() const {
    switch (node_->kind) {
    case Kind::Atom: return node_->atom->mentioned();
    case Kind::Not: return node_->lhs->variables();
    default: return node_->lhs->variables() | node_->rhs->variables();
    }
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (node_->kind != other.node_->kind) return false;
    switch (node_->kind) {
    case Kind::Atom: return *node_->atom == *other.node_->atom;
    case Kind::Not: return *node_->lhs == *other.node_->lhs;
    default: return *node_->lhs == *other.node_->lhs && *node_->rhs == *other.node_->rhs;
    }
}

std::string render_atom(const Atom& a, const Signature& sig) {
    return "irr(" + sig.render(a.x()) + "; " + sig.render(a.y()) + "; " + sig.render(a.z()) + ")";
}

std::string render_literal(const Literal& l, const Signature& sig) {
    return (l.positive ? "" : "!") + render_atom(l.atom, sig);
}

std::string render_formula(const Formula& f, const Signature& sig) {
    switch (f.kind()) {
    case Formula::Kind::Atom: return render_atom(f.atom_value(), sig);
    case Formula::Kind::Not: return "!" + render_formula(f.lhs(), sig);
    case Formula::Kind::And: return "(" + render_formula(f.lhs(), sig) + " & " + render_formula(f.rhs(), sig) + ")";
    case Formula::Kind::Or: return "(" + render_formula(f.lhs(), sig) + " | " + render_formula(f.rhs(), sig) + ")";
    case Formula::Kind::Implies:
        return "(" + render_formula(f.lhs(), sig) + " => " + render_formula(f.rhs(), sig) + ")";
    }
    return {};
}

// ---------------------------------------------------------------------------
// AtomSpace

AtomSpace::AtomSpace(std::size_t n) : n_(n) {
    std::size_t codes = 1;
    for (std::size_t i = 0; i < n; ++i) codes *= 4;
    index_by_code_.assign(codes, -1);
    const VarSet everything = VarSet::all(n);
    for (std::uint32_t xb = 1; xb <= everything.bits(); ++xb) {
        const VarSet x(xb);
        const VarSet rest_x = everything - x;
        for (std::uint32_t yb = 1; yb <= rest_x.bits(); ++yb) {
            const VarSet y(yb);
            if (!y.subset_of(rest_x)) continue;
            for_each_subset(rest_x - y, [&](VarSet z) {
                Atom a(x, y, z);
                index_by_code_[code(a)] = static_cast<std::int32_t>(atoms_.size());
                atoms_.push_back(a);
            });
        }
    }
    // for_each_subset yields z in increasing order, and the outer loops are
    // increasing in x then y, so atoms_ is already sorted.
}

std::size_t AtomSpace::code(const Atom& a) const {
    std::size_t c = 0;
    for (std::size_t i = n_; i-- > 0;) {
        std::size_t digit = a.x().contains(i) ? 1 : a.y().contains(i) ? 2 : a.z().contains(i) ? 3 : 0;
        c = c * 4 + digit;
    }
    return c;
}

const AtomSpace& AtomSpace::of(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<AtomSpace>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot.reset(new AtomSpace(n));
    return *slot;
}

std::size_t AtomSpace::index(const Atom& a) const {
    if (!a.mentioned().subset_of(VarSet::all(n_))) throw SignatureMismatch("atom mentions variables outside the signature");
    return static_cast<std::size_t>(index_by_code_[code(a)]);
}

std::size_t AtomSpace::edge_atom(std::size_t from, std::size_t to) const {
    const VarSet x = VarSet::single(from), y = VarSet::single(to);
    return index(Atom(x, y, VarSet::all(n_) - x - y));
}

std::size_t AtomSpace::closed_form_count(std::size_t n) {
    std::size_t p4 = 1, p3 = 1, p2 = 1;
    for (std::size_t i = 0; i < n; ++i) {
        p4 *= 4;
        p3 *= 3;
        p2 *= 2;
    }
    return p4 - 2 * p3 + p2;
}

std::vector<Atom> enumerate_atoms(const Signature& sig) {
    auto span = AtomSpace::of(sig.size()).atoms();
    return {span.begin(), span.end()};
}

} // namespace relcalc
