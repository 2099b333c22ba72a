#pragma once

// Signatures, variable sets, relevance atoms and the formula language built
// on top of them.
//
// Concrete syntax:
//
//   irr(X; Y; Z)     the atom "X has no influence on Y once Z is fixed"
//   !f  f & g  f | g  f => g
//
// with precedence ! > & > | > => and => associating to the right. Lists are
// comma separated and the third list may be empty ("irr(X4; X3; )").

#include <compare>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relcalc {

inline constexpr std::size_t kDefaultMaxVariables = 6;
inline constexpr std::size_t kHardMaxVariables = 12;

// A set of signature variables, stored as a bitmask over signature indices.
class VarSet {
public:
    constexpr VarSet() = default;
    constexpr explicit VarSet(std::uint32_t bits) : bits_(bits) {}

    static constexpr VarSet single(std::size_t index) { return VarSet(std::uint32_t{1} << index); }
    static constexpr VarSet all(std::size_t n) { return VarSet((std::uint32_t{1} << n) - 1); }

    [[nodiscard]] constexpr std::uint32_t bits() const { return bits_; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr std::size_t size() const { return static_cast<std::size_t>(__builtin_popcount(bits_)); }
    [[nodiscard]] constexpr bool contains(std::size_t index) const { return (bits_ >> index) & 1U; }
    [[nodiscard]] constexpr bool subset_of(VarSet other) const { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] constexpr bool disjoint(VarSet other) const { return (bits_ & other.bits_) == 0; }
    [[nodiscard]] constexpr VarSet complement(std::size_t n) const { return VarSet(~bits_ & all(n).bits_); }
    // Smallest member; only meaningful on non-empty sets.
    [[nodiscard]] constexpr std::size_t first() const { return static_cast<std::size_t>(__builtin_ctz(bits_)); }

    [[nodiscard]] std::vector<std::size_t> members() const;

    constexpr VarSet operator|(VarSet o) const { return VarSet(bits_ | o.bits_); }
    constexpr VarSet operator&(VarSet o) const { return VarSet(bits_ & o.bits_); }
    constexpr VarSet operator-(VarSet o) const { return VarSet(bits_ & ~o.bits_); }
    constexpr VarSet& operator|=(VarSet o) { bits_ |= o.bits_; return *this; }

    constexpr auto operator<=>(const VarSet&) const = default;

private:
    std::uint32_t bits_ = 0;
};

// Calls fn(VarSet) for every subset of `set`, in increasing bitmask order.
template <typename Fn>
void for_each_subset(VarSet set, Fn&& fn) {
    const std::uint32_t mask = set.bits();
    std::uint32_t sub = 0;
    while (true) {
        fn(VarSet(sub));
        if (sub == mask) break;
        sub = (sub - mask) & mask;
    }
}

// The fixed, finite set of endogenous variables together with their domains.
class Signature {
public:
    Signature() = default;
    // Variables with the placeholder binary domain {"0","1"}; enough for the
    // calculus, which never looks at domains.
    explicit Signature(std::vector<std::string> names, std::size_t max_variables = kDefaultMaxVariables);
    Signature(std::vector<std::string> names, std::vector<std::vector<std::string>> domains,
              std::size_t max_variables = kDefaultMaxVariables);

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] const std::string& name(std::size_t i) const { return names_[i]; }
    [[nodiscard]] const std::vector<std::string>& domain(std::size_t i) const { return domains_[i]; }
    [[nodiscard]] std::size_t domain_size(std::size_t i) const { return domains_[i].size(); }
    [[nodiscard]] VarSet all() const { return VarSet::all(size()); }

    [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const;
    // Throws UnknownVariable.
    [[nodiscard]] std::size_t index_of(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_value(std::size_t var, std::string_view value) const;

    // "X1,X3" in signature order.
    [[nodiscard]] std::string render(VarSet set) const;

    // Same variable names in the same order (domains ignored).
    [[nodiscard]] bool same_variables(const Signature& other) const { return names_ == other.names_; }
    bool operator==(const Signature&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::string>> domains_;
};

// (x -/-> y | z): x, y non-empty, all three pairwise disjoint. Component sets
// are bitmasks, so set-equal atoms are structurally equal.
class Atom {
public:
    // Throws MalformedAtom.
    Atom(VarSet x, VarSet y, VarSet z);

    [[nodiscard]] VarSet x() const { return x_; }
    [[nodiscard]] VarSet y() const { return y_; }
    [[nodiscard]] VarSet z() const { return z_; }
    [[nodiscard]] VarSet mentioned() const { return x_ | y_ | z_; }

    static bool valid(VarSet x, VarSet y, VarSet z);

    auto operator<=>(const Atom&) const = default;

private:
    VarSet x_, y_, z_;
};

struct Literal {
    Atom atom;
    bool positive = true;

    [[nodiscard]] Literal negated() const { return {atom, !positive}; }
    auto operator<=>(const Literal&) const = default;
};

class Formula {
public:
    enum class Kind { Atom, Not, And, Or, Implies };

    static Formula atom(const Atom& a);
    static Formula literal(const Literal& l);
    static Formula negation(Formula f);
    static Formula conjunction(Formula lhs, Formula rhs);
    static Formula disjunction(Formula lhs, Formula rhs);
    static Formula implication(Formula lhs, Formula rhs);

    [[nodiscard]] Kind kind() const;
    // Valid for Kind::Atom.
    [[nodiscard]] const Atom& atom_value() const;
    // Operand of Not, or left operand of a binary node.
    [[nodiscard]] const Formula& lhs() const;
    [[nodiscard]] const Formula& rhs() const;

    // The literal this formula denotes, if it is an atom or a negated atom.
    [[nodiscard]] std::optional<Literal> as_literal() const;

    // Evaluates under an atom valuation.
    template <typename Valuation>
    [[nodiscard]] bool evaluate(Valuation&& value) const;

    // Union of all variables mentioned by embedded atoms.
    [[nodiscard]] VarSet variables() const;

    bool operator==(const Formula& other) const;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind;
    std::optional<Atom> atom;
    std::optional<Formula> lhs;
    std::optional<Formula> rhs;
};

template <typename Valuation>
bool Formula::evaluate(Valuation&& value) const {
    switch (node_->kind) {
    case Kind::Atom: return value(*node_->atom);
    case Kind::Not: return !node_->lhs->evaluate(value);
    case Kind::And: return node_->lhs->evaluate(value) && node_->rhs->evaluate(value);
    case Kind::Or: return node_->lhs->evaluate(value) || node_->rhs->evaluate(value);
    case Kind::Implies: return !node_->lhs->evaluate(value) || node_->rhs->evaluate(value);
    }
    return false;
}

// Parser and printer. render(parse(s)) is canonical: signature-ordered lists,
// fully parenthesised binary connectives.
Formula parse_formula(std::string_view text, const Signature& sig);
std::string render_formula(const Formula& f, const Signature& sig);
std::string render_atom(const Atom& a, const Signature& sig);
std::string render_literal(const Literal& l, const Signature& sig);

// Formula-set text: one formula per line, '#' starts a comment.
std::vector<Formula> parse_formula_set(std::string_view text, const Signature& sig);
std::vector<Formula> read_formula_set(const std::filesystem::path& path, const Signature& sig);

// Variable names referenced in formula text, in order of first appearance.
// Used to infer a signature when none is given.
std::vector<std::string> scan_variable_names(std::string_view text);

// Fixed enumeration of all atoms over n variables: lexicographic by the
// (x, y, z) bitmasks. Shared, immutable, cached per n.
class AtomSpace {
public:
    static const AtomSpace& of(std::size_t n);

    [[nodiscard]] std::size_t variables() const { return n_; }
    [[nodiscard]] std::size_t size() const { return atoms_.size(); }
    [[nodiscard]] const Atom& operator[](std::size_t i) const { return atoms_[i]; }
    [[nodiscard]] std::span<const Atom> atoms() const { return atoms_; }
    [[nodiscard]] std::size_t index(const Atom& a) const;
    // Index of ({from} -/-> {to} | rest), whose falsity is exactly the edge
    // from -> to in the syntactic graph.
    [[nodiscard]] std::size_t edge_atom(std::size_t from, std::size_t to) const;

    // 4^n - 2*3^n + 2^n
    static std::size_t closed_form_count(std::size_t n);

private:
    explicit AtomSpace(std::size_t n);
    [[nodiscard]] std::size_t code(const Atom& a) const;

    std::size_t n_;
    std::vector<Atom> atoms_;
    std::vector<std::int32_t> index_by_code_;
};

std::vector<Atom> enumerate_atoms(const Signature& sig);

} // namespace relcalc
