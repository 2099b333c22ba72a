#include "relcalc/identify.hpp"

#include "relcalc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace relcalc {

Digraph identified_graph(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys) {
    auto canonical = consistent(sig, gamma, sys);
    if (!canonical) throw Inconsistent("the theory is " + to_string(sys) + "-inconsistent");
    const std::size_t n = sig.size();
    const AtomSpace& space = AtomSpace::of(n);
    const Digraph candidate = syntactic_graph(*canonical);
    Digraph out(n);
    std::vector<Formula> premises(gamma.begin(), gamma.end());
    premises.push_back(Formula::atom(space[0]));
    for (auto [x, y] : candidate.edges()) {
        // The edge is missing from some extension iff its atom can be true.
        premises.back() = Formula::atom(space[space.edge_atom(x, y)]);
        if (!consistent(sig, premises, sys)) out.add_edge(x, y);
    }
    return out;
}

Digraph identified_graph_exhaustive(const Signature& sig, std::span<const Formula> gamma, AxiomSystem sys,
                                    std::size_t limit) {
    ExtensionEnumerator en(sig, gamma, sys);
    std::optional<Digraph> out;
    std::size_t count = 0;
    while (auto e = en.next()) {
        if (++count > limit)
            throw TooManyExtensions("more than " + std::to_string(limit) + " extensions; raise --max-extensions");
        Digraph g = syntactic_graph(*e);
        out = out ? out->intersected(g) : g;
    }
    if (!out) throw Inconsistent("the theory is " + to_string(sys) + "-inconsistent");
    return *out;
}

// ---------------------------------------------------------------------------

std::string PonderedCost::render() const {
    if (is_infinite()) return "inf";
    if (value_->denominator() == 1) return std::to_string(value_->numerator());
    return std::to_string(value_->numerator()) + "/" + std::to_string(value_->denominator());
}

std::strong_ordering PonderedCost::operator<=>(const PonderedCost& other) const {
    if (is_infinite() && other.is_infinite()) return std::strong_ordering::equal;
    if (is_infinite()) return std::strong_ordering::greater;
    if (other.is_infinite()) return std::strong_ordering::less;
    if (*value_ < *other.value_) return std::strong_ordering::less;
    if (*value_ == *other.value_) return std::strong_ordering::equal;
    return std::strong_ordering::greater;
}

PonderedCost pondered_cost(const Rational& cost, std::size_t new_edges) {
    if (new_edges == 0) return PonderedCost::infinite();
    return PonderedCost(cost / static_cast<std::int64_t>(new_edges));
}

std::vector<RankedOption> rank_options(const Signature& sig, std::span<const Formula> gamma,
                                       std::span<const InfoOption> options, AxiomSystem sys) {
    const Digraph base = identified_graph(sig, gamma, sys);
    std::vector<RankedOption> out;
    for (std::size_t i = 0; i < options.size(); ++i) {
        const auto& opt = options[i];
        std::set<std::string> listed;
        for (const auto& f : opt.gamma) listed.insert(render_formula(f, sig));
        for (const auto& f : gamma)
            if (!listed.count(render_formula(f, sig)))
                throw PreconditionError("option " + std::to_string(i + 1) + " does not contain " + render_formula(f, sig));
        Digraph g(sig.size());
        try {
            g = identified_graph(sig, opt.gamma, sys);
        } catch (const Inconsistent&) {
            throw Inconsistent("option " + std::to_string(i + 1) + " is " + to_string(sys) + "-inconsistent");
        }
        const std::size_t fresh = g.minus(base).edge_count();
        out.push_back(RankedOption{i, fresh, pondered_cost(opt.cost, fresh)});
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedOption& a, const RankedOption& b) { return a.cost < b.cost; });
    return out;
}

namespace {

// Exact value of a finite decimal literal such as "2.5" or "1e-3".
Rational decimal_to_rational(std::string_view text) {
    std::int64_t mantissa = 0;
    std::int64_t exponent = 0;
    bool negative = false;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    bool fraction = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        if (text[i] == '.') {
            fraction = true;
            continue;
        }
        mantissa = mantissa * 10 + (text[i] - '0');
        if (fraction) --exponent;
    }
    if (i < text.size()) {
        std::int64_t e = 0;
        std::from_chars(text.data() + i + 1 + (text[i + 1] == '+' ? 1 : 0), text.data() + text.size(), e);
        exponent += e;
    }
    Rational r(negative ? -mantissa : mantissa);
    for (; exponent > 0; --exponent) r *= 10;
    for (; exponent < 0; ++exponent) r /= 10;
    return r;
}

Rational json_cost(const nlohmann::json& v, std::size_t index) {
    const std::string where = "option " + std::to_string(index + 1);
    Rational r;
    if (v.is_number_unsigned()) r = Rational(static_cast<std::int64_t>(v.get<std::uint64_t>()));
    else if (v.is_number_integer()) r = Rational(v.get<std::int64_t>());
    else if (v.is_number_float()) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
        r = decimal_to_rational(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)));
    } else {
        throw SchemaError(where + ": cost must be a number");
    }
    if (r < 0) throw SchemaError(where + ": cost must be non-negative");
    return r;
}

nlohmann::json parse_options_document(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw SchemaError("options: expected an array");
    for (const auto& item : doc) {
        if (!item.is_object()) throw SchemaError("options: every option must be an object");
        for (const auto& [key, _] : item.items())
            if (key != "formulas" && key != "cost") throw SchemaError("options: unknown field '" + key + "'");
        if (!item.contains("formulas") || !item["formulas"].is_array()) throw SchemaError("options: 'formulas' must be an array");
        for (const auto& f : item["formulas"])
            if (!f.is_string()) throw SchemaError("options: formulas must be strings");
        if (!item.contains("cost")) throw SchemaError("options: missing 'cost'");
    }
    return doc;
}

} // namespace

std::vector<InfoOption> parse_options(std::string_view json_text, const Signature& sig) {
    const auto doc = parse_options_document(json_text);
    std::vector<InfoOption> out;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        InfoOption opt;
        for (const auto& f : doc[i]["formulas"]) opt.gamma.push_back(parse_formula(f.get<std::string>(), sig));
        opt.cost = json_cost(doc[i]["cost"], i);
        out.push_back(std::move(opt));
    }
    return out;
}

std::vector<InfoOption> read_options(const std::filesystem::path& path, const Signature& sig) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open options file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_options(buf.str(), sig);
}

std::vector<std::string> option_variable_names(std::string_view json_text) {
    std::vector<std::string> out;
    for (const auto& item : parse_options_document(json_text))
        for (const auto& f : item["formulas"])
            for (auto& name : scan_variable_names(f.get<std::string>()))
                if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(Recursiveness r) {
    return r == Recursiveness::NonRecursive ? "non-recursive" : "possibly-recursive";
}

Recursiveness recursiveness_test(const Signature& sig, std::span<const Formula> gamma) {
    return consistent(sig, gamma, AxiomSystem::Rec) ? Recursiveness::PossiblyRecursive : Recursiveness::NonRecursive;
}

std::vector<PathConstraint> path_constraints(std::span<const Formula> gamma) {
    std::vector<PathConstraint> out;
    for (const auto& f : gamma) {
        auto lit = f.as_literal();
        if (lit && !lit->positive) out.push_back(PathConstraint{lit->atom.x(), lit->atom.y(), lit->atom.z()});
    }
    return out;
}

std::string render_path_constraints(std::span<const PathConstraint> constraints, const Signature& sig) {
    using ojson = nlohmann::ordered_json;
    auto names = [&](VarSet s) {
        ojson a = ojson::array();
        for (auto v : s.members()) a.push_back(sig.name(v));
        return a;
    };
    ojson doc = ojson::array();
    for (const auto& c : constraints) doc.push_back(ojson{{"from", names(c.from)}, {"to", names(c.to)}, {"avoid", names(c.avoid)}});
    return doc.dump(2) + "\n";
}

} // namespace relcalc
