#include "relcalc/cli.hpp"

#include "relcalc/calculus.hpp"
#include "relcalc/error.hpp"
#include "relcalc/fragments.hpp"
#include "relcalc/generator.hpp"
#include "relcalc/identify.hpp"
#include "relcalc/model_io.hpp"
#include "relcalc/semantics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

namespace relcalc {

using ojson = nlohmann::ordered_json;

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            std::string_view na(a.data() + i, ie - i), nb(b.data() + j, je - j);
            while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
            while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
            if (na.size() != nb.size()) return na.size() < nb.size();
            if (na != nb) return na < nb;
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
    return a < b;
}

namespace {

// Exit status carried out of a subcommand.
enum Status : int { kYes = 0, kNo = 1, kUsage = 2 };

struct Invocation {
    std::string model, gamma, formula, options, vars, context, doing, targets, anchor, check, output, atom;
    std::string system = "srec";
    std::string kind = "srec";
    bool emit_extension = false, dot = false, json = false, exhaustive = false, constraints = false, literals = false;
    std::size_t max_extensions = 100000;
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;
    std::size_t variables = 3, domain = 2, contexts = 1;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_names(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

class Session {
public:
    Session(const Invocation& inv, std::ostream& out) : inv_(inv), out_(out) {}

    int eval();
    int theory();
    int respond();
    int classify_model();
    int consistent_cmd();
    int derive();
    int list_extensions();
    int graph();
    int path();
    int witness();
    int fragment();
    int identify();
    int rank();
    int rectest();
    int gen();

private:
    // Signature: --vars, else the model's, else every name mentioned by the
    // textual inputs in natural order.
    const Signature& signature() {
        if (sig_) return *sig_;
        if (!inv_.vars.empty()) {
            sig_ = Signature(split_names(inv_.vars));
        } else if (!inv_.model.empty()) {
            sig_ = model().signature();
        } else {
            std::vector<std::string> names;
            auto add = [&](const std::vector<std::string>& more) {
                for (const auto& n : more)
                    if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
            };
            if (!inv_.gamma.empty()) add(scan_variable_names(gamma_text()));
            add(scan_variable_names(inv_.formula));
            add(scan_variable_names(inv_.anchor));
            add(scan_variable_names(inv_.atom));
            if (!inv_.check.empty()) add(scan_names_in_fragment(slurp(inv_.check)));
            if (!inv_.options.empty()) add(option_variable_names(slurp(inv_.options)));
            std::sort(names.begin(), names.end(), natural_less);
            if (names.empty()) throw SchemaError("no variables: pass --vars");
            sig_ = Signature(names);
        }
        return *sig_;
    }

    static std::vector<std::string> scan_names_in_fragment(const std::string& text) {
        std::string cleaned = text;
        std::replace(cleaned.begin(), cleaned.end(), '-', ' ');
        std::replace(cleaned.begin(), cleaned.end(), '>', ' ');
        auto colon = cleaned.find("anchor:");
        if (colon != std::string::npos) cleaned.replace(colon, 7, "       ");
        return scan_variable_names(cleaned);
    }

    const CausalModel& model() {
        if (!model_) {
            if (inv_.model.empty()) throw SchemaError("--model is required");
            model_ = read_model(inv_.model);
        }
        return *model_;
    }

    const std::string& gamma_text() {
        if (!gamma_text_) {
            if (inv_.gamma.empty()) throw SchemaError("--gamma is required");
            gamma_text_ = slurp(inv_.gamma);
        }
        return *gamma_text_;
    }

    std::vector<Formula> gamma() { return parse_formula_set(gamma_text(), signature()); }

    Formula formula() {
        if (inv_.formula.empty()) throw SchemaError("--formula is required");
        return parse_formula(inv_.formula, signature());
    }

    Atom atom_arg(const std::string& text, const char* flag) {
        if (text.empty()) throw SchemaError(std::string(flag) + " is required");
        auto lit = parse_formula(text, signature()).as_literal();
        if (!lit || !lit->positive) throw SchemaError(std::string(flag) + " must be a single atom irr(X; Y; Z)");
        return lit->atom;
    }

    AxiomSystem system() { return parse_system(inv_.system); }

    Extension canonical_extension(AxiomSystem sys) {
        auto g = gamma();
        auto e = consistent(signature(), g, sys);
        if (!e) throw Inconsistent("the theory is " + to_string(sys) + "-inconsistent");
        return *e;
    }

    void emit_graph(const Digraph& g) {
        if (inv_.json) {
            ojson edges = ojson::array();
            for (auto [a, b] : g.edges()) edges.push_back(ojson::array({signature().name(a), signature().name(b)}));
            out_ << ojson{{"edges", edges}}.dump(2) << "\n";
        } else {
            out_ << (inv_.dot ? g.render_dot(signature()) : g.render(signature()));
        }
    }

    static ojson literal_array(const Extension& e) {
        ojson a = ojson::array();
        for (const auto& l : e.literals()) a.push_back(render_literal(l, e.signature()));
        return a;
    }

    const Invocation& inv_;
    std::ostream& out_;
    std::optional<Signature> sig_;
    std::optional<CausalModel> model_;
    std::optional<std::string> gamma_text_;
};

int Session::eval() {
    const Formula f = formula();
    Evaluator ev(model(), inv_.jobs);
    const bool value = ev.satisfies(f);
    if (inv_.json) out_ << ojson{{"formula", render_formula(f, signature())}, {"value", value}}.dump(2) << "\n";
    else out_ << (value ? "true" : "false") << "\n";
    return value ? kYes : kNo;
}

int Session::theory() {
    const auto t = theory_literals(model(), inv_.jobs);
    if (inv_.json) {
        ojson atoms = ojson::array();
        for (std::size_t i = 0; i < t.size(); ++i)
            atoms.push_back(ojson{{"atom", render_atom(t.space()[i], signature())}, {"value", bool(t[i])}});
        out_ << ojson{{"atoms", atoms}}.dump(2) << "\n";
    } else {
        out_ << (inv_.literals ? t.render_literals() : t.render_verdicts());
    }
    return kYes;
}

int Session::respond() {
    const CausalModel& m = model();
    const Signature& sig = m.signature();
    const Assignment x = Assignment::parse(inv_.doing, sig);
    VarSet targets;
    if (inv_.targets.empty()) targets = sig.all() - x.variables();
    else
        for (const auto& name : split_names(inv_.targets)) targets |= VarSet::single(sig.index_of(name));
    std::vector<std::size_t> ctxs;
    if (inv_.context.empty())
        for (std::size_t c = 0; c < m.contexts().size(); ++c) ctxs.push_back(c);
    else ctxs.push_back(m.context_index(inv_.context));

    ojson doc = ojson::array();
    for (std::size_t c : ctxs) {
        const Assignment r = potential_response(m, x, targets, c);
        if (inv_.json) {
            ojson values = ojson::object();
            for (std::size_t v : targets.members()) values[sig.name(v)] = sig.domain(v)[r.at(v)];
            doc.push_back(ojson{{"context", m.contexts()[c]}, {"values", values}});
        } else {
            out_ << m.contexts()[c] << ": " << r.render(sig) << "\n";
        }
    }
    if (inv_.json) out_ << doc.dump(2) << "\n";
    return kYes;
}

int Session::classify_model() {
    const auto c = classify(model(), inv_.jobs);
    if (inv_.json) out_ << ojson{{"class", to_string(c)}}.dump(2) << "\n";
    else out_ << to_string(c) << "\n";
    return kYes;
}

int Session::consistent_cmd() {
    const AxiomSystem sys = system();
    auto g = gamma();
    auto e = consistent(signature(), g, sys);
    if (inv_.json) {
        ojson doc{{"system", to_string(sys)}, {"consistent", e.has_value()}};
        if (e && inv_.emit_extension) doc["extension"] = literal_array(*e);
        out_ << doc.dump(2) << "\n";
    } else {
        out_ << (e ? "consistent" : "inconsistent") << "\n";
        if (e && inv_.emit_extension) out_ << e->render_literals();
    }
    return e ? kYes : kNo;
}

int Session::derive() {
    const AxiomSystem sys = system();
    auto g = gamma();
    const Formula phi = formula();
    g.push_back(Formula::negation(phi));
    auto counter = consistent(signature(), g, sys);
    if (inv_.json) {
        ojson doc{{"system", to_string(sys)}, {"formula", render_formula(phi, signature())}, {"derivable", !counter}};
        if (counter && inv_.emit_extension) doc["countermodel_extension"] = literal_array(*counter);
        out_ << doc.dump(2) << "\n";
    } else {
        out_ << (counter ? "not derivable" : "derivable") << "\n";
        if (counter && inv_.emit_extension) out_ << counter->render_literals();
    }
    return counter ? kNo : kYes;
}

int Session::list_extensions() {
    const AxiomSystem sys = system();
    auto g = gamma();
    ExtensionEnumerator en(signature(), g, sys);
    std::vector<Extension> all;
    while (auto e = en.next()) {
        if (all.size() == inv_.max_extensions)
            throw TooManyExtensions("more than " + std::to_string(inv_.max_extensions) + " extensions; raise --max-extensions");
        all.push_back(std::move(*e));
    }
    if (inv_.json) {
        ojson doc = ojson::array();
        for (const auto& e : all) doc.push_back(literal_array(e));
        out_ << doc.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (i) out_ << "\n";
            out_ << "# extension " << i + 1 << "\n" << all[i].render_literals();
        }
    }
    return all.empty() ? kNo : kYes;
}

int Session::graph() {
    if (!inv_.model.empty()) {
        std::optional<std::size_t> ctx;
        if (!inv_.context.empty()) ctx = model().context_index(inv_.context);
        emit_graph(semantic_graph(model(), ctx));
    } else {
        emit_graph(syntactic_graph(canonical_extension(system())));
    }
    return kYes;
}

int Session::path() {
    const Atom a = atom_arg(inv_.atom, "--atom");
    if (a.x().size() != 1 || a.y().size() != 1) throw SchemaError("--atom must relate two single variables");
    const Extension e = canonical_extension(system());
    if (e.value(a)) throw PreconditionError("the atom is true in the extension; no path is required");
    const auto p = path_witness(e, a.x().first(), a.y().first(), a.z());
    if (inv_.json) {
        ojson arr = ojson::array();
        for (auto v : p) arr.push_back(signature().name(v));
        out_ << ojson{{"path", arr}}.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < p.size(); ++i) out_ << (i ? " -> " : "") << signature().name(p[i]);
        out_ << "\n";
    }
    return kYes;
}

int Session::witness() {
    auto g = gamma();
    const CausalModel m = witness_model(signature(), g, system());
    const std::string text = write_model(m);
    if (inv_.output.empty()) {
        out_ << text;
    } else {
        std::ofstream file(inv_.output);
        if (!file) throw SchemaError("cannot write '" + inv_.output + "'");
        file << text;
    }
    return kYes;
}

int Session::fragment() {
    if (inv_.check.empty() && inv_.anchor.empty()) throw SchemaError("one of --anchor or --check is required");
    const Extension e = canonical_extension(AxiomSystem::Srec);
    if (!inv_.check.empty()) {
        const Fragment f = parse_fragment(slurp(inv_.check), signature());
        const bool ok = is_fragment(f.graph, e, f.x, f.y, f.z);
        if (inv_.json) out_ << ojson{{"fragment", ok}}.dump(2) << "\n";
        else out_ << (ok ? "fragment" : "not a fragment") << "\n";
        return ok ? kYes : kNo;
    }
    const Atom a = atom_arg(inv_.anchor, "--anchor");
    if (a.x().size() != 1 || a.y().size() != 1) throw SchemaError("--anchor must relate two single variables");
    auto f = find_fragment(e, a.x().first(), a.y().first(), a.z());
    if (inv_.json) {
        ojson doc{{"found", f.has_value()}};
        if (f) {
            ojson edges = ojson::array();
            for (auto [x, y] : f->graph.edges()) edges.push_back(ojson::array({signature().name(x), signature().name(y)}));
            doc["edges"] = edges;
        }
        out_ << doc.dump(2) << "\n";
    } else {
        out_ << (f ? render_fragment(*f, signature()) : std::string("no fragment\n"));
    }
    return f ? kYes : kNo;
}

int Session::identify() {
    const AxiomSystem sys = system();
    if (sys == AxiomSystem::Uniq) throw SchemaError("identify needs --system srec or rec");
    auto g = gamma();
    if (inv_.constraints) {
        out_ << render_path_constraints(path_constraints(g), signature());
        return kYes;
    }
    const Digraph d = inv_.exhaustive ? identified_graph_exhaustive(signature(), g, sys, inv_.max_extensions)
                                      : identified_graph(signature(), g, sys);
    emit_graph(d);
    return kYes;
}

int Session::rank() {
    const AxiomSystem sys = system();
    if (sys == AxiomSystem::Uniq) throw SchemaError("rank needs --system srec or rec");
    if (inv_.options.empty()) throw SchemaError("--options is required");
    auto g = gamma();
    const auto opts = read_options(inv_.options, signature());
    const auto ranked = rank_options(signature(), g, opts, sys);
    if (inv_.json) {
        ojson doc = ojson::array();
        for (const auto& r : ranked)
            doc.push_back(ojson{{"option", r.index + 1}, {"new_edges", r.new_edges}, {"pondered_cost", r.cost.render()}});
        out_ << doc.dump(2) << "\n";
    } else {
        for (const auto& r : ranked)
            out_ << "option " << r.index + 1 << "\tnew-edges " << r.new_edges << "\tcost " << r.cost.render() << "\n";
    }
    return kYes;
}

int Session::rectest() {
    auto g = gamma();
    const auto r = recursiveness_test(signature(), g);
    if (inv_.json) out_ << ojson{{"result", to_string(r)}}.dump(2) << "\n";
    else out_ << to_string(r) << "\n";
    return r == Recursiveness::PossiblyRecursive ? kYes : kNo;
}

int Session::gen() {
    if (!inv_.seed) throw SchemaError("--seed is required");
    Rng rng(*inv_.seed);
    GeneratorOptions opts;
    opts.variables = inv_.variables;
    opts.domain = inv_.domain;
    opts.contexts = inv_.contexts;
    opts.kind = parse_generated_class(inv_.kind);
    out_ << write_model(random_model(rng, opts));
    return kYes;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Invocation inv;
    CLI::App app{"relcalc: reasoning about causal relevance"};
    app.name("relcalc");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("relcalc ") + kToolVersion + " (model format " + kModelFormatVersion + ")");

    std::function<int(Session&)> action;
    auto sub = [&](const char* name, const char* help, int (Session::*fn)()) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&action, fn] { action = [fn](Session& x) { return (x.*fn)(); }; });
        s->add_flag("--json", inv.json, "Emit one JSON document");
        return s;
    };
    auto with_model = [&](CLI::App* s) { s->add_option("--model", inv.model, "Model file (JSON)")->required()->check(CLI::ExistingFile); };
    auto with_gamma = [&](CLI::App* s) {
        s->add_option("--gamma", inv.gamma, "Formula set, one formula per line")->required()->check(CLI::ExistingFile);
        s->add_option("--vars", inv.vars, "Variable names, comma separated (default: inferred)");
    };
    auto with_system = [&](CLI::App* s) {
        s->add_option("--system", inv.system, "Axiom system (default srec)")->check(CLI::IsMember({"uniq", "srec", "rec"}));
    };
    auto with_jobs = [&](CLI::App* s) { s->add_option("--jobs", inv.jobs, "Worker threads")->check(CLI::Range(1u, 256u)); };

    auto* s = sub("eval", "Evaluate a formula against a model", &Session::eval);
    with_model(s);
    with_jobs(s);
    s->add_option("--formula", inv.formula, "Formula")->required();

    s = sub("theory", "Truth value of every atom in a model", &Session::theory);
    with_model(s);
    with_jobs(s);
    s->add_flag("--literals", inv.literals, "Print the literal list instead of verdicts");

    s = sub("respond", "Potential response to an intervention", &Session::respond);
    with_model(s);
    s->add_option("--do", inv.doing, "Intervention X=v,...");
    s->add_option("--targets", inv.targets, "Target variables (default: all others)");
    s->add_option("--context", inv.context, "Single context (default: every context)");

    s = sub("classify", "Model class: not-uniq, uniq, recursive, strong-recursive", &Session::classify_model);
    with_model(s);
    with_jobs(s);

    s = sub("consistent", "Decide consistency of a formula set", &Session::consistent_cmd);
    with_gamma(s);
    with_system(s);
    s->add_flag("--emit-extension", inv.emit_extension, "Print an extension as a literal list");

    s = sub("derive", "Decide derivability of a formula", &Session::derive);
    with_gamma(s);
    with_system(s);
    s->add_option("--formula", inv.formula, "Formula")->required();
    s->add_flag("--emit-extension", inv.emit_extension, "Print a counter-extension when not derivable");

    s = sub("extensions", "List every extension of a formula set", &Session::list_extensions);
    with_gamma(s);
    with_system(s);
    s->add_option("--max-extensions", inv.max_extensions, "Abort past this many extensions");

    s = sub("graph", "Semantic graph of a model or syntactic graph of an extension", &Session::graph);
    auto* m = s->add_option("--model", inv.model, "Model file")->check(CLI::ExistingFile);
    auto* gm = s->add_option("--gamma", inv.gamma, "Formula set")->check(CLI::ExistingFile);
    m->excludes(gm);
    s->add_option("--vars", inv.vars, "Variable names");
    s->add_option("--context", inv.context, "Restrict to one context");
    with_system(s);
    s->add_flag("--dot", inv.dot, "Graphviz output");

    s = sub("path", "Path witness for a negative atom", &Session::path);
    with_gamma(s);
    with_system(s);
    s->add_option("--atom", inv.atom, "Atom irr(X; Y; Z) with single X and Y")->required();

    s = sub("witness", "Build a model satisfying a consistent formula set", &Session::witness);
    with_gamma(s);
    s->add_option("--system", inv.system, "srec or rec (default srec)")->check(CLI::IsMember({"srec", "rec"}));
    s->add_option("-o,--output", inv.output, "Write the model here instead of stdout");

    s = sub("fragment", "Find or check a fragment", &Session::fragment);
    with_gamma(s);
    auto* an = s->add_option("--anchor", inv.anchor, "Anchor atom irr(x; y; Z)");
    auto* ck = s->add_option("--check", inv.check, "Fragment file to check")->check(CLI::ExistingFile);
    an->excludes(ck);

    s = sub("identify", "Edges shared by every extension", &Session::identify);
    with_gamma(s);
    with_system(s);
    s->add_flag("--exhaustive", inv.exhaustive, "Enumerate every extension");
    s->add_option("--max-extensions", inv.max_extensions, "Abort past this many extensions");
    s->add_flag("--dot", inv.dot, "Graphviz output");
    s->add_flag("--constraints", inv.constraints, "Export path constraints as JSON");

    s = sub("rank", "Rank information options by pondered cost", &Session::rank);
    with_gamma(s);
    with_system(s);
    s->add_option("--options", inv.options, "Options file (JSON)")->required()->check(CLI::ExistingFile);

    s = sub("rectest", "Recursiveness test", &Session::rectest);
    with_gamma(s);

    s = sub("gen", "Seeded random model", &Session::gen);
    s->add_option("--seed", inv.seed, "Seed")->required();
    s->add_option("--variables", inv.variables, "Variable count")->check(CLI::Range(1, 6));
    s->add_option("--domain", inv.domain, "Domain size")->check(CLI::Range(1, 16));
    s->add_option("--contexts", inv.contexts, "Context count")->check(CLI::Range(1, 16));
    s->add_option("--class", inv.kind, "srec, rec or uniq")->check(CLI::IsMember({"srec", "rec", "uniq"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kYes;
        }
        err << "relcalc: " << e.what() << "\n";
        return kUsage;
    }

    Session session(inv, out);
    try {
        return action(session);
    } catch (const Inconsistent& e) {
        err << "relcalc: " << e.what() << "\n";
        return kNo;
    } catch (const Error& e) {
        err << "relcalc: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "relcalc: internal error: " << e.what() << "\n";
        return kUsage;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"relcalc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace relcalc
