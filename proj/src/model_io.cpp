#include "relcalc/model_io.hpp"

#include "relcalc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace relcalc {

namespace {

using nlohmann::json;

constexpr const char* kContextKey = "_ctx";

void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw SchemaError(where + ": unknown field '" + key + "'");
    }
}

const json& required(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

std::string string_value(const json& v, const std::string& where) {
    if (!v.is_string()) throw SchemaError(where + ": expected a string");
    return v.get<std::string>();
}

Value domain_value(const Signature& sig, std::size_t var, const json& v, const std::string& where) {
    const std::string s = string_value(v, where);
    auto idx = sig.find_value(var, s);
    if (!idx) throw DomainError(where + ": '" + s + "' is not in the domain of " + sig.name(var));
    return static_cast<Value>(*idx);
}

} // namespace

CausalModel parse_model(std::string_view json_text, std::size_t max_variables) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    only_keys(doc, {"variables", "contexts", "equations"}, "model");

    const json& vars = required(doc, "variables", "model");
    if (!vars.is_array()) throw SchemaError("variables: expected an array");
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> domains;
    for (const auto& v : vars) {
        only_keys(v, {"name", "domain"}, "variables");
        names.push_back(string_value(required(v, "name", "variables"), "variables.name"));
        const json& dom = required(v, "domain", "variable " + names.back());
        if (!dom.is_array()) throw SchemaError("variable " + names.back() + ": domain must be an array");
        std::vector<std::string> values;
        for (const auto& d : dom) values.push_back(string_value(d, "domain of " + names.back()));
        domains.push_back(std::move(values));
    }
    Signature sig;
    try {
        sig = Signature(names, domains, max_variables);
    } catch (const UnknownVariable&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(e.what());
    }

    const json& ctx = required(doc, "contexts", "model");
    if (!ctx.is_array()) throw SchemaError("contexts: expected an array");
    std::vector<std::string> contexts;
    for (const auto& c : ctx) contexts.push_back(string_value(c, "contexts"));

    const json& eqs = required(doc, "equations", "model");
    if (!eqs.is_object()) throw SchemaError("equations: expected an object");
    for (const auto& [key, _] : eqs.items())
        if (!sig.find(key)) throw SchemaError("equations: no variable named '" + key + "'");

    std::vector<Equation> equations(sig.size());
    for (std::size_t y = 0; y < sig.size(); ++y) {
        const std::string where = "equation of " + sig.name(y);
        auto it = eqs.find(sig.name(y));
        if (it == eqs.end()) throw SchemaError("missing equation for " + sig.name(y));
        only_keys(*it, {"rules", "default"}, where);
        equations[y].fallback = domain_value(sig, y, required(*it, "default", where), where + " default");
        if (auto rules = it->find("rules"); rules != it->end()) {
            if (!rules->is_array()) throw SchemaError(where + ": rules must be an array");
            for (const auto& r : *rules) {
                only_keys(r, {"when", "then"}, where);
                Rule rule;
                rule.then = domain_value(sig, y, required(r, "then", where), where + " rule value");
                if (auto when = r.find("when"); when != r.end()) {
                    if (!when->is_object()) throw SchemaError(where + ": 'when' must be an object");
                    for (const auto& [var_name, value] : when->items()) {
                        if (var_name == kContextKey) {
                            const std::string id = string_value(value, where + " _ctx");
                            auto c = std::find(contexts.begin(), contexts.end(), id);
                            if (c == contexts.end()) throw UnknownContext(id);
                            rule.context = static_cast<std::size_t>(c - contexts.begin());
                            continue;
                        }
                        auto var = sig.find(var_name);
                        if (!var) throw SchemaError(where + ": condition on unknown variable '" + var_name + "'");
                        if (*var == y) throw SelfReference(where + " conditions on " + sig.name(y) + " itself");
                        rule.when.emplace_back(*var, domain_value(sig, *var, value, where + " condition"));
                    }
                    std::sort(rule.when.begin(), rule.when.end());
                }
                equations[y].rules.push_back(std::move(rule));
            }
        }
    }
    return CausalModel(std::move(sig), std::move(contexts), std::move(equations));
}

CausalModel read_model(const std::filesystem::path& path, std::size_t max_variables) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str(), max_variables);
}

std::string write_model(const CausalModel& m) {
    using ojson = nlohmann::ordered_json;
    const Signature& sig = m.signature();
    ojson doc;
    ojson vars = ojson::array();
    for (std::size_t i = 0; i < sig.size(); ++i) vars.push_back(ojson{{"name", sig.name(i)}, {"domain", sig.domain(i)}});
    doc["variables"] = std::move(vars);
    doc["contexts"] = m.contexts();
    ojson eqs = ojson::object();
    for (std::size_t y = 0; y < sig.size(); ++y) {
        const Equation& eq = m.equations()[y];
        ojson rules = ojson::array();
        for (const auto& rule : eq.rules) {
            ojson when = ojson::object();
            for (auto [var, value] : rule.when) when[sig.name(var)] = sig.domain(var)[value];
            if (rule.context) when[kContextKey] = m.contexts()[*rule.context];
            rules.push_back(ojson{{"when", std::move(when)}, {"then", sig.domain(y)[rule.then]}});
        }
        eqs[sig.name(y)] = ojson{{"rules", std::move(rules)}, {"default", sig.domain(y)[eq.fallback]}};
    }
    doc["equations"] = std::move(eqs);
    return doc.dump(2) + "\n";
}

} // namespace relcalc
