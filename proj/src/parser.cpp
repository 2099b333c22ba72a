#include "relcalc/error.hpp"
#include "relcalc/language.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace relcalc {

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''; }

class Parser {
public:
    Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) {}

    Formula parse() {
        Formula f = implication();
        skip_space();
        if (pos_ != text_.size()) fail("expected end of input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) fail("expected '" + std::string(token) + "'");
    }

    Formula implication() {
        Formula lhs = disjunction();
        if (accept("=>")) return Formula::implication(std::move(lhs), implication());
        return lhs;
    }

    Formula disjunction() {
        Formula f = conjunction();
        while (accept("|")) f = Formula::disjunction(std::move(f), conjunction());
        return f;
    }

    Formula conjunction() {
        Formula f = negation();
        while (accept("&")) f = Formula::conjunction(std::move(f), negation());
        return f;
    }

    Formula negation() {
        if (accept("!")) return Formula::negation(negation());
        return primary();
    }

    Formula primary() {
        skip_space();
        if (accept("(")) {
            Formula f = implication();
            expect(")");
            return f;
        }
        const std::size_t start = pos_;
        if (accept("irr")) {
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '(') return atom(start);
        }
        pos_ = start;
        fail("expected 'irr(', '!' or '('");
    }

    Formula atom(std::size_t start) {
        expect("(");
        VarSet x = varlist();
        expect(";");
        VarSet y = varlist();
        expect(";");
        VarSet z = varlist();
        expect(")");
        try {
            return Formula::atom(Atom(x, y, z));
        } catch (const MalformedAtom& e) {
            throw MalformedAtom(std::string(e.what()) + " in '" + std::string(text_.substr(start, pos_ - start)) + "'");
        }
    }

    VarSet varlist() {
        VarSet set;
        skip_space();
        if (pos_ >= text_.size() || !name_start(text_[pos_])) return set;
        while (true) {
            skip_space();
            if (pos_ >= text_.size() || !name_start(text_[pos_])) fail("expected a variable name");
            const std::size_t begin = pos_;
            while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
            const std::size_t index = sig_.index_of(text_.substr(begin, pos_ - begin));
            if (set.contains(index))
                throw MalformedAtom("variable '" + sig_.name(index) + "' listed twice in one component");
            set |= VarSet::single(index);
            if (!accept(",")) break;
        }
        return set;
    }

    std::string_view text_;
    const Signature& sig_;
    std::size_t pos_ = 0;
};

std::string strip_comment(std::string_view line) {
    auto hash = line.find('#');
    std::string s(line.substr(0, hash));
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

Formula parse_formula(std::string_view text, const Signature& sig) { return Parser(text, sig).parse(); }

std::vector<Formula> parse_formula_set(std::string_view text, const Signature& sig) {
    std::vector<Formula> out;
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        auto end = text.find('\n', begin);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string line = strip_comment(text.substr(begin, end - begin));
        if (!line.empty()) {
            try {
                out.push_back(parse_formula(line, sig));
            } catch (const SyntaxError& e) {
                throw SyntaxError(e.position(), "line " + std::to_string(line_no) + ": " + e.detail());
            }
        }
        begin = end + 1;
    }
    return out;
}

std::vector<Formula> read_formula_set(const std::filesystem::path& path, const Signature& sig) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open formula file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_formula_set(buffer.str(), sig);
}

std::vector<std::string> scan_variable_names(std::string_view text) {
    std::vector<std::string> names;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (name_start(text[i])) {
            std::size_t b = i;
            while (i < text.size() && name_char(text[i])) ++i;
            std::string word(text.substr(b, i - b));
            if (word != "irr" && std::find(names.begin(), names.end(), word) == names.end()) names.push_back(word);
            continue;
        }
        ++i;
    }
    return names;
}

} // namespace relcalc
