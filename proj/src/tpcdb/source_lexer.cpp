#include "tpcscan/tpcdb/source_lexer.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <vector>

namespace tpcscan::tpcdb {

namespace {

enum class TokKind { ident, string, punct, number, other };

struct Token {
    TokKind kind;
    std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    std::vector<Token> run()
    {
        bool line_start = true;
        while (i_ < s_.size()) {
            const char c = s_[i_];
            if (c == '\n') {
                line_start = true;
                ++i_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
                continue;
            }
            if (skip_comment()) {
                continue;
            }
            if (line_start && c == '#') {
                directive();
                continue;
            }
            line_start = false;
            if (auto lit = string_literal()) {
                push_string(std::move(*lit));
                continue;
            }
            if (c == '\'') {
                char_literal();
                continue;
            }
            if (ident_start(c)) {
                std::size_t j = i_;
                while (j < s_.size() && ident_char(s_[j])) ++j;
                tokens_.push_back({TokKind::ident, std::string(s_.substr(i_, j - i_))});
                i_ = j;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i_;
                while (j < s_.size() && (ident_char(s_[j]) || s_[j] == '.')) ++j;
                tokens_.push_back({TokKind::number, std::string(s_.substr(i_, j - i_))});
                i_ = j;
                continue;
            }
            if (s_.substr(i_, 3) == "...") {
                tokens_.push_back({TokKind::punct, "..."});
                i_ += 3;
                continue;
            }
            if (s_.substr(i_, 2) == "::") {
                tokens_.push_back({TokKind::punct, "::"});
                i_ += 2;
                continue;
            }
            tokens_.push_back({TokKind::punct, std::string(1, c)});
            ++i_;
        }
        return std::move(tokens_);
    }

private:
    bool skip_comment()
    {
        if (s_.substr(i_, 2) == "//") {
            while (i_ < s_.size() && s_[i_] != '\n') {
                // a backslash-newline continues a line comment
                if (s_[i_] == '\\' && i_ + 1 < s_.size() && s_[i_ + 1] == '\n') ++i_;
                ++i_;
            }
            return true;
        }
        if (s_.substr(i_, 2) == "/*") {
            const auto end = s_.find("*/", i_ + 2);
            i_ = end == std::string_view::npos ? s_.size() : end + 2;
            return true;
        }
        return false;
    }

    std::string logical_line()
    {
        std::string line;
        while (i_ < s_.size() && s_[i_] != '\n') {
            if (s_[i_] == '\\' && i_ + 1 < s_.size() && s_[i_ + 1] == '\n') {
                i_ += 2;
                continue;
            }
            if (s_.substr(i_, 2) == "/*") {
                skip_comment();
                line.push_back(' ');
                continue;
            }
            if (s_.substr(i_, 2) == "//") {
                skip_comment();
                break;
            }
            line.push_back(s_[i_++]);
        }
        return line;
    }

    static std::string directive_name(const std::string& line, std::string* rest)
    {
        std::size_t k = line.find('#') + 1;
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
        std::size_t e = k;
        while (e < line.size() && ident_char(line[e])) ++e;
        if (rest) {
            std::size_t r = e;
            while (r < line.size() && std::isspace(static_cast<unsigned char>(line[r]))) ++r;
            *rest = line.substr(r);
            while (!rest->empty() && std::isspace(static_cast<unsigned char>(rest->back()))) rest->pop_back();
        }
        return line.substr(k, e - k);
    }

    void directive()
    {
        std::string rest;
        const std::string line = logical_line();
        const std::string name = directive_name(line, &rest);
        if (name == "if" && rest == "0") {
            skip_if0();
            return;
        }
        if (name == "define") {
            // macro bodies may hold literals that end up in the binary
            for (auto& t : Lexer(rest).run()) {
                if (t.kind == TokKind::string) {
                    tokens_.push_back({TokKind::other, ";"});
                    push_string(std::move(t.text));
                }
            }
            tokens_.push_back({TokKind::other, ";"});
        }
        // #include operands, #pragma, #error text and the rest are ignored
    }

    void skip_if0()
    {
        int depth = 1;
        while (i_ < s_.size() && depth > 0) {
            const char c = s_[i_];
            if (c == '\n' || std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
                continue;
            }
            if (skip_comment()) continue;
            if (c == '#') {
                const std::string line = logical_line();
                const std::string name = directive_name(line, nullptr);
                if (name == "if" || name == "ifdef" || name == "ifndef") {
                    ++depth;
                } else if (name == "endif") {
                    --depth;
                } else if (depth == 1 && (name == "else" || name == "elif")) {
                    // the #else branch of #if 0 is live; #elif is treated as live too
                    return;
                }
                continue;
            }
            while (i_ < s_.size() && s_[i_] != '\n') ++i_;
        }
    }

    std::optional<std::string> string_literal()
    {
        std::size_t j = i_;
        // encoding prefixes
        for (std::string_view p : {"u8", "u", "U", "L"}) {
            if (s_.substr(j, p.size()) == p && j + p.size() < s_.size() &&
                (s_[j + p.size()] == '"' || (s_[j + p.size()] == 'R' && j + p.size() + 1 < s_.size() &&
                                             s_[j + p.size() + 1] == '"'))) {
                j += p.size();
                break;
            }
        }
        if (s_[j] == 'R' && j + 1 < s_.size() && s_[j + 1] == '"') {
            const std::size_t open = s_.find('(', j + 2);
            if (open == std::string_view::npos) return std::nullopt;
            const std::string close = ")" + std::string(s_.substr(j + 2, open - j - 2)) + "\"";
            const std::size_t end = s_.find(close, open + 1);
            const std::size_t stop = end == std::string_view::npos ? s_.size() : end;
            std::string body(s_.substr(open + 1, stop - open - 1));
            i_ = end == std::string_view::npos ? s_.size() : end + close.size();
            return body;
        }
        if (s_[j] != '"') return std::nullopt;
        std::string out;
        std::size_t k = j + 1;
        while (k < s_.size() && s_[k] != '"') {
            if (s_[k] == '\n') break; // unterminated literal: stop at end of line
            if (s_[k] == '\\' && k + 1 < s_.size()) {
                k = escape(k + 1, out);
                continue;
            }
            out.push_back(s_[k++]);
        }
        i_ = k < s_.size() ? k + 1 : k;
        return out;
    }

    std::size_t escape(std::size_t k, std::string& out)
    {
        const char e = s_[k];
        switch (e) {
        case 'n': out.push_back('\n'); return k + 1;
        case 't': out.push_back('\t'); return k + 1;
        case 'r': out.push_back('\r'); return k + 1;
        case 'a': out.push_back('\a'); return k + 1;
        case 'b': out.push_back('\b'); return k + 1;
        case 'f': out.push_back('\f'); return k + 1;
        case 'v': out.push_back('\v'); return k + 1;
        case 'e': out.push_back('\x1b'); return k + 1;
        case '\n': return k + 1; // line continuation
        case 'x': {
            unsigned v = 0;
            std::size_t m = k + 1;
            while (m < s_.size() && std::isxdigit(static_cast<unsigned char>(s_[m]))) {
                v = v * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(s_[m]))
                                                       ? s_[m] - '0'
                                                       : std::tolower(static_cast<unsigned char>(s_[m])) - 'a' + 10);
                ++m;
            }
            out.push_back(static_cast<char>(v & 0xFF));
            return m;
        }
        default:
            if (e >= '0' && e <= '7') {
                unsigned v = 0;
                std::size_t m = k;
                while (m < s_.size() && m < k + 3 && s_[m] >= '0' && s_[m] <= '7') v = v * 8 + static_cast<unsigned>(s_[m++] - '0');
                out.push_back(static_cast<char>(v & 0xFF));
                return m;
            }
            out.push_back(e); // \\ \" \' \? and unknown escapes
            return k + 1;
        }
    }

    void char_literal()
    {
        std::size_t k = i_ + 1;
        while (k < s_.size() && s_[k] != '\'' && s_[k] != '\n') {
            k += s_[k] == '\\' ? 2 : 1;
        }
        i_ = std::min(k + 1, s_.size());
        tokens_.push_back({TokKind::number, "'c'"});
    }

    void push_string(std::string text)
    {
        if (!tokens_.empty() && tokens_.back().kind == TokKind::string) {
            tokens_.back().text += text;
        } else {
            tokens_.push_back({TokKind::string, std::move(text)});
        }
    }

    std::string_view s_;
    std::size_t i_ = 0;
    std::vector<Token> tokens_;
};

bool is_type_word(const std::string& w)
{
    static const std::set<std::string> words{"void",     "char",     "short",  "int",      "long",   "float",
                                             "double",   "signed",   "unsigned", "const",  "volatile", "struct",
                                             "union",    "enum",     "bool",   "_Bool",    "restrict", "register",
                                             "__restrict", "wchar_t", "auto"};
    return words.count(w) != 0;
}

std::string normalize_param(const std::vector<Token>& toks)
{
    // drop a trailing declarator name, and the name inside "(*name)"
    std::vector<Token> t = toks;
    for (std::size_t k = 0; k + 2 < t.size(); ++k) {
        if (t[k].text == "(" && t[k + 1].text == "*" && t[k + 2].kind == TokKind::ident) {
            t.erase(t.begin() + static_cast<std::ptrdiff_t>(k + 2));
            break;
        }
    }
    std::size_t name_at = t.size();
    std::size_t end = t.size();
    while (end > 0 && t[end - 1].text == "]") {
        // walk back over an array suffix
        std::size_t k = end - 1;
        while (k > 0 && t[k].text != "[") --k;
        end = k;
    }
    if (end >= 2 && t[end - 1].kind == TokKind::ident && !is_type_word(t[end - 1].text) &&
        t[end - 2].text != "struct" && t[end - 2].text != "union" && t[end - 2].text != "enum" && t[end - 2].text != "::") {
        name_at = end - 1;
    }
    std::string out;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k == name_at) continue;
        if (k > name_at && k >= end && t[k].kind == TokKind::number) continue; // array bound
        const std::string& w = t[k].text;
        const bool word = t[k].kind == TokKind::ident;
        if (!out.empty() && word && (std::isalnum(static_cast<unsigned char>(out.back())) || out.back() == '_')) {
            out.push_back(' ');
        }
        out += w;
    }
    return out;
}

std::optional<std::string> signature_at(const std::vector<Token>& toks, std::size_t name_idx, std::size_t* after)
{
    // toks[name_idx] is an identifier, toks[name_idx+1] is "("
    std::size_t k = name_idx + 2;
    int depth = 1;
    std::vector<std::vector<Token>> params(1);
    while (k < toks.size() && depth > 0) {
        const auto& t = toks[k];
        if (t.text == "(") ++depth;
        if (t.text == ")") {
            if (--depth == 0) break;
        }
        if (t.text == "," && depth == 1) {
            params.emplace_back();
        } else {
            params.back().push_back(t);
        }
        ++k;
    }
    if (depth != 0) return std::nullopt;
    ++k;
    // trailing qualifiers before the body
    while (k < toks.size() && toks[k].kind == TokKind::ident &&
           (toks[k].text == "const" || toks[k].text == "noexcept" || toks[k].text == "override")) {
        ++k;
    }
    if (k >= toks.size() || toks[k].text != "{") return std::nullopt;
    *after = k;
    std::string sig = toks[name_idx].text + "(";
    if (!(params.size() == 1 && (params[0].empty() || (params[0].size() == 1 && params[0][0].text == "void")))) {
        for (std::size_t p = 0; p < params.size(); ++p) {
            if (p) sig += ",";
            sig += normalize_param(params[p]);
        }
    }
    sig += ")";
    return sig;
}

const std::set<std::string>& non_function_words()
{
    static const std::set<std::string> words{"if", "while", "for", "switch", "return", "sizeof", "do", "else",
                                             "case", "defined", "__attribute__", "alignas", "decltype"};
    return words;
}

} // namespace

SourceFeatures lex_source_features(std::string_view text)
{
    SourceFeatures out;
    const std::vector<Token> toks = Lexer(text).run();
    int depth = 0;
    std::vector<bool> transparent; // brace scopes that keep file scope (namespace, extern "C")
    for (std::size_t k = 0; k < toks.size(); ++k) {
        const Token& t = toks[k];
        if (t.kind == TokKind::string) {
            if (!t.text.empty()) out.strings.insert(t.text);
            continue;
        }
        if (t.text == "{") {
            bool keep_scope = false;
            if (k >= 1 && toks[k - 1].kind == TokKind::string && k >= 2 && toks[k - 2].text == "extern") keep_scope = true;
            if (k >= 1 && toks[k - 1].text == "namespace") keep_scope = true;
            if (k >= 2 && toks[k - 2].text == "namespace" && toks[k - 1].kind == TokKind::ident) keep_scope = true;
            transparent.push_back(keep_scope);
            if (!keep_scope) ++depth;
            continue;
        }
        if (t.text == "}") {
            if (!transparent.empty()) {
                if (!transparent.back()) --depth;
                transparent.pop_back();
            }
            continue;
        }
        if (depth == 0 && t.kind == TokKind::ident && k + 1 < toks.size() && toks[k + 1].text == "(" &&
            non_function_words().count(t.text) == 0) {
            std::size_t body = 0;
            if (auto sig = signature_at(toks, k, &body)) {
                // qualified C++ names keep their scope
                std::string name = *sig;
                std::size_t q = k;
                while (q >= 2 && toks[q - 1].text == "::" && toks[q - 2].kind == TokKind::ident) {
                    name = toks[q - 2].text + "::" + name;
                    q -= 2;
                }
                out.functions.insert(name);
                k = body - 1; // the "{" is processed next
            }
        }
    }
    return out;
}

} // namespace tpcscan::tpcdb
