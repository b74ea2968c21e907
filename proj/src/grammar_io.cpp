#include "pcfgkit/grammar_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace pcfgkit {

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '@' ||
           c == '-' || c == '$' || c == '^';
}

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!is_ident_char(c)) return false;
    }
    return true;
}

struct Token {
    enum Kind { kIdent, kArrow, kTerminal, kNumberOrIdent } kind;
    std::string text;
};

// Splits one rule line into tokens, honoring quoted terminals and '#' comments.
std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> out;
    size_t i = 0;
    const size_t n = line.size();
    while (i < n) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == '#') break;
        if (c == '\'') {
            std::string tok;
            ++i;
            bool closed = false;
            while (i < n) {
                char d = line[i];
                if (d == '\\' && i + 1 < n && (line[i + 1] == '\'' || line[i + 1] == '\\')) {
                    tok += line[i + 1];
                    i += 2;
                    continue;
                }
                if (d == '\'') {
                    closed = true;
                    ++i;
                    break;
                }
                tok += d;
                ++i;
            }
            if (!closed) throw ParseError(line_no, "unterminated quoted terminal");
            if (tok.empty()) throw ParseError(line_no, "empty terminal token");
            for (char d : tok) {
                if (std::isspace(static_cast<unsigned char>(d))) {
                    throw ParseError(line_no, "terminal token contains whitespace");
                }
            }
            out.push_back({Token::kTerminal, tok});
            continue;
        }
        std::string tok;
        while (i < n && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#' && line[i] != '\'') {
            tok += line[i];
            ++i;
        }
        if (tok == "->") {
            out.push_back({Token::kArrow, tok});
        } else {
            out.push_back({Token::kNumberOrIdent, tok});
        }
    }
    return out;
}

double parse_prob(const std::string& text, int line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    double value = std::strtod(begin, &end);
    if (end != begin + text.size() || errno != 0) {
        throw ParseError(line_no, "malformed probability '" + text + "'");
    }
    if (!std::isfinite(value) || !(value > 0.0) || value > 1.0) {
        throw ParseError(line_no, "probability must be in (0, 1], got '" + text + "'");
    }
    return value;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    // Only valid outside rule context (directive lines); rule lines are tokenized.
    size_t pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Grammar parse_grammar(const std::string& text) {
    SymbolTable nonterminals;
    SymbolTable terminals;
    std::vector<Rule> rules;
    std::unordered_set<std::string> rule_keys;
    std::string start_name = "ROOT";
    bool start_seen = false;
    bool rule_seen = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string bare = trimmed(strip_comment(line));
        if (bare.empty()) continue;

        if (bare.rfind("start:", 0) == 0) {
            if (rule_seen) throw ParseError(line_no, "start directive must precede rules");
            if (start_seen) throw ParseError(line_no, "duplicate start directive");
            start_name = trimmed(bare.substr(6));
            if (!is_ident(start_name)) {
                throw ParseError(line_no, "malformed start directive");
            }
            start_seen = true;
            continue;
        }

        auto tokens = tokenize_line(line, line_no);
        if (tokens.empty()) continue;
        rule_seen = true;
        if (tokens.size() < 4) {
            throw ParseError(line_no, "rule needs 'LHS -> RHS... prob'");
        }
        if (tokens[0].kind != Token::kNumberOrIdent || !is_ident(tokens[0].text)) {
            throw ParseError(line_no, "malformed rule lhs");
        }
        if (tokens[1].kind != Token::kArrow) {
            throw ParseError(line_no, "expected '->' after lhs");
        }
        const Token& prob_tok = tokens.back();
        if (prob_tok.kind == Token::kTerminal) {
            throw ParseError(line_no, "rule is missing its probability");
        }
        const double prob = parse_prob(prob_tok.text, line_no);

        Rule r;
        r.lhs = nonterminals.intern(tokens[0].text);
        for (size_t i = 2; i + 1 < tokens.size(); ++i) {
            const Token& t = tokens[i];
            if (t.kind == Token::kTerminal) {
                r.rhs.push_back(term(terminals.intern(t.text)));
            } else if (is_ident(t.text)) {
                r.rhs.push_back(nt(nonterminals.intern(t.text)));
            } else {
                throw ParseError(line_no, "malformed rhs symbol '" + t.text + "'");
            }
        }
        if (r.rhs.empty()) {
            throw ParseError(line_no, "rule has no rhs symbols (epsilon rejected)");
        }
        r.prob = prob;

        std::string key = std::to_string(r.lhs);
        for (const SymbolRef& s : r.rhs) {
            key += s.is_terminal() ? " t" : " n";
            key += std::to_string(s.id);
        }
        if (!rule_keys.insert(key).second) {
            throw ParseError(line_no, "duplicate rule (same lhs and rhs)");
        }
        rules.push_back(std::move(r));
    }

    if (rules.empty()) throw ParseError(0, "grammar has no rules");
    auto start_id = nonterminals.lookup(start_name);
    if (!start_id.has_value()) {
        throw ParseError(0, "unknown start symbol '" + start_name + "'");
    }
    return Grammar::build(std::move(nonterminals), std::move(terminals), std::move(rules),
                          *start_id);
}

Grammar load_grammar(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open grammar file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grammar(buf.str());
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) return "0";
    return std::string(buf, ptr);
}

namespace {

std::string quote_terminal(const std::string& token) {
    std::string out = "'";
    for (char c : token) {
        if (c == '\'' || c == '\\') out += '\\';
        out += c;
    }
    out += '\'';
    return out;
}

}  // namespace

std::string format_grammar(const Grammar& g) {
    std::string out = "start: " + g.nonterminal_name(g.start()) + "\n";
    for (const Rule& r : g.rules()) {
        out += g.nonterminal_name(r.lhs);
        out += " ->";
        for (const SymbolRef& s : r.rhs) {
            out += ' ';
            out += s.is_terminal() ? quote_terminal(g.terminal_name(s.id))
                                   : g.nonterminal_name(s.id);
        }
        out += ' ';
        out += format_double(r.prob);
        out += '\n';
    }
    return out;
}

void save_grammar(const Grammar& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write grammar file: " + path);
    out << format_grammar(g);
}

}  // namespace pcfgkit
