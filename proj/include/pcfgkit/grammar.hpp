#ifndef PCFGKIT_GRAMMAR_HPP_
#define PCFGKIT_GRAMMAR_HPP_

#include <cstdint>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "pcfgkit/symbol_table.hpp"

namespace pcfgkit {

enum class SymbolKind { kNonterminal, kTerminal };

struct SymbolRef {
    SymbolKind kind;
    int id;

    bool is_terminal() const { return kind == SymbolKind::kTerminal; }
    bool operator==(const SymbolRef& other) const = default;
};

inline SymbolRef nt(int id) { return SymbolRef{SymbolKind::kNonterminal, id}; }
inline SymbolRef term(int id) { return SymbolRef{SymbolKind::kTerminal, id}; }

// A weighted rewriting rule. `prob` is the linear probability in (0, 1];
// `log_prob` is its natural log. Both are kept: charts combine logs,
// closure matrices and file output need the linear value.
struct Rule {
    int lhs = -1;
    std::vector<SymbolRef> rhs;
    double prob = 0.0;
    double log_prob = 0.0;

    bool is_lexical() const { return rhs.size() == 1 && rhs[0].is_terminal(); }
    bool is_unary_nt() const { return rhs.size() == 1 && !rhs[0].is_terminal(); }
    bool is_binary_nt() const {
        return rhs.size() == 2 && !rhs[0].is_terminal() && !rhs[1].is_terminal();
    }
};

struct ValidationReport {
    bool ok = false;
    // One entry per nonterminal that has outgoing rules: (nonterminal id, sum of rule probs).
    std::vector<std::pair<int, double>> lhs_probability_sums;
    std::vector<int> unreachable;    // nonterminals with no path from start
    std::vector<int> nonproductive;  // nonterminals deriving no terminal string
    double max_sum_deviation = 0.0;
};

// Immutable rule set with symbol tables, start symbol, and lookup indexes.
// Construction goes through build(), which verifies structural invariants
// (non-empty rhs, ids in range, probabilities in (0,1], no duplicate rules)
// and precomputes every index. Safe for concurrent reads afterwards.
class Grammar {
  public:
    struct LhsProb {
        int lhs;
        double log_prob;
    };
    struct TermProb {
        int terminal;
        double log_prob;
    };

    static Grammar build(SymbolTable nonterminals, SymbolTable terminals,
                         std::vector<Rule> rules, int start);

    const SymbolTable& nonterminals() const { return nonterminals_; }
    const SymbolTable& terminals() const { return terminals_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const Rule& rule(int id) const { return rules_[static_cast<size_t>(id)]; }
    int start() const { return start_; }
    int num_nonterminals() const { return nonterminals_.size(); }
    int num_terminals() const { return terminals_.size(); }

    const std::string& nonterminal_name(int id) const { return nonterminals_.name(id); }
    const std::string& terminal_name(int id) const { return terminals_.name(id); }

    // Rule ids with the given lhs, in construction order.
    const std::vector<int>& rules_of(int lhs) const {
        return by_lhs_[static_cast<size_t>(lhs)];
    }
    // Cumulative linear probabilities aligned with rules_of(lhs); last entry is the lhs sum.
    const std::vector<double>& rule_cdf(int lhs) const {
        return cdf_by_lhs_[static_cast<size_t>(lhs)];
    }

    // True iff every rule is lexical, unary nonterminal, or binary nonterminal.
    bool in_binary_form() const { return binary_form_; }

    // Strict-form indexes (meaningful when in_binary_form()):
    const std::vector<LhsProb>& lexical_parents(int terminal) const {
        return lexical_parents_[static_cast<size_t>(terminal)];
    }
    const std::vector<LhsProb>* binary_parents(int left, int right) const {
        auto it = binary_parents_.find(child_key(left, right));
        return it == binary_parents_.end() ? nullptr : &it->second;
    }
    const std::vector<TermProb>& lexical_rules_of(int lhs) const {
        return lexical_by_lhs_[static_cast<size_t>(lhs)];
    }
    // log of the total lexical probability mass of lhs (-inf if none).
    double lexical_mass_log(int lhs) const {
        return lexical_mass_log_[static_cast<size_t>(lhs)];
    }
    // Binary rule ids grouped by lhs (top-down passes iterate these).
    const std::vector<int>& binary_rules_of(int lhs) const {
        return binary_by_lhs_[static_cast<size_t>(lhs)];
    }
    // (lhs, rhs nonterminal, linear prob) for every unary nonterminal rule.
    const std::vector<std::tuple<int, int, double>>& unary_nt_rules() const {
        return unary_nt_rules_;
    }

  private:
    Grammar() = default;

    static std::uint64_t child_key(int left, int right) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(left)) << 32) |
               static_cast<std::uint32_t>(right);
    }

    SymbolTable nonterminals_;
    SymbolTable terminals_;
    std::vector<Rule> rules_;
    int start_ = -1;
    bool binary_form_ = false;

    std::vector<std::vector<int>> by_lhs_;
    std::vector<std::vector<double>> cdf_by_lhs_;
    std::vector<std::vector<LhsProb>> lexical_parents_;
    std::unordered_map<std::uint64_t, std::vector<LhsProb>> binary_parents_;
    std::vector<std::vector<TermProb>> lexical_by_lhs_;
    std::vector<double> lexical_mass_log_;
    std::vector<std::vector<int>> binary_by_lhs_;
    std::vector<std::tuple<int, int, double>> unary_nt_rules_;
};

// Properness / reachability / productivity report. Never throws; `ok` is the verdict.
ValidationReport validate(const Grammar& g);

// Tolerance used by validate() on per-lhs probability sums.
inline constexpr double kProbSumTolerance = 1e-6;

}  // namespace pcfgkit

#endif  // PCFGKIT_GRAMMAR_HPP_
