#include "pcfgkit/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "pcfgkit/numeric.hpp"

namespace pcfgkit {

namespace {

std::string rule_signature(const Rule& r) {
    std::string sig = std::to_string(r.lhs);
    for (const SymbolRef& s : r.rhs) {
        sig += s.is_terminal() ? " t" : " n";
        sig += std::to_string(s.id);
    }
    return sig;
}

}  // namespace

Grammar Grammar::build(SymbolTable nonterminals, SymbolTable terminals,
                       std::vector<Rule> rules, int start) {
    Grammar g;
    g.nonterminals_ = std::move(nonterminals);
    g.terminals_ = std::move(terminals);
    g.rules_ = std::move(rules);
    g.start_ = start;

    const int num_nt = g.nonterminals_.size();
    const int num_t = g.terminals_.size();
    if (start < 0 || start >= num_nt) {
        throw std::invalid_argument("grammar start symbol id out of range");
    }

    std::unordered_map<std::string, int> seen;
    for (size_t i = 0; i < g.rules_.size(); ++i) {
        Rule& r = g.rules_[i];
        if (r.rhs.empty()) {
            throw std::invalid_argument("epsilon production rejected (empty rhs)");
        }
        if (r.lhs < 0 || r.lhs >= num_nt) {
            throw std::invalid_argument("rule lhs id out of range");
        }
        for (const SymbolRef& s : r.rhs) {
            const int limit = s.is_terminal() ? num_t : num_nt;
            if (s.id < 0 || s.id >= limit) {
                throw std::invalid_argument("rule rhs id out of range");
            }
        }
        if (!(r.prob > 0.0) || r.prob > 1.0 || !std::isfinite(r.prob)) {
            throw std::invalid_argument("rule probability must be in (0, 1]");
        }
        r.log_prob = std::log(r.prob);
        auto [it, inserted] = seen.emplace(rule_signature(r), static_cast<int>(i));
        if (!inserted) {
            throw std::invalid_argument("duplicate rule (same lhs and rhs)");
        }
    }

    g.by_lhs_.assign(static_cast<size_t>(num_nt), {});
    g.binary_by_lhs_.assign(static_cast<size_t>(num_nt), {});
    g.lexical_by_lhs_.assign(static_cast<size_t>(num_nt), {});
    g.lexical_mass_log_.assign(static_cast<size_t>(num_nt), kNegInf);
    g.lexical_parents_.assign(static_cast<size_t>(num_t), {});

    g.binary_form_ = true;
    std::vector<double> lexical_mass(static_cast<size_t>(num_nt), 0.0);
    for (size_t i = 0; i < g.rules_.size(); ++i) {
        const Rule& r = g.rules_[i];
        const int id = static_cast<int>(i);
        g.by_lhs_[static_cast<size_t>(r.lhs)].push_back(id);
        if (r.is_lexical()) {
            const int t = r.rhs[0].id;
            g.lexical_parents_[static_cast<size_t>(t)].push_back({r.lhs, r.log_prob});
            g.lexical_by_lhs_[static_cast<size_t>(r.lhs)].push_back({t, r.log_prob});
            lexical_mass[static_cast<size_t>(r.lhs)] += r.prob;
        } else if (r.is_unary_nt()) {
            g.unary_nt_rules_.emplace_back(r.lhs, r.rhs[0].id, r.prob);
        } else if (r.is_binary_nt()) {
            g.binary_by_lhs_[static_cast<size_t>(r.lhs)].push_back(id);
            g.binary_parents_[child_key(r.rhs[0].id, r.rhs[1].id)].push_back(
                {r.lhs, r.log_prob});
        } else {
            g.binary_form_ = false;
        }
    }
    for (int a = 0; a < num_nt; ++a) {
        if (lexical_mass[static_cast<size_t>(a)] > 0.0) {
            g.lexical_mass_log_[static_cast<size_t>(a)] =
                std::log(lexical_mass[static_cast<size_t>(a)]);
        }
    }

    g.cdf_by_lhs_.assign(static_cast<size_t>(num_nt), {});
    for (int a = 0; a < num_nt; ++a) {
        const auto& ids = g.by_lhs_[static_cast<size_t>(a)];
        auto& cdf = g.cdf_by_lhs_[static_cast<size_t>(a)];
        cdf.reserve(ids.size());
        double acc = 0.0;
        for (int id : ids) {
            acc += g.rules_[static_cast<size_t>(id)].prob;
            cdf.push_back(acc);
        }
    }
    return g;
}

ValidationReport validate(const Grammar& g) {
    ValidationReport report;
    const int num_nt = g.num_nonterminals();

    for (int a = 0; a < num_nt; ++a) {
        const auto& cdf = g.rule_cdf(a);
        if (cdf.empty()) continue;
        const double sum = cdf.back();
        report.lhs_probability_sums.emplace_back(a, sum);
        report.max_sum_deviation = std::max(report.max_sum_deviation, std::fabs(sum - 1.0));
    }

    // Reachability from start through rule rhs.
    std::vector<char> reachable(static_cast<size_t>(num_nt), 0);
    std::deque<int> queue{g.start()};
    reachable[static_cast<size_t>(g.start())] = 1;
    while (!queue.empty()) {
        const int a = queue.front();
        queue.pop_front();
        for (int rid : g.rules_of(a)) {
            for (const SymbolRef& s : g.rule(rid).rhs) {
                if (!s.is_terminal() && !reachable[static_cast<size_t>(s.id)]) {
                    reachable[static_cast<size_t>(s.id)] = 1;
                    queue.push_back(s.id);
                }
            }
        }
    }
    for (int a = 0; a < num_nt; ++a) {
        if (!reachable[static_cast<size_t>(a)]) report.unreachable.push_back(a);
    }

    // Productivity fixpoint: a nonterminal is productive once some rule has an
    // all-productive rhs (terminals count as productive).
    std::vector<char> productive(static_cast<size_t>(num_nt), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < num_nt; ++a) {
            if (productive[static_cast<size_t>(a)]) continue;
            for (int rid : g.rules_of(a)) {
                bool all = true;
                for (const SymbolRef& s : g.rule(rid).rhs) {
                    if (!s.is_terminal() && !productive[static_cast<size_t>(s.id)]) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    productive[static_cast<size_t>(a)] = 1;
                    changed = true;
                    break;
                }
            }
        }
    }
    for (int a = 0; a < num_nt; ++a) {
        if (!productive[static_cast<size_t>(a)]) report.nonproductive.push_back(a);
    }

    report.ok = report.max_sum_deviation <= kProbSumTolerance && report.unreachable.empty() &&
                report.nonproductive.empty();
    return report;
}

}  // namespace pcfgkit
