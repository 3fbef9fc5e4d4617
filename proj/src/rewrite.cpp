#include "quiverforge/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

namespace qf {

long long RuleSet::weighted_degree(const PathMonomial& m) const {
    long long d = 0;
    for (int a : m.arrows) d += weight_.at(a);
    return d;
}

bool RuleSet::mono_less(const PathMonomial& a, const PathMonomial& b) const {
    long long da = weighted_degree(a), db = weighted_degree(b);
    if (da != db) return da < db;
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.arrows != b.arrows) return a.arrows < b.arrows;
    return a.vertex < b.vertex;
}

std::optional<RuleSet::Match> RuleSet::find_match(const PathMonomial& m) const {
    for (std::size_t pos = 0; pos < m.arrows.size(); ++pos) {
        auto it = by_first_arrow_.find(m.arrows[pos]);
        if (it == by_first_arrow_.end()) continue;
        for (std::size_t idx : it->second) {
            const auto& l = rules_[idx].lhs.arrows;
            if (pos + l.size() > m.arrows.size()) continue;
            if (std::equal(l.begin(), l.end(), m.arrows.begin() + long(pos)))
                return Match{idx, pos};
        }
    }
    return std::nullopt;
}

AlgebraElement RuleSet::reduce(AlgebraElement f) const {
    while (true) {
        // largest reducible monomial; leftmost position, lowest rule id there
        const PathMonomial* target = nullptr;
        Match match{};
        for (const auto& [m, c] : f.terms()) {
            if (target && mono_less(m, *target)) continue;
            auto hit = find_match(m);
            if (hit) {
                target = &m;
                match = *hit;
            }
        }
        if (!target) return f;
        const RewriteRule& rule = rules_[match.rule];
        PathMonomial m = *target;
        Scalar c = f.coeff(m);
        PathMonomial prefix =
            match.pos == 0 ? PathMonomial::trivial(monomial_head(m, quiver_))
                           : PathMonomial::word({m.arrows.begin(), m.arrows.begin() + long(match.pos)});
        std::size_t end = match.pos + rule.lhs.arrows.size();
        PathMonomial suffix =
            end == m.arrows.size()
                ? PathMonomial::trivial(monomial_tail(m, quiver_))
                : PathMonomial::word({m.arrows.begin() + long(end), m.arrows.end()});
        f.add_term(m, -c);
        AlgebraElement replaced =
            multiply(quiver_, AlgebraElement::term(prefix, Scalar::one()),
                     multiply(quiver_, rule.rhs, AlgebraElement::term(suffix, Scalar::one())));
        f += replaced.scaled(c);
    }
}

void RuleSet::add_rule(AlgebraElement f, std::vector<AlgebraElement>& pending) {
    f = reduce(std::move(f));
    if (f.is_zero()) return;
    // leading monomial under the engine order
    const PathMonomial* lm = nullptr;
    for (const auto& [m, c] : f.terms())
        if (!lm || mono_less(*lm, m)) lm = &m;
    if (lm->is_trivial())
        throw std::domain_error("relation ideal contains a unit component; quotient degenerates");
    if (weighted_degree(*lm) > effort_) {
        saturated_ = false; // relation out of reach at this effort; sound to drop
        return;
    }
    Scalar c = f.coeff(*lm);
    AlgebraElement rhs =
        AlgebraElement::term(*lm, Scalar::one()) - f.scaled(c.inverse());
    PathMonomial lhs = *lm;
    rules_.push_back({std::move(lhs), std::move(rhs)});
    by_first_arrow_[rules_.back().lhs.arrows.front()].push_back(rules_.size() - 1);
    push_ambiguities(rules_.size() - 1, pending);
}

void RuleSet::push_ambiguities(std::size_t ni, std::vector<AlgebraElement>& pending) {
    auto as_elem = [](const PathMonomial& m) {
        return AlgebraElement::term(m, Scalar::one());
    };
    auto segment = [&](const std::vector<int>& w, std::size_t b, std::size_t e,
                       int trivial_vertex) {
        if (b == e) return PathMonomial::trivial(trivial_vertex);
        return PathMonomial::word({w.begin() + long(b), w.begin() + long(e)});
    };
    auto push = [&](AlgebraElement spoly) {
        spoly = reduce(std::move(spoly));
        if (!spoly.is_zero()) pending.push_back(std::move(spoly));
    };
    for (std::size_t oj = 0; oj < rules_.size(); ++oj) {
        std::vector<std::pair<std::size_t, std::size_t>> ordered{{ni, oj}};
        if (oj != ni) ordered.push_back({oj, ni});
        for (auto [i, j] : ordered) {
            const auto& li = rules_[i].lhs.arrows;
            const auto& lj = rules_[j].lhs.arrows;
            // proper overlap: nonempty proper suffix of l_i = proper prefix of l_j
            for (std::size_t o = 1; o < li.size() && o < lj.size(); ++o) {
                if (!std::equal(li.end() - long(o), li.end(), lj.begin())) continue;
                // W = l_i · tail(l_j); two reductions of W
                PathMonomial tail_j = segment(lj, o, lj.size(), -1); // nonempty: o < |l_j|
                PathMonomial head_i = segment(li, 0, li.size() - o, -1);
                long long wdeg = weighted_degree(rules_[i].lhs) + weighted_degree(tail_j);
                if (wdeg > effort_) continue;
                AlgebraElement way1 = multiply(quiver_, rules_[i].rhs, as_elem(tail_j));
                AlgebraElement way2 = multiply(quiver_, as_elem(head_i), rules_[j].rhs);
                push(way1 - way2);
            }
            // containment: l_i a proper subword of l_j
            if (li.size() < lj.size()) {
                for (std::size_t pos = 0; pos + li.size() <= lj.size(); ++pos) {
                    if (!std::equal(li.begin(), li.end(), lj.begin() + long(pos))) continue;
                    PathMonomial u = segment(lj, 0, pos,
                                             monomial_head(rules_[j].lhs, quiver_));
                    PathMonomial w = segment(lj, pos + li.size(), lj.size(),
                                             monomial_tail(rules_[j].lhs, quiver_));
                    AlgebraElement inner = multiply(
                        quiver_, as_elem(u), multiply(quiver_, rules_[i].rhs, as_elem(w)));
                    push(rules_[j].rhs - inner);
                }
            }
        }
    }
}

RuleSet::RuleSet(const QuiverAlgebra& a, int effort_degree)
    : quiver_(a.quiver()), effort_(effort_degree) {
    for (const auto& arrow : quiver_.arrows) weight_[arrow.id] = a.arrow_weight(arrow.id);
    std::vector<AlgebraElement> pending(a.relations().rbegin(), a.relations().rend());
    while (!pending.empty()) {
        AlgebraElement f = std::move(pending.back());
        pending.pop_back();
        add_rule(std::move(f), pending);
    }
    // canonicalize: right-hand sides in normal form (irreducibility of an
    // element is structural, so one pass reaches the fixpoint)
    for (auto& r : rules_) r.rhs = reduce(r.rhs);
}

} // namespace qf
