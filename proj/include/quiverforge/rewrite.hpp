#pragma once

#include "quiverforge/algebra.hpp"

#include <vector>

namespace qf {

// One oriented rewriting rule lhs -> rhs with lhs strictly larger than every
// monomial of rhs in the algebra's monomial order.
struct RewriteRule {
    PathMonomial lhs;
    AlgebraElement rhs;
};

// Degree-bounded completion of a relation ideal (truncated diamond lemma).
// All overlap and inclusion ambiguities whose overlap word has weighted
// degree <= effort are resolved, so for deg f <= effort, reduce(f) == 0 is
// exactly membership in the span of {p·g·q : deg <= effort}, and distinct
// irreducible elements are distinct modulo that span.  reduce also accepts
// larger elements; a zero result is still a valid membership certificate,
// a nonzero result proves nothing.
class RuleSet {
public:
    RuleSet(const QuiverAlgebra& a, int effort_degree);

    AlgebraElement reduce(AlgebraElement f) const;
    bool proves_zero(const AlgebraElement& f) const { return reduce(std::move(f)).is_zero(); }

    int effort() const { return effort_; }
    std::size_t rule_count() const { return rules_.size(); }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    // false when an input relation exceeded the effort degree and was dropped
    bool saturated() const { return saturated_; }

private:
    // self-contained copies: a RuleSet may outlive the algebra that built it
    Quiver quiver_;
    std::map<int, int> weight_;
    int effort_ = 0;
    bool saturated_ = true;
    std::vector<RewriteRule> rules_;
    std::map<int, std::vector<std::size_t>> by_first_arrow_;

    long long weighted_degree(const PathMonomial& m) const;
    bool mono_less(const PathMonomial& a, const PathMonomial& b) const;
    struct Match {
        std::size_t rule;
        std::size_t pos;
    };
    std::optional<Match> find_match(const PathMonomial& m) const;
    void add_rule(AlgebraElement f, std::vector<AlgebraElement>& pending);
    void push_ambiguities(std::size_t new_rule, std::vector<AlgebraElement>& pending);
};

} // namespace qf
