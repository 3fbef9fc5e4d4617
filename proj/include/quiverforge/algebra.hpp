#pragma once

#include "quiverforge/quiver.hpp"
#include "quiverforge/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qf {

// A basis path: either the trivial path e_v or a nonempty arrow word.
// Words read right to left: arrows.back() acts first, arrows.front() last,
// so head(m) = head(arrows.front()) and tail(m) = tail(arrows.back()).
struct PathMonomial {
    std::vector<int> arrows;
    int vertex = -1; // meaningful only for the trivial path

    static PathMonomial trivial(int v) { return {{}, v}; }
    static PathMonomial word(std::vector<int> a) { return {std::move(a), -1}; }
    bool is_trivial() const { return arrows.empty(); }
    std::size_t length() const { return arrows.size(); }

    auto operator<=>(const PathMonomial&) const = default;
};

int monomial_head(const PathMonomial& m, const Quiver& q);
int monomial_tail(const PathMonomial& m, const Quiver& q);
bool monomial_composable(const PathMonomial& left, const PathMonomial& right, const Quiver& q);
PathMonomial monomial_concat(const PathMonomial& left, const PathMonomial& right);

// Finite linear combination of paths.  Stored with structurally ordered keys
// and no zero coefficients.
class AlgebraElement {
public:
    static AlgebraElement zero() { return {}; }
    static AlgebraElement unit(int vertex); // e_v
    static AlgebraElement term(PathMonomial m, Scalar c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<PathMonomial, Scalar>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    Scalar coeff(const PathMonomial& m) const;
    std::size_t max_length() const;

    void add_term(const PathMonomial& m, const Scalar& c); // accumulate, prune zeros

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement scaled(const Scalar& c) const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

private:
    std::map<PathMonomial, Scalar> terms_;
};

// head/tail shared by all terms; nullopt for 0 or mixed elements
struct VertexType {
    int head, tail;
};
std::optional<VertexType> homogeneous_type(const AlgebraElement& f, const Quiver& q);

// Bilinear extension of path concatenation; non-composable products vanish.
AlgebraElement multiply(const Quiver& q, const AlgebraElement& a, const AlgebraElement& b);

std::string to_string(const PathMonomial& m, const Quiver& q);
std::string to_string(const AlgebraElement& f, const Quiver& q);

class RuleSet;

// Path algebra with relations.  Immutable after construction; degree-bounded
// completions of the relation ideal are cached per effort degree and shared
// between copies.
class QuiverAlgebra {
public:
    QuiverAlgebra() = default;
    QuiverAlgebra(Quiver q, std::vector<AlgebraElement> relations,
                  std::vector<std::pair<int, int>> inverse_pairs = {},
                  std::map<int, int> arrow_weight = {});

    const Quiver& quiver() const { return q_; }
    const std::vector<AlgebraElement>& relations() const { return rels_; }
    // (added inverse arrow, original arrow) pairs; original -1 for matrix
    // localizations where the inverted entry is not a single arrow
    const std::vector<std::pair<int, int>>& inverse_pairs() const { return inv_; }
    bool is_inverse_arrow(int arrow_id) const;

    // path-length grading weight (>= 1, default 1)
    long long arrow_weight(int arrow_id) const;
    long long degree(const PathMonomial& m) const;
    long long degree(const AlgebraElement& f) const; // max over terms; 0 for f = 0

    // monomial order used by the rewriting engine: weighted degree, then
    // length, then the arrow word lexicographically by id
    bool mono_less(const PathMonomial& a, const PathMonomial& b) const;

    std::shared_ptr<const RuleSet> completion(int effort_degree) const;

private:
    Quiver q_;
    std::vector<AlgebraElement> rels_;
    std::vector<std::pair<int, int>> inv_;
    std::map<int, int> weight_;
    struct CacheBox {
        std::mutex mu;
        std::map<int, std::shared_ptr<const RuleSet>> completions;
    };
    std::shared_ptr<CacheBox> cache_ = std::make_shared<CacheBox>();
};

enum class Membership { ProvedMember, NotFound };

// PROVED-MEMBER iff f reduces to zero against the effort-bounded completion;
// equivalent to membership in the span of {p·g·q : deg <= effortDegree}.
// NOT-FOUND proves nothing.  Requires deg f <= effortDegree.
Membership ideal_membership(const AlgebraElement& f, const QuiverAlgebra& a, int effort_degree);

// Deterministic representative of f modulo the degree-bounded relation span.
AlgebraElement normal_form(const AlgebraElement& f, const QuiverAlgebra& a, int effort_degree);

// Multiplicative extension of sigma (arrows not listed map to themselves),
// truncated at path length truncation_degree.
AlgebraElement substitute(const AlgebraElement& f, const std::map<int, AlgebraElement>& sigma,
                          const Quiver& q, int truncation_degree);

// Drop every term whose path length exceeds max_length.
AlgebraElement truncate_length(const AlgebraElement& f, long max_length);

// Cohomological degree of a monomial (sum of Arrow::degree); the element
// versions require homogeneity and return nullopt for 0 / mixed degrees.
long long cohomological_degree(const PathMonomial& m, const Quiver& q);
std::optional<long long> cohomological_degree(const AlgebraElement& f, const Quiver& q);

// Extension of d: arrows -> elements as a graded derivation with Koszul signs
// (-1)^{cohomological degree of the left factor}.  Arrows not listed get d=0.
AlgebraElement apply_derivation(const QuiverAlgebra& a, const std::map<int, AlgebraElement>& d,
                                const AlgebraElement& f);

// True iff every d(image) is graded correctly (degree +1, matching endpoints),
// d(r) is proved-member for every relation, and d^2(generator) is
// proved-member for every arrow.  Endpoint mismatches throw; a wrong
// cohomological degree fails the check.
bool check_dg(const QuiverAlgebra& a, const std::map<int, AlgebraElement>& d, int effort_degree);

// Gauss valuation: min over terms of scalar valuation + sum of arrow weights
// (missing weights are 0).  nullopt encodes val(0) = +infinity.
std::optional<Rat> valuation(const AlgebraElement& f, const std::map<int, Rat>& weights);

} // namespace qf
