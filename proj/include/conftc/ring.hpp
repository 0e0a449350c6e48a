#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace conftc {

using Int = boost::multiprecision::cpp_int;

enum class Coeff { Integers, Mod2 };

std::string to_string(Coeff c);

/// Parameters fixing one cohomology ring of an ordered configuration space
/// of m-space with p punctures and n moving points. Generators A[i,j]
/// (1 <= j < i <= p+n, i >= p+1) all live in degree m-1.
struct RingSpec {
    int m = 3;
    int n = 1;
    int p = 0;
    Coeff coeff = Coeff::Integers;

    int points() const { return p + n; }
    int gen_degree() const { return m - 1; }
    bool punctured() const { return p > 0; }
    // smallest admissible first index of a surviving generator
    int min_first_index() const { return p > 0 ? p + 1 : 2; }
    // maximal number of factors in a nonzero basis monomial
    int top_factors() const { return p > 0 ? n : n - 1; }
    bool mod2() const { return coeff == Coeff::Mod2; }

    Int module_rank() const;  // (p+n)!/p!

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// Validates parameters. Signed coefficients are only supported for odd m
/// (rejects with "unsupported-signed-even-m" otherwise).
RingSpec make_ring(int m, int n, int p, Coeff coeff);

struct Generator {
    int i = 0;
    int j = 0;
    auto operator<=>(const Generator&) const = default;
};

using Word = std::vector<Generator>;

/// True iff A[i,j] is a generator of the ring given by spec.
bool is_valid_generator(const RingSpec& spec, int i, int j);
/// All generators, ordered by (i, j) ascending.
std::vector<Generator> generators(const RingSpec& spec);

/// Basis monomial: factors with strictly decreasing first index,
/// all first indices >= p+1.
struct Monomial {
    Word factors;

    int size() const { return static_cast<int>(factors.size()); }
    bool is_unit() const { return factors.empty(); }
    int degree(const RingSpec& spec) const { return size() * spec.gen_degree(); }

    auto operator<=>(const Monomial&) const = default;
};

/// Canonical term order: descending degree, then descending lexicographic
/// on the factor lists. This is the order elements print in.
struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.factors.size() != b.factors.size())
            return a.factors.size() > b.factors.size();
        return a.factors > b.factors;
    }
};

using TermMap = std::map<Monomial, Int, TermOrder>;

/// Sparse sum of basis monomials with exact coefficients. Immutable value
/// semantics; all arithmetic returns fully normalized elements.
class Element {
public:
    Element() = default;
    explicit Element(const RingSpec& spec) : spec_(spec) {}

    static Element zero(const RingSpec& spec) { return Element(spec); }
    static Element one(const RingSpec& spec);
    static Element scalar(const RingSpec& spec, Int c);
    static Element generator(const RingSpec& spec, int i, int j);
    /// Normal form of a single coefficient*word product.
    static Element from_word(const RingSpec& spec, const Word& word, Int coeff = 1);

    const RingSpec& spec() const { return spec_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    /// Degree if homogeneous (zero element reports degree 0), nullopt if mixed.
    std::optional<int> degree() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element operator*(const Int& c) const;
    Element pow(int k) const;

    friend bool operator==(const Element& a, const Element& b) {
        return a.spec_ == b.spec_ && a.terms_ == b.terms_;
    }

    std::string str() const;

    /// Adds coeff * word (an arbitrary generator product) in normal form.
    void accumulate_word(const Word& word, const Int& coeff);
    /// Adds coeff * (already normal-form) monomial.
    void accumulate_term(const Monomial& mon, const Int& coeff);

private:
    RingSpec spec_;
    TermMap terms_;

    void check_compatible(const Element& o) const;
};

/// Unique expansion of coeff * word in basis monomials (Arnold rewriting).
Element normal_form(const RingSpec& spec, const Word& word, Int coeff = 1);

/// Rewrite-order-randomized normalizer; agrees with normal_form for every
/// choice of rewrite order (confluence).
Element normal_form_randomized(const RingSpec& spec, const Word& word, Int coeff,
                               std::mt19937_64& rng);

Element multiply(const Element& a, const Element& b);
bool is_zero(const Element& a);
bool equals(const Element& a, const Element& b);

/// All basis monomials with exactly r factors, in canonical term order.
/// Requires 0 <= r <= n.
std::vector<Monomial> basis(const RingSpec& spec, int r);

/// Ring automorphism induced by relabeling the movable points. perm must be a
/// permutation of {1, .., p+n} fixing {1, .., p}; transposing the indices of a
/// generator contributes a sign of (-1)^m.
Element relabel(const Element& a, const std::vector<int>& perm);

/// Coefficients of prod_{k=p}^{p+n-1} (1 + k t); entry r counts the basis
/// monomials with r factors.
std::vector<Int> poincare_coefficients(const RingSpec& spec);

std::string monomial_str(const Monomial& mon);

}  // namespace conftc
