#pragma once

#include "conftc/ring.hpp"

namespace conftc {

/// Key of one term of the s-fold tensor power: one basis monomial per slot.
struct TensorMonomial {
    std::vector<Monomial> slots;

    int total_factors() const {
        int r = 0;
        for (const Monomial& m : slots)
            r += m.size();
        return r;
    }
    int degree(const RingSpec& spec) const { return total_factors() * spec.gen_degree(); }
    bool is_unit() const { return total_factors() == 0; }

    friend bool operator==(const TensorMonomial&, const TensorMonomial&) = default;
};

/// Descending total degree, then slotwise comparison by the ring term order.
struct TensorTermOrder {
    bool operator()(const TensorMonomial& a, const TensorMonomial& b) const {
        int da = a.total_factors(), db = b.total_factors();
        if (da != db)
            return da > db;
        for (size_t l = 0; l < a.slots.size() && l < b.slots.size(); ++l) {
            if (!(a.slots[l] == b.slots[l]))
                return TermOrder{}(a.slots[l], b.slots[l]);
        }
        return a.slots.size() < b.slots.size();
    }
};

using TensorTermMap = std::map<TensorMonomial, Int, TensorTermOrder>;

/// Element of H*(X)^{tensor s}: sparse map from slot-monomial tuples to
/// coefficients. The Koszul sign is +1 in both supported coefficient regimes
/// (generators have even degree over Z, or coefficients are mod 2), so the
/// product is plain slotwise multiplication.
class TensorElement {
public:
    TensorElement() = default;
    TensorElement(const RingSpec& spec, int s);

    static TensorElement zero(const RingSpec& spec, int s) { return {spec, s}; }
    static TensorElement one(const RingSpec& spec, int s);
    static TensorElement scalar(const RingSpec& spec, int s, Int c);

    const RingSpec& spec() const { return spec_; }
    int slot_count() const { return s_; }
    const TensorTermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }

    /// Total degree if homogeneous (zero element reports 0), nullopt if mixed.
    std::optional<int> degree() const;

    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement operator-() const;
    TensorElement operator*(const TensorElement& o) const;
    TensorElement operator*(const Int& c) const;
    TensorElement pow(int k) const;

    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return a.spec_ == b.spec_ && a.s_ == b.s_ && a.terms_ == b.terms_;
    }

    std::string str() const;

    void accumulate_term(const TensorMonomial& mon, const Int& coeff);

private:
    RingSpec spec_;
    int s_ = 2;
    TensorTermMap terms_;

    void check_compatible(const TensorElement& o) const;
};

/// a placed in slot l (1-based), units elsewhere.
TensorElement inject(const Element& a, int slot, int s);

TensorElement tmultiply(const TensorElement& a, const TensorElement& b);

/// Multiplies the slot components inside the single ring; the ring
/// homomorphism induced by the iterated thin diagonal.
Element diagonal_pullback(const TensorElement& a);

/// Spanning set of the degree-(m-1) kernel of diagonal_pullback:
/// { A[i,j]@l - A[i,j]@1 : l = 2..s, (i,j) a generator }.
std::vector<TensorElement> kernel_degree1_basis(const RingSpec& spec, int s);

/// Reinterprets a in a tensor power with more slots (units in the new ones).
TensorElement widen(const TensorElement& a, int new_s);

TensorElement relabel(const TensorElement& a, const std::vector<int>& perm);

std::string tensor_monomial_str(const TensorMonomial& mon);

}  // namespace conftc
