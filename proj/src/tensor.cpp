#include "conftc/tensor.hpp"

#include <sstream>
#include <stdexcept>

namespace conftc {

namespace {

void reduce_coeff(const RingSpec& spec, Int& c) {
    if (spec.mod2()) {
        c %= 2;
        if (c < 0)
            c += 2;
    }
}

}  // namespace

TensorElement::TensorElement(const RingSpec& spec, int s) : spec_(spec), s_(s) {
    if (s < 2)
        throw std::invalid_argument("tensor power: require s >= 2");
}

TensorElement TensorElement::one(const RingSpec& spec, int s) {
    return scalar(spec, s, 1);
}

TensorElement TensorElement::scalar(const RingSpec& spec, int s, Int c) {
    TensorElement e(spec, s);
    reduce_coeff(spec, c);
    if (c != 0)
        e.terms_[TensorMonomial{std::vector<Monomial>(s)}] = std::move(c);
    return e;
}

void TensorElement::accumulate_term(const TensorMonomial& mon, const Int& coeff) {
    Int& slot = terms_[mon];
    slot += coeff;
    reduce_coeff(spec_, slot);
    if (slot == 0)
        terms_.erase(mon);
}

std::optional<int> TensorElement::degree() const {
    if (terms_.empty())
        return 0;
    int d = terms_.begin()->first.degree(spec_);
    for (const auto& [mon, c] : terms_)
        if (mon.degree(spec_) != d)
            return std::nullopt;
    return d;
}

void TensorElement::check_compatible(const TensorElement& o) const {
    if (!(spec_ == o.spec_) || s_ != o.s_)
        throw std::invalid_argument("tensor power mismatch");
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    check_compatible(o);
    TensorElement r = *this;
    for (const auto& [mon, c] : o.terms_)
        r.accumulate_term(mon, c);
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    check_compatible(o);
    TensorElement r = *this;
    for (const auto& [mon, c] : o.terms_)
        r.accumulate_term(mon, -c);
    return r;
}

TensorElement TensorElement::operator-() const {
    TensorElement r(spec_, s_);
    for (const auto& [mon, c] : terms_) {
        Int neg = -c;
        reduce_coeff(spec_, neg);
        if (neg != 0)
            r.terms_[mon] = std::move(neg);
    }
    return r;
}

TensorElement TensorElement::operator*(const TensorElement& o) const {
    check_compatible(o);
    TensorElement r(spec_, s_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            // slotwise products, then distribute over the per-slot expansions
            std::vector<Element> per_slot(s_);
            bool dead = false;
            for (int l = 0; l < s_ && !dead; ++l) {
                Word w = ma.slots[l].factors;
                w.insert(w.end(), mb.slots[l].factors.begin(), mb.slots[l].factors.end());
                per_slot[l] = Element::from_word(spec_, w);
                dead = per_slot[l].is_zero();
            }
            if (dead)
                continue;
            TensorMonomial key{std::vector<Monomial>(s_)};
            Int coeff = ca * cb;
            // cartesian product over the per-slot terms
            std::vector<TermMap::const_iterator> its(s_);
            for (int l = 0; l < s_; ++l)
                its[l] = per_slot[l].terms().begin();
            while (true) {
                Int c = coeff;
                for (int l = 0; l < s_; ++l) {
                    key.slots[l] = its[l]->first;
                    c *= its[l]->second;
                }
                r.accumulate_term(key, c);
                int l = s_ - 1;
                while (l >= 0 && ++its[l] == per_slot[l].terms().end()) {
                    its[l] = per_slot[l].terms().begin();
                    --l;
                }
                if (l < 0)
                    break;
            }
        }
    }
    return r;
}

TensorElement TensorElement::operator*(const Int& c) const {
    TensorElement r(spec_, s_);
    for (const auto& [mon, co] : terms_) {
        Int v = co * c;
        reduce_coeff(spec_, v);
        if (v != 0)
            r.terms_[mon] = std::move(v);
    }
    return r;
}

TensorElement TensorElement::pow(int k) const {
    if (k < 0)
        throw std::invalid_argument("pow: negative exponent");
    TensorElement r = one(spec_, s_);
    for (int t = 0; t < k; ++t)
        r = r * *this;
    return r;
}

TensorElement inject(const Element& a, int slot, int s) {
    if (slot < 1 || slot > s)
        throw std::invalid_argument("inject: slot out of range");
    TensorElement r(a.spec(), s);
    for (const auto& [mon, c] : a.terms()) {
        TensorMonomial key{std::vector<Monomial>(s)};
        key.slots[slot - 1] = mon;
        r.accumulate_term(key, c);
    }
    return r;
}

TensorElement tmultiply(const TensorElement& a, const TensorElement& b) {
    return a * b;
}

Element diagonal_pullback(const TensorElement& a) {
    Element r(a.spec());
    for (const auto& [mon, c] : a.terms()) {
        Word w;
        for (const Monomial& m : mon.slots)
            w.insert(w.end(), m.factors.begin(), m.factors.end());
        r.accumulate_word(w, c);
    }
    return r;
}

std::vector<TensorElement> kernel_degree1_basis(const RingSpec& spec, int s) {
    if (s < 2)
        throw std::invalid_argument("kernel_degree1_basis: require s >= 2");
    std::vector<TensorElement> out;
    for (const Generator& g : generators(spec)) {
        Element a = Element::generator(spec, g.i, g.j);
        for (int l = 2; l <= s; ++l)
            out.push_back(inject(a, l, s) - inject(a, 1, s));
    }
    return out;
}

TensorElement widen(const TensorElement& a, int new_s) {
    if (new_s < a.slot_count())
        throw std::invalid_argument("widen: cannot shrink slot count");
    TensorElement r(a.spec(), new_s);
    for (const auto& [mon, c] : a.terms()) {
        TensorMonomial key{mon.slots};
        key.slots.resize(new_s);
        r.accumulate_term(key, c);
    }
    return r;
}

TensorElement relabel(const TensorElement& a, const std::vector<int>& perm) {
    TensorElement r(a.spec(), a.slot_count());
    for (const auto& [mon, c] : a.terms()) {
        // relabel each slot independently, then redistribute the expansions
        std::vector<Element> per_slot;
        per_slot.reserve(mon.slots.size());
        for (const Monomial& m : mon.slots) {
            Element e(a.spec());
            e.accumulate_term(m, 1);
            per_slot.push_back(relabel(e, perm));
        }
        TensorElement term = TensorElement::scalar(a.spec(), a.slot_count(), c);
        for (size_t l = 0; l < per_slot.size(); ++l) {
            TensorElement slot_el(a.spec(), a.slot_count());
            for (const auto& [m2, c2] : per_slot[l].terms()) {
                TensorMonomial key{std::vector<Monomial>(a.slot_count())};
                key.slots[l] = m2;
                slot_el.accumulate_term(key, c2);
            }
            term = term * slot_el;
        }
        r = r + term;
    }
    return r;
}

std::string tensor_monomial_str(const TensorMonomial& mon) {
    if (mon.is_unit())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (size_t l = 0; l < mon.slots.size(); ++l) {
        for (const Generator& g : mon.slots[l].factors) {
            if (!first)
                os << "*";
            os << "A[" << g.i << "," << g.j << "]@" << l + 1;
            first = false;
        }
    }
    return os.str();
}

std::string TensorElement::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mon, c] : terms_) {
        Int a = c;
        bool neg = a < 0;
        if (neg)
            a = -a;
        if (first) {
            if (neg)
                os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (mon.is_unit()) {
            os << a;
        } else {
            if (a != 1)
                os << a << "*";
            os << tensor_monomial_str(mon);
        }
        first = false;
    }
    return os.str();
}

}  // namespace conftc
