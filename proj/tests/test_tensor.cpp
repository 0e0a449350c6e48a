#include "conftc/tensor.hpp"

#include <doctest.h>

#include <random>

using namespace conftc;

namespace {

TensorElement random_tensor(const RingSpec& spec, int s, std::mt19937_64& rng, int terms) {
    auto gens = generators(spec);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> len(0, 2);
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> slot(1, s);
    TensorElement e = TensorElement::zero(spec, s);
    for (int t = 0; t < terms; ++t) {
        TensorElement term = TensorElement::scalar(spec, s, coeff(rng));
        int k = len(rng);
        for (int f = 0; f < k; ++f) {
            const Generator& g = gens[pick(rng)];
            term = term * inject(Element::generator(spec, g.i, g.j), slot(rng), s);
        }
        e = e + term;
    }
    return e;
}

}  // namespace

TEST_CASE("inject places an element in one slot") {
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    Element a = Element::generator(spec, 2, 1);
    TensorElement t = inject(a, 2, 3);
    CHECK(t.slot_count() == 3);
    CHECK(t.term_count() == 1);
    CHECK(t.str() == "A[2,1]@2");
    CHECK(t.degree() == 2);
    CHECK_THROWS_AS(inject(a, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(inject(a, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(TensorElement(spec, 1), std::invalid_argument);
}

TEST_CASE("inject is multiplicative slotwise") {
    std::mt19937_64 rng(3);
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    Element a = Element::generator(spec, 3, 2) + Element::generator(spec, 2, 1);
    Element b = Element::generator(spec, 3, 1) - Element::one(spec);
    for (int slot = 1; slot <= 2; ++slot)
        CHECK(inject(a * b, slot, 2) == inject(a, slot, 2) * inject(b, slot, 2));
    (void)rng;
}

TEST_CASE("slot rewriting applies the ring relations inside each slot") {
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    Element a32 = Element::generator(spec, 3, 2);
    Element a31 = Element::generator(spec, 3, 1);
    TensorElement prod = inject(a32, 1, 2) * inject(a31, 1, 2);
    CHECK(prod == inject(a32 * a31, 1, 2));
    CHECK(prod.str() == "A[3,2]@1*A[2,1]@1 - A[3,1]@1*A[2,1]@1");
    // squares vanish inside a slot and kill the whole tensor term
    CHECK((inject(a31, 2, 2) * inject(a31, 2, 2)).is_zero());
}

TEST_CASE("distinct slots never interfere") {
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    Element a = Element::generator(spec, 3, 2) + Element::generator(spec, 3, 1);
    Element b = Element::generator(spec, 2, 1) - Element::generator(spec, 3, 1);
    TensorElement prod = inject(a, 1, 2) * inject(b, 2, 2);
    CHECK(prod.term_count() == a.term_count() * b.term_count());
    CHECK(prod.degree() == 4);
}

TEST_CASE("tensor multiplication is commutative, associative, distributive") {
    std::mt19937_64 rng(17);
    for (Coeff c : {Coeff::Integers, Coeff::Mod2}) {
        RingSpec spec = make_ring(c == Coeff::Integers ? 3 : 2, 3, 0, c);
        for (int trial = 0; trial < 15; ++trial) {
            TensorElement a = random_tensor(spec, 2, rng, 3);
            TensorElement b = random_tensor(spec, 2, rng, 3);
            TensorElement d = random_tensor(spec, 2, rng, 2);
            CHECK(a * b == b * a);
            CHECK((a * b) * d == a * (b * d));
            CHECK(a * (b + d) == a * b + a * d);
            CHECK(tmultiply(a, b) == a * b);
        }
    }
}

TEST_CASE("scalars, units and powers") {
    RingSpec spec = make_ring(2, 3, 0, Coeff::Mod2);
    TensorElement one = TensorElement::one(spec, 2);
    TensorElement a = inject(Element::generator(spec, 3, 1), 1, 2);
    CHECK(one * a == a);
    CHECK(TensorElement::scalar(spec, 2, 2).is_zero());
    CHECK(a.pow(0) == one);
    CHECK(a.pow(1) == a);
    CHECK(a.pow(2).is_zero());
    TensorElement b = a + inject(Element::generator(spec, 3, 1), 2, 2);
    CHECK(b.pow(3) == b * b * b);
}

TEST_CASE("degree reports total homogeneity across slots") {
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    TensorElement a = inject(Element::generator(spec, 3, 1), 1, 2);
    TensorElement b = inject(Element::generator(spec, 2, 1), 2, 2);
    CHECK((a * b).degree() == 4);
    CHECK((a + b).degree() == 2);  // homogeneous across different slots
    CHECK((a + TensorElement::one(spec, 2)).degree() == std::nullopt);
    CHECK(TensorElement::zero(spec, 2).degree() == 0);
}

TEST_CASE("diagonal_pullback multiplies the slots together in the single ring") {
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    Element a32 = Element::generator(spec, 3, 2);
    Element a31 = Element::generator(spec, 3, 1);
    TensorElement t = inject(a32, 1, 2) * inject(a31, 2, 2);
    CHECK(equals(diagonal_pullback(t), a32 * a31));
    CHECK(equals(diagonal_pullback(inject(a31, 1, 2)), a31));
    CHECK(equals(diagonal_pullback(TensorElement::one(spec, 2)), Element::one(spec)));
}

TEST_CASE("diagonal_pullback is a ring homomorphism") {
    std::mt19937_64 rng(4);
    for (Coeff c : {Coeff::Integers, Coeff::Mod2}) {
        RingSpec spec = make_ring(c == Coeff::Integers ? 3 : 2, 3, 0, c);
        for (int trial = 0; trial < 20; ++trial) {
            TensorElement a = random_tensor(spec, 3, rng, 3);
            TensorElement b = random_tensor(spec, 3, rng, 3);
            CHECK(equals(diagonal_pullback(a * b), diagonal_pullback(a) * diagonal_pullback(b)));
            CHECK(equals(diagonal_pullback(a + b), diagonal_pullback(a) + diagonal_pullback(b)));
        }
    }
}

TEST_CASE("kernel_degree1_basis spans differences of slots") {
    RingSpec spec = make_ring(2, 2, 2, Coeff::Mod2);
    auto kern = kernel_degree1_basis(spec, 2);
    // one difference per generator per extra slot
    CHECK(kern.size() == generators(spec).size() * 1);
    CHECK(kern.size() == 5);
    for (const TensorElement& k : kern) {
        CHECK(is_zero(diagonal_pullback(k)));
        CHECK(k.degree() == spec.gen_degree());
        CHECK(k.term_count() == 2);
    }
    auto kern3 = kernel_degree1_basis(spec, 3);
    CHECK(kern3.size() == 10);
    for (const TensorElement& k : kern3)
        CHECK(is_zero(diagonal_pullback(k)));
}

TEST_CASE("widen keeps the pullback and frees new slots") {
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    TensorElement t =
        inject(Element::generator(spec, 3, 1), 1, 2) * inject(Element::generator(spec, 2, 1), 2, 2);
    TensorElement w = widen(t, 4);
    CHECK(w.slot_count() == 4);
    CHECK(equals(diagonal_pullback(w), diagonal_pullback(t)));
    // the new slots are genuinely empty: multiplying into them never collides
    TensorElement u = w * inject(Element::generator(spec, 3, 1), 3, 4);
    CHECK(u.term_count() == w.term_count());
    CHECK_THROWS_AS(widen(t, 1), std::invalid_argument);
}

TEST_CASE("tensor relabel acts slotwise") {
    std::mt19937_64 rng(11);
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    std::vector<int> perm = {0, 2, 3, 1};
    for (int trial = 0; trial < 10; ++trial) {
        TensorElement a = random_tensor(spec, 2, rng, 3);
        TensorElement b = random_tensor(spec, 2, rng, 3);
        CHECK(relabel(a * b, perm) == relabel(a, perm) * relabel(b, perm));
    }
    Element g = Element::generator(spec, 2, 1);
    CHECK(relabel(inject(g, 2, 2), perm) == inject(relabel(g, perm), 2, 2));
}

TEST_CASE("tensor printing conventions") {
    RingSpec spec = make_ring(3, 3, 0, Coeff::Integers);
    TensorElement zero = TensorElement::zero(spec, 2);
    CHECK(zero.str() == "0");
    CHECK(TensorElement::one(spec, 2).str() == "1");
    CHECK(TensorElement::scalar(spec, 2, -4).str() == "-4");
    TensorElement t = inject(Element::generator(spec, 3, 2), 1, 2) *
                      inject(Element::generator(spec, 2, 1), 2, 2);
    CHECK(t.str() == "A[3,2]@1*A[2,1]@2");
    CHECK((t * Int(-1)).str() == "-A[3,2]@1*A[2,1]@2");
    CHECK((t * Int(3) - inject(Element::generator(spec, 2, 1), 1, 2)).str() ==
          "3*A[3,2]@1*A[2,1]@2 - A[2,1]@1");
    CHECK(tensor_monomial_str(TensorMonomial{{Monomial{}, Monomial{}}}) == "1");
}

TEST_CASE("mixed-spec operands are rejected") {
    RingSpec a = make_ring(3, 3, 0, Coeff::Integers);
    RingSpec b = make_ring(3, 2, 0, Coeff::Integers);
    TensorElement ta = TensorElement::one(a, 2);
    TensorElement tb = TensorElement::one(b, 2);
    CHECK_THROWS_AS(ta * tb, std::invalid_argument);
    CHECK_THROWS_AS(ta + widen(ta, 3), std::invalid_argument);
}
