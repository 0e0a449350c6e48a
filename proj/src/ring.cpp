#include "conftc/ring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conftc {

std::string to_string(Coeff c) {
    return c == Coeff::Integers ? "Z" : "Z2";
}

Int RingSpec::module_rank() const {
    Int r = 1;
    for (int k = p + 1; k <= p + n; ++k)
        r *= k;
    return r;
}

RingSpec make_ring(int m, int n, int p, Coeff coeff) {
    if (m < 2)
        throw std::invalid_argument("make_ring: require m >= 2");
    if (n < 1)
        throw std::invalid_argument("make_ring: require n >= 1");
    if (p < 0)
        throw std::invalid_argument("make_ring: require p >= 0");
    if (coeff == Coeff::Integers && m % 2 == 0)
        throw std::invalid_argument(
            "make_ring: unsupported-signed-even-m (use Mod2 coefficients when m is even)");
    return RingSpec{m, n, p, coeff};
}

bool is_valid_generator(const RingSpec& spec, int i, int j) {
    return 1 <= j && j < i && i <= spec.points() && i >= spec.p + 1;
}

std::vector<Generator> generators(const RingSpec& spec) {
    std::vector<Generator> gens;
    for (int i = spec.min_first_index(); i <= spec.points(); ++i)
        for (int j = 1; j < i; ++j)
            gens.push_back({i, j});
    return gens;
}

namespace {

void reduce_coeff(const RingSpec& spec, Int& c) {
    if (spec.mod2()) {
        c %= 2;
        if (c < 0)
            c += 2;
    }
}

// Branch stack item for the rewriting loop.
struct Pending {
    Word word;
    Int coeff;
};

}  // namespace

void Element::accumulate_term(const Monomial& mon, const Int& coeff) {
    Int& slot = terms_[mon];
    slot += coeff;
    reduce_coeff(spec_, slot);
    if (slot == 0)
        terms_.erase(mon);
}

void Element::accumulate_word(const Word& word, const Int& coeff) {
    // Each stack entry is coeff*word; rewriting replaces a pair of factors
    // sharing a first index and pushes the two resulting branches.
    std::vector<Pending> stack;
    stack.push_back({word, coeff});
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        Word& w = cur.word;

        if (spec_.punctured()) {
            // A factor with i <= p is a kernel generator of the quotient map,
            // so the whole branch dies in the punctured ring.
            bool killed = false;
            for (const Generator& g : w)
                if (g.i <= spec_.p) {
                    killed = true;
                    break;
                }
            if (killed)
                continue;
        }

        std::sort(w.begin(), w.end(),
                  [](const Generator& a, const Generator& b) { return b < a; });

        bool square = false;
        size_t pair_pos = w.size();
        for (size_t t = 0; t + 1 < w.size(); ++t) {
            if (w[t] == w[t + 1]) {
                square = true;
                break;
            }
            if (w[t].i == w[t + 1].i && pair_pos == w.size())
                pair_pos = t;
        }
        if (square)
            continue;

        if (pair_pos == w.size()) {
            // Normal form reached: strictly decreasing first indices.
            accumulate_term(Monomial{std::move(w)}, cur.coeff);
            continue;
        }

        // A[i,k] A[i,j] = (A[i,k] - A[i,j]) A[k,j]  with k > j (sorted).
        const int i = w[pair_pos].i;
        const int k = w[pair_pos].j;
        const int j = w[pair_pos + 1].j;
        if (spec_.punctured() && k <= spec_.p)
            continue;  // both second indices <= p: zero in the quotient
        Word w1 = w;
        w1[pair_pos] = {i, k};
        w1[pair_pos + 1] = {k, j};
        Word w2 = std::move(w);
        w2[pair_pos] = {i, j};
        w2[pair_pos + 1] = {k, j};
        Int neg = -cur.coeff;
        reduce_coeff(spec_, neg);
        stack.push_back({std::move(w1), cur.coeff});
        if (neg != 0)
            stack.push_back({std::move(w2), std::move(neg)});
    }
}

Element Element::one(const RingSpec& spec) {
    return scalar(spec, 1);
}

Element Element::scalar(const RingSpec& spec, Int c) {
    Element e(spec);
    reduce_coeff(spec, c);
    if (c != 0)
        e.terms_[Monomial{}] = std::move(c);
    return e;
}

Element Element::generator(const RingSpec& spec, int i, int j) {
    if (!is_valid_generator(spec, i, j)) {
        std::ostringstream os;
        os << "A[" << i << "," << j << "] is not a generator of the ring (m=" << spec.m
           << ", n=" << spec.n << ", p=" << spec.p << "): require 1 <= j < i <= " << spec.points()
           << " and i >= " << spec.p + 1;
        throw std::invalid_argument(os.str());
    }
    Element e(spec);
    e.terms_[Monomial{{Generator{i, j}}}] = 1;
    return e;
}

Element Element::from_word(const RingSpec& spec, const Word& word, Int coeff) {
    for (const Generator& g : word)
        if (!(1 <= g.j && g.j < g.i && g.i <= spec.points()))
            throw std::invalid_argument("from_word: invalid generator index");
    Element e(spec);
    reduce_coeff(spec, coeff);
    if (coeff != 0)
        e.accumulate_word(word, coeff);
    return e;
}

std::optional<int> Element::degree() const {
    if (terms_.empty())
        return 0;
    int d = terms_.begin()->first.degree(spec_);
    for (const auto& [mon, c] : terms_)
        if (mon.degree(spec_) != d)
            return std::nullopt;
    return d;
}

void Element::check_compatible(const Element& o) const {
    if (!(spec_ == o.spec_))
        throw std::invalid_argument("ring spec mismatch");
}

Element Element::operator+(const Element& o) const {
    check_compatible(o);
    Element r = *this;
    for (const auto& [mon, c] : o.terms_)
        r.accumulate_term(mon, c);
    return r;
}

Element Element::operator-(const Element& o) const {
    check_compatible(o);
    Element r = *this;
    for (const auto& [mon, c] : o.terms_)
        r.accumulate_term(mon, -c);
    return r;
}

Element Element::operator-() const {
    Element r(spec_);
    for (const auto& [mon, c] : terms_) {
        Int neg = -c;
        reduce_coeff(spec_, neg);
        if (neg != 0)
            r.terms_[mon] = std::move(neg);
    }
    return r;
}

Element Element::operator*(const Element& o) const {
    check_compatible(o);
    Element r(spec_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Word w = ma.factors;
            w.insert(w.end(), mb.factors.begin(), mb.factors.end());
            r.accumulate_word(w, ca * cb);
        }
    }
    return r;
}

Element Element::operator*(const Int& c) const {
    Element r(spec_);
    for (const auto& [mon, co] : terms_) {
        Int v = co * c;
        reduce_coeff(spec_, v);
        if (v != 0)
            r.terms_[mon] = std::move(v);
    }
    return r;
}

Element Element::pow(int k) const {
    if (k < 0)
        throw std::invalid_argument("pow: negative exponent");
    Element r = one(spec_);
    for (int t = 0; t < k; ++t)
        r = r * *this;
    return r;
}

Element normal_form(const RingSpec& spec, const Word& word, Int coeff) {
    return Element::from_word(spec, word, std::move(coeff));
}

Element normal_form_randomized(const RingSpec& spec, const Word& word, Int coeff,
                               std::mt19937_64& rng) {
    // Same rewriting system, but the word is kept unsorted and the pair to
    // rewrite is chosen uniformly among all applicable positions.
    Element result(spec);
    struct Item {
        Word word;
        Int coeff;
    };
    std::vector<Item> stack{{word, std::move(coeff)}};
    while (!stack.empty()) {
        Item cur = std::move(stack.back());
        stack.pop_back();
        Word& w = cur.word;

        if (spec.punctured()) {
            bool killed = false;
            for (const Generator& g : w)
                if (g.i <= spec.p)
                    killed = true;
            if (killed)
                continue;
        }

        bool square = false;
        std::vector<std::pair<size_t, size_t>> pairs;
        for (size_t u = 0; u < w.size() && !square; ++u)
            for (size_t v = u + 1; v < w.size(); ++v) {
                if (w[u] == w[v]) {
                    square = true;
                    break;
                }
                if (w[u].i == w[v].i)
                    pairs.emplace_back(u, v);
            }
        if (square)
            continue;
        if (pairs.empty()) {
            std::sort(w.begin(), w.end(),
                      [](const Generator& a, const Generator& b) { return b < a; });
            result.accumulate_term(Monomial{std::move(w)}, cur.coeff);
            continue;
        }

        auto [u, v] = pairs[std::uniform_int_distribution<size_t>(0, pairs.size() - 1)(rng)];
        if (w[u].j < w[v].j)
            std::swap(u, v);
        const int i = w[u].i;
        const int k = w[u].j;
        const int j = w[v].j;
        if (spec.punctured() && k <= spec.p)
            continue;
        Word w1 = w;
        w1[u] = {i, k};
        w1[v] = {k, j};
        Word w2 = std::move(w);
        w2[u] = {k, j};
        w2[v] = {i, j};
        Int neg = -cur.coeff;
        reduce_coeff(spec, neg);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) {
            stack.push_back({std::move(w1), cur.coeff});
            if (neg != 0)
                stack.push_back({std::move(w2), std::move(neg)});
        } else {
            if (neg != 0)
                stack.push_back({std::move(w2), std::move(neg)});
            stack.push_back({std::move(w1), cur.coeff});
        }
    }
    return result;
}

Element multiply(const Element& a, const Element& b) {
    return a * b;
}

bool is_zero(const Element& a) {
    return a.is_zero();
}

bool equals(const Element& a, const Element& b) {
    return a == b;
}

namespace {

void enumerate_basis(const RingSpec& spec, int max_i, int r, Word& current,
                     std::vector<Monomial>& out) {
    if (r == 0) {
        out.push_back(Monomial{current});
        return;
    }
    // need r distinct first indices below max_i
    for (int i = max_i; i - spec.min_first_index() + 1 >= r; --i) {
        for (int j = i - 1; j >= 1; --j) {
            current.push_back({i, j});
            enumerate_basis(spec, i - 1, r - 1, current, out);
            current.pop_back();
        }
    }
}

}  // namespace

std::vector<Monomial> basis(const RingSpec& spec, int r) {
    if (r < 0 || r > spec.n)
        throw std::invalid_argument("basis: require 0 <= r <= n");
    std::vector<Monomial> out;
    Word current;
    enumerate_basis(spec, spec.points(), r, current, out);
    return out;
}

Element relabel(const Element& a, const std::vector<int>& perm) {
    const RingSpec& spec = a.spec();
    const int N = spec.points();
    if (static_cast<int>(perm.size()) != N + 1)
        throw std::invalid_argument("relabel: perm must have size p+n+1 (1-indexed)");
    std::vector<bool> seen(N + 1, false);
    for (int x = 1; x <= N; ++x) {
        int y = perm[x];
        if (y < 1 || y > N || seen[y])
            throw std::invalid_argument("relabel: not a permutation of {1..p+n}");
        seen[y] = true;
        if (x <= spec.p && y != x)
            throw std::invalid_argument("relabel: must fix the puncture indices {1..p}");
    }
    Element r(spec);
    for (const auto& [mon, c] : a.terms()) {
        Word w;
        w.reserve(mon.factors.size());
        int flips = 0;
        for (const Generator& g : mon.factors) {
            int i = perm[g.i], j = perm[g.j];
            if (i < j) {
                std::swap(i, j);
                ++flips;  // A[j,i] = (-1)^m A[i,j]
            }
            w.push_back({i, j});
        }
        Int coeff = c;
        if (spec.m % 2 == 1 && flips % 2 == 1)
            coeff = -coeff;
        r.accumulate_word(w, coeff);
    }
    return r;
}

std::vector<Int> poincare_coefficients(const RingSpec& spec) {
    std::vector<Int> poly{1};
    for (int k = spec.p; k <= spec.points() - 1; ++k) {
        std::vector<Int> next(poly.size() + 1, 0);
        for (size_t d = 0; d < poly.size(); ++d) {
            next[d] += poly[d];
            next[d + 1] += poly[d] * k;
        }
        poly = std::move(next);
    }
    return poly;
}

std::string monomial_str(const Monomial& mon) {
    if (mon.is_unit())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (const Generator& g : mon.factors) {
        if (!first)
            os << "*";
        os << "A[" << g.i << "," << g.j << "]";
        first = false;
    }
    return os.str();
}

std::string Element::str() const {
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
            os << monomial_str(mon);
        }
        first = false;
    }
    return os.str();
}

}  // namespace conftc
