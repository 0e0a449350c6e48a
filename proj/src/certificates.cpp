#include "conftc/certificates.hpp"

#include <json.hpp>

#include <stdexcept>

namespace conftc {

namespace {

void require(bool ok, const char* msg) {
    if (!ok)
        throw std::invalid_argument(msg);
}

/// A[i,1]@1 + .. + A[i,1]@(s-1) - (s-1)*A[i,1]@s; pulls back to 0.
TensorElement signed_block(const RingSpec& spec, int i, int s) {
    Element a = Element::generator(spec, i, 1);
    TensorElement f(spec, s);
    for (int l = 1; l < s; ++l)
        f = f + inject(a, l, s);
    f = f - inject(a, s, s) * Int(s - 1);
    return f;
}

/// A[i,j]@1 + A[i,j]@l over mod 2; pulls back to 0.
TensorElement mod2_pair(const RingSpec& spec, int i, int j, int l, int s) {
    Element a = Element::generator(spec, i, j);
    return inject(a, 1, s) + inject(a, l, s);
}

TensorElement expand(const RingSpec& spec, int s, const std::vector<TensorElement>& factors) {
    TensorElement prod = TensorElement::one(spec, s);
    for (const TensorElement& f : factors)
        prod = prod * f;
    return prod;
}

Certificate finish(const RingSpec& spec, int s, std::string kind,
                   std::vector<TensorElement> factors) {
    Certificate cert;
    cert.spec = spec;
    cert.s = s;
    cert.kind = std::move(kind);
    cert.product = expand(spec, s, factors);
    cert.length = static_cast<int>(factors.size());
    cert.factors = std::move(factors);
    return cert;
}

Int factorial(int k) {
    Int r = 1;
    for (int t = 2; t <= k; ++t)
        r *= t;
    return r;
}

}  // namespace

Certificate build_pi(const RingSpec& spec, int s) {
    require(spec.p == 0, "pi: requires an unpunctured space");
    require(spec.n >= 2, "pi: requires n >= 2");
    require(spec.m % 2 == 1, "pi: requires odd m");
    require(spec.coeff == Coeff::Integers, "pi: requires signed coefficients");
    require(s >= 2, "pi: requires s >= 2");
    std::vector<TensorElement> factors;
    for (int i = 2; i <= spec.n; ++i) {
        TensorElement f = signed_block(spec, i, s);
        for (int k = 0; k < s; ++k)
            factors.push_back(f);
    }
    return finish(spec, s, "pi", std::move(factors));
}

TensorElement pi_expected_product(const RingSpec& spec, int s) {
    Element mu = Element::one(spec);
    for (int i = spec.min_first_index(); i <= spec.points(); ++i)
        mu = mu * Element::generator(spec, i, 1);
    TensorElement prod = TensorElement::one(spec, s);
    for (int l = 1; l <= s; ++l)
        prod = prod * inject(mu, l, s);
    Int unit = factorial(s) * (1 - s);
    Int coeff = 1;
    for (int k = 0; k < spec.top_factors(); ++k)
        coeff *= unit;
    return prod * coeff;
}

Certificate build_mu_s(const RingSpec& spec, int s) {
    require(spec.p <= 1, "mu_s: requires at most one puncture");
    require(spec.points() >= 2, "mu_s: requires at least two points");
    require(spec.mod2(), "mu_s: requires mod-2 coefficients");
    require(s >= 2, "mu_s: requires s >= 2");
    int q = spec.points();
    std::vector<TensorElement> factors;
    for (int i = 2; i <= q; ++i)
        for (int l = 2; l <= s; ++l)
            factors.push_back(mod2_pair(spec, i, 1, l, s));
    for (int i = 3; i <= q; ++i)
        factors.push_back(mod2_pair(spec, i, 2, 2, s));
    return finish(spec, s, "mu_s", std::move(factors));
}

TensorElement build_w_s(const RingSpec& spec, int s) {
    Certificate mu = build_mu_s(spec, s);
    return inject(Element::generator(spec, 2, 1), 1, s) * mu.product;
}

Certificate build_nu_s(const RingSpec& spec, int s) {
    require(spec.p >= 2, "nu_s: requires at least two punctures");
    require(spec.n >= 1, "nu_s: requires n >= 1");
    require(spec.mod2(), "nu_s: requires mod-2 coefficients");
    require(s >= 2, "nu_s: requires s >= 2");
    std::vector<TensorElement> factors;
    for (int i = 1; i <= spec.n; ++i)
        for (int l = 2; l <= s; ++l)
            factors.push_back(mod2_pair(spec, spec.p + i, 1, l, s));
    for (int i = 1; i <= spec.n; ++i)
        factors.push_back(mod2_pair(spec, spec.p + i, 2, 2, s));
    return finish(spec, s, "nu_s", std::move(factors));
}

Certificate build_pi_punctured(const RingSpec& spec, int s) {
    require(spec.p >= 1, "pi_punctured: requires a punctured space");
    require(spec.n >= 1, "pi_punctured: requires n >= 1");
    require(spec.m % 2 == 1, "pi_punctured: requires odd m");
    require(spec.coeff == Coeff::Integers, "pi_punctured: requires signed coefficients");
    require(s >= 2, "pi_punctured: requires s >= 2");
    std::vector<TensorElement> factors;
    for (int i = 1; i <= spec.n; ++i) {
        TensorElement f = signed_block(spec, spec.p + i, s);
        for (int k = 0; k < s; ++k)
            factors.push_back(f);
    }
    return finish(spec, s, "pi_punctured", std::move(factors));
}

Certificate build_certificate(const std::string& kind, const RingSpec& spec, int s) {
    if (kind == "pi")
        return build_pi(spec, s);
    if (kind == "mu_s")
        return build_mu_s(spec, s);
    if (kind == "nu_s")
        return build_nu_s(spec, s);
    if (kind == "pi_punctured")
        return build_pi_punctured(spec, s);
    throw std::invalid_argument("unknown certificate kind: " + kind);
}

Certificate certificate_for(int m, int n, int p, int s) {
    Coeff coeff = m % 2 == 1 ? Coeff::Integers : Coeff::Mod2;
    RingSpec spec = make_ring(m, n, p, coeff);
    if (m % 2 == 1)
        return p == 0 ? build_pi(spec, s) : build_pi_punctured(spec, s);
    return p <= 1 ? build_mu_s(spec, s) : build_nu_s(spec, s);
}

VerifyReport verify(const Certificate& cert) {
    VerifyReport rep;
    rep.kernel_ok = true;
    for (size_t k = 0; k < cert.factors.size(); ++k) {
        if (!diagonal_pullback(cert.factors[k]).is_zero()) {
            rep.kernel_ok = false;
            rep.failing_factor = static_cast<int>(k);
            break;
        }
    }
    TensorElement prod = expand(cert.spec, cert.s, cert.factors);
    rep.nonzero_ok = !prod.is_zero() && prod == cert.product;
    rep.lower_bound = rep.kernel_ok && rep.nonzero_ok ? cert.length : 0;
    return rep;
}

Certificate relabel(const Certificate& cert, const std::vector<int>& perm) {
    Certificate out = cert;
    for (TensorElement& f : out.factors)
        f = relabel(f, perm);
    out.product = relabel(cert.product, perm);
    return out;
}

int brute_force_zcl(const RingSpec& spec, int s, int max_len) {
    int gens = static_cast<int>(generators(spec).size());
    if (gens * s > 8)
        throw std::invalid_argument("zcl size guard exceeded: generator count x s must be <= 8");
    std::vector<TensorElement> span = kernel_degree1_basis(spec, s);
    // Products of spanning elements suffice: by multilinearity, if every
    // r-tuple product vanishes then so does every product of r kernel
    // classes of this degree, and any longer product has a vanishing prefix.
    std::vector<TensorElement> alive{TensorElement::one(spec, s)};
    std::vector<size_t> starts{0};  // multisets: extend only by index >= last
    int best = 0;
    for (int r = 1; r <= max_len && !alive.empty(); ++r) {
        std::vector<TensorElement> next;
        std::vector<size_t> next_starts;
        for (size_t t = 0; t < alive.size(); ++t) {
            for (size_t g = starts[t]; g < span.size(); ++g) {
                TensorElement prod = alive[t] * span[g];
                if (prod.is_zero())
                    continue;
                next.push_back(std::move(prod));
                next_starts.push_back(g);
            }
        }
        if (!next.empty())
            best = r;
        alive = std::move(next);
        starts = std::move(next_starts);
    }
    return best;
}

std::string certificate_json(const Certificate& cert, const VerifyReport& report) {
    nlohmann::ordered_json j;
    j["kind"] = cert.kind;
    j["m"] = cert.spec.m;
    j["n"] = cert.spec.n;
    j["p"] = cert.spec.p;
    j["s"] = cert.s;
    j["coeff"] = to_string(cert.spec.coeff);
    j["length"] = cert.length;
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    for (const TensorElement& f : cert.factors)
        factors.push_back(f.str());
    j["factors"] = std::move(factors);
    j["product"] = cert.product.str();
    j["product_terms"] = cert.product.term_count();
    j["kernel_ok"] = report.kernel_ok;
    j["nonzero_ok"] = report.nonzero_ok;
    if (report.failing_factor >= 0)
        j["failing_factor"] = report.failing_factor;
    j["lower_bound"] = report.lower_bound;
    return j.dump(2) + "\n";
}

}  // namespace conftc
