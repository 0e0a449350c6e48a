#pragma once

#include "conftc/tensor.hpp"

#include <string>
#include <vector>

namespace conftc {

/// Lower-bound witness for the s-stage motion-planning complexity of a
/// configuration space: an ordered list of degree-(m-1) tensor factors, each
/// in the kernel of diagonal_pullback, whose expanded product is nonzero.
/// A valid certificate proves TC_s >= length.
struct Certificate {
    RingSpec spec;
    int s = 2;
    std::string kind;  // pi | mu_s | nu_s | pi_punctured
    std::vector<TensorElement> factors;
    TensorElement product;
    int length = 0;
};

struct VerifyReport {
    bool kernel_ok = false;
    bool nonzero_ok = false;
    int failing_factor = -1;  // first factor outside the kernel, or -1
    int lower_bound = 0;      // = length when both checks pass
};

/// Signed certificate of length s(n-1) for the unpunctured space, m odd:
/// the i-th block is (A[i,1]@1 + .. + A[i,1]@(s-1) - (s-1)*A[i,1]@s)^s.
/// Requires p = 0, n >= 2, m odd, signed coefficients.
Certificate build_pi(const RingSpec& spec, int s);

/// The expansion build_pi must produce: (s!(1-s))^k times the product over
/// slots of A[q,1]*..*A[2,1] with q = p+n, where k counts the factors per
/// slot. Also the reference expansion for build_pi_punctured (k = n).
TensorElement pi_expected_product(const RingSpec& spec, int s);

/// Mod-2 certificate of length s(q-1)-1 where q = p+n: all (A[i,1]@1 +
/// A[i,1]@l) for 2 <= i <= q, 2 <= l <= s, then (A[i,2]@1 + A[i,2]@2) for
/// 3 <= i <= q. Requires p <= 1 (a single puncture only renames the ring on
/// one extra point), q >= 2, mod-2 coefficients.
Certificate build_mu_s(const RingSpec& spec, int s);

/// A[2,1]@1 times the mu_s product. Not itself a kernel certificate (the
/// extra factor has a nonzero pullback) but its nonvanishing proves mu_s
/// nonzero; over mod 2 with s = 2 it expands to exactly 2^(q-2) basis tuples.
TensorElement build_w_s(const RingSpec& spec, int s);

/// Mod-2 certificate of length sn for p >= 2 punctures: all (A[p+i,1]@1 +
/// A[p+i,1]@l) for 1 <= i <= n, 2 <= l <= s, then (A[p+i,2]@1 + A[p+i,2]@2)
/// for 1 <= i <= n. Requires p >= 2, n >= 1, mod-2 coefficients.
Certificate build_nu_s(const RingSpec& spec, int s);

/// Signed certificate of length sn for p >= 1 punctures, m odd: the i-th
/// block is (A[p+i,1]@1 + .. - (s-1)*A[p+i,1]@s)^s.
Certificate build_pi_punctured(const RingSpec& spec, int s);

/// Dispatch by name: pi | mu_s | nu_s | pi_punctured.
Certificate build_certificate(const std::string& kind, const RingSpec& spec, int s);

/// The certificate family whose length matches the closed-form lower bound
/// for (m, n, p, s); coefficients are picked from m's parity (signed for odd
/// m, mod 2 for even m).
Certificate certificate_for(int m, int n, int p, int s);

/// Re-expands the product from the factors, checks every factor against
/// diagonal_pullback and the product against zero.
VerifyReport verify(const Certificate& cert);

/// Applies a relabeling of the movable points to factors and product;
/// preserves validity and length.
Certificate relabel(const Certificate& cert, const std::vector<int>& perm);

/// Largest r <= max_len such that some r-fold product of elements of
/// kernel_degree1_basis(spec, s) is nonzero. By multilinearity this equals
/// the maximal length of a nonzero product of arbitrary degree-(m-1)
/// diagonal-kernel classes. Guarded: generator count x s must be <= 8.
int brute_force_zcl(const RingSpec& spec, int s, int max_len);

/// Stable machine-readable record: spec, s, kind, factor expressions,
/// expanded product, term count, verification flags, lower bound.
std::string certificate_json(const Certificate& cert, const VerifyReport& report);

}  // namespace conftc
