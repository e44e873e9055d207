#pragma once

#include <optional>

#include "detkit/cotangent.hpp"

namespace detkit {

// Exact witness that target = sum coeffs[i] * gens[i].
struct MembershipCert {
    Poly target;
    std::vector<Poly> gens;
    std::vector<Poly> coeffs;
    bool check() const;
};

// Evidence that target lies outside the ideal: its nonzero normal form
// against the reduced basis.  Independent checkers recompute the basis.
struct NonMembershipWitness {
    Poly target;
    Poly nf;
    std::vector<Poly> basis;
};

struct DeterminacyReport {
    std::uint32_t N1 = 0;
    std::uint32_t N2 = 0;
    std::uint32_t N = 0;
    std::uint32_t threshold_k = 0;   // 4N + 1
    std::uint32_t precision_loss = 0; // 2N
    std::vector<Poly> ann_t1;        // reduced basis of Ann(T1)
    MembershipCert n1_cert;          // t^N1 against the annihilator generators
    std::optional<NonMembershipWitness> n1_witness; // t^(N1-1), when N1 > 0
    std::uint32_t t2_levels_checked = 0;
    std::vector<Vec> t2_strict_witnesses; // one per strict kernel growth step
};

// Smallest N with t^N * T1 = 0 plus the T2 multiplication-kernel
// stabilisation index; throws MathError when the cap is exhausted, which
// signals that the family is outside the supported setup.
DeterminacyReport determinacy(const Presentation& pres, std::uint32_t cap);

// Stabilisation index of the multiplication-by-t kernel chain on T2 alone.
std::uint32_t t2_stable_index(const Presentation& pres, std::uint32_t cap);

struct DivisorBound {
    std::uint32_t s = 0; // coefficient twist exponent
    std::uint32_t N = 0;
    std::uint32_t M = 0;
    std::vector<Poly> ann;
    MembershipCert cert;                        // t^N w^M
    std::optional<NonMembershipWitness> wit_N;  // t^(N-1) w^cap, when N > 0
    std::optional<NonMembershipWitness> wit_M;  // t^N w^(M-1), when M > 0
};

struct DivisorReport {
    std::uint32_t divisor_var = 0;
    DivisorBound s0;
    DivisorBound s1;
};

// Lex-minimal (N, M) with t^N w^M killing T1 with coefficients twisted by
// w^s, for s = 0 and s = 1; both coordinates are searched up to cap.
DivisorReport divisor_report(const Presentation& pres, std::uint32_t divisor_var,
                             std::uint32_t cap);

// Is the support of T1 contained in the union of the cutout hypersurfaces?
// Decided by radical membership of the product of the cutouts in Ann(T1).
bool t1_support_within(const Presentation& pres, const std::vector<Poly>& cutouts);

} // namespace detkit
