#pragma once

#include <optional>
#include <string>

#include "detkit/determinacy.hpp"

namespace detkit {

// Divisor refinement: the perturbation is divisible by w^r inside its t-adic
// window, where w is one of the fibre variables.
struct DivisorDatum {
    std::uint32_t var = 0;
    std::uint32_t r = 0;
};

// Original family together with a perturbation agreeing to t-order k
// (two-sided, as ideals; inside the w^r window when a divisor is declared).
struct FamilyPair {
    Presentation orig;
    std::vector<Poly> pert;
    std::uint32_t k = 0;
    std::optional<DivisorDatum> divisor;
};

FamilyPair make_family_pair(Presentation orig, std::vector<Poly> pert, std::uint32_t k,
                            std::optional<DivisorDatum> divisor = std::nullopt);

// f_i corrected by its exact window cofactor so that it lands in (pert):
// lifted = f_i - window * cofactor = sum coeffs[j] * pert[j], exactly.
struct LiftedEquation {
    Poly lifted;
    std::vector<Poly> coeffs;
    Poly cofactor;
};
std::vector<LiftedEquation> lift_equations(const FamilyPair& pair);

// Lift an order-l approximate relation (sum approx_i f_i lies in (t^l)) to an
// exact one.  Flatness over Q[t] makes this always possible; a failure throws
// MathError because the input family must have been non-flat.
std::vector<Poly> lift_relation(const Presentation& pres, const std::vector<Poly>& approx,
                                std::uint32_t l);

// Truncated ring map P -> P mod t^L, z_j -> images[j].
struct MapTruncation {
    CtxPtr ctx;
    std::vector<Poly> images;
    std::uint32_t L = 0;

    Poly apply(const Poly& p, std::uint32_t trunc = 0) const; // trunc 0 = exact
};

// One improvement stage: level, applied corrections.
struct StageTrace {
    std::uint32_t level = 0;
    std::vector<Poly> theta;
};

// phi(f_i) = sum coeffs[j] * pert[j] + window * cofactor, exactly, where
// window = t^target (times w^r with a divisor).
struct GenCert {
    Poly image;
    std::vector<Poly> coeffs;
    Poly cofactor;
};

// phi(preimage) - z_j = sum coeffs[j] * pert[j] + t^target * cofactor.
struct PreimageCert {
    Poly preimage;
    Poly image;
    std::vector<Poly> coeffs;
    Poly cofactor;
};

struct LiftCertificate {
    FamilyPair pair;
    std::uint32_t target_L = 0;
    std::uint32_t working_L = 0;     // target_L + 2N + 1
    std::uint32_t N = 0;             // determinacy exponent used
    std::uint32_t M = 0;             // divisor exponent used (divisor runs)
    std::uint32_t agreement_order = 0; // k - 2N
    MapTruncation map;               // images mod t^target_L
    std::vector<GenCert> gen_certs;
    std::vector<PreimageCert> preimages;
    std::vector<StageTrace> trace;
};

// Push the order-k identification out to order target_L.  Internally works
// at order target_L + 2N + 1 and truncates back, so the published map is
// stable against further improvement.
LiftCertificate formal_lift(const FamilyPair& pair, std::uint32_t target_L,
                            std::uint32_t cap = 64);

// Re-validate a certificate by pure re-expansion: no bases are recomputed,
// every stated identity is checked exactly.  On failure, `index` names the
// first failing check and `what` describes it.
struct LiftCheck {
    bool ok = true;
    int index = -1;
    std::string what;
};
LiftCheck verify_lift(const LiftCertificate& c);

// The solvable system attached to a lift: unknowns a_1..a_n (target
// coordinates) and b_ij (matrix entries), equations
//   orig_i(a_1..a_n) - sum_j b_ij * pert_j(z_1..z_n).
// The published solution substitutes the lift's images for a and the lift's
// window certificates for b, making each equation vanish mod t^order.
struct ArtinSystem {
    CtxPtr ext;                           // z vars, then a_i, then b_ij
    std::vector<Poly> equations;          // rendered over ext
    std::vector<Poly> a_solution;         // over the original ctx
    std::vector<std::vector<Poly>> b_solution;
    std::vector<Poly> residual_cofactors; // orig_i(a) - sum b pert = t^order * cof
    std::uint32_t order = 0;
};
ArtinSystem emit_artin_system(const LiftCertificate& lift);

} // namespace detkit
