#pragma once

#include <string>

#include "detkit/cotangent.hpp"
#include "detkit/linalg.hpp"

namespace detkit {

// Finite monomial window: t-exponent < L, z-degree <= d.
struct TruncationBox {
    std::uint32_t L = 8;
    std::uint32_t d = 8;
};

// Number of monomials inside the box.
std::size_t box_dimension(const CtxPtr& ctx, TruncationBox box);

// Brute-force ideal membership using only multiples that stay inside the
// box.  A positive answer carries an exact witness and is unconditionally
// correct; a negative answer only rules out in-box certificates.
enum class BruteStatus { member, not_member_within_box, box_too_small };
struct BruteResult {
    BruteStatus status = BruteStatus::not_member_within_box;
    std::vector<Poly> witness; // coefficients per generator when member
};
BruteResult brute_membership(const Poly& p, const std::vector<Poly>& gens,
                             TruncationBox box);

// Dimension of the boxed quotient algebra P/((f) + (t^L) + m_z^(d+1)).
std::size_t truncated_quotient_dimension(const Presentation& pres, TruncationBox box);

// Boxed cotangent dimensions, computed by sparse exact linear algebra from
// the presentation alone.  The syzygy conditions come from genuine syzygies
// (exact products, margin box); no term order or basis enters.
std::size_t truncated_t0_dimension(const Presentation& pres, TruncationBox box);
std::size_t truncated_t1_dimension(const Presentation& pres, TruncationBox box);
std::size_t truncated_t2_dimension(const Presentation& pres, TruncationBox box);

// Boxed dimension of a subquotient under the same window, for comparisons
// against the independent numbers above.
std::size_t truncated_dimension(const Subquotient& s, TruncationBox box);

// Order-by-order search for a truncated coordinate change carrying the
// original equations into the perturbed ideal, with corrections of t-order
// at least ceil((s0+1)/2).  A hit returns exact witnesses; a miss only means
// the search was inconclusive inside the box, never impossibility.
struct IsoSearchResult {
    bool found = false;
    std::string note; // reason when inconclusive
    std::vector<Poly> images;
    std::vector<std::vector<Poly>> witness; // in-box coefficients per equation
    std::vector<Poly> tails;                // exact leftovers, t-order >= target
};
IsoSearchResult truncated_iso_search(const Presentation& orig, const std::vector<Poly>& pert,
                                     std::uint32_t s0, std::uint32_t target,
                                     TruncationBox box);

} // namespace detkit
