#pragma once

#include "detkit/groebner.hpp"

namespace detkit {

// Presented flat family A = P/(f) over the base Q[t], P = Q[t][z_1..z_n].
struct Presentation {
    CtxPtr ctx;
    std::vector<Poly> f;
    MonomialOrder ord{};
    Caps caps{};
};

// Subquotient span(gens)/span(zero) of the free module P^rank.  The zero
// list always carries the coefficient ideal times the unit vectors, so the
// object is a module over the corresponding quotient ring.
struct Subquotient {
    CtxPtr ctx;
    std::uint32_t rank = 0;
    std::vector<Vec> gens;
    std::vector<Vec> zero;
    MonomialOrder ord{};
    Caps caps{};
};

bool is_zero_module(const Subquotient& s);

// Coefficient vectors c (one slot per generator) with p * (c . gens) inside
// span(zero).  With p = 1 these are the presentation relations.
std::vector<Vec> scaled_kernel(const Subquotient& s, const Poly& p);
std::vector<Vec> relations(const Subquotient& s);

// Ideal of ring elements killing every generator modulo span(zero).
std::vector<Poly> annihilator(const Subquotient& s);

// Copy with generators that are redundant (inside span(zero) plus the span
// of the earlier generators) removed.
Subquotient pruned(const Subquotient& s);

// (I : p) and intersection of ideals, via syzygies.
std::vector<Poly> colon_ideal(const std::vector<Poly>& I, const Poly& p,
                              const MonomialOrder& ord = {}, const Caps& caps = {});
std::vector<Poly> ideal_intersect(const std::vector<Poly>& a, const std::vector<Poly>& b,
                                  const MonomialOrder& ord = {}, const Caps& caps = {});

// The data of the two-step cotangent complex attached to the presentation:
// relative Jacobian, generating syzygies, Koszul syzygies.
struct LSComplex {
    Presentation pres;
    std::vector<std::vector<Poly>> jac; // jac[i][j] = d f_i / d z_j
    std::vector<Vec> syz;               // generators of Syz(f), rank m
    std::vector<Vec> koszul;            // f_i e_j - f_j e_i, rank m
};

LSComplex ls_complex(const Presentation& p);

// Cotangent cohomology with coefficients in the cyclic module P/(coeff);
// coeff must contain the presentation ideal.  The overloads without coeff
// use the structure ring itself.
Subquotient t0(const LSComplex& L, const std::vector<Poly>& coeff);
Subquotient t1(const LSComplex& L, const std::vector<Poly>& coeff);
Subquotient t2(const LSComplex& L, const std::vector<Poly>& coeff);
Subquotient t0(const LSComplex& L);
Subquotient t1(const LSComplex& L);
Subquotient t2(const LSComplex& L);

// T1 of the truncated family over Q[t]/(t^L): syzygies are taken relative
// to (f, t^L) and coefficients live in P/(f, t^L).
Subquotient t1_truncated(const Presentation& p, std::uint32_t L);

} // namespace detkit
