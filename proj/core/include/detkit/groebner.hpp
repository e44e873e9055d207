#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "detkit/poly.hpp"

namespace detkit {

// Hard resource limits.  Exceeding any of them raises CapError; results are
// never silently truncated.
struct Caps {
    std::uint64_t pair_budget = 200000; // S-pairs processed per basis run
    std::uint64_t basis_cap = 4000;     // basis elements
    std::uint32_t degree_cap = 512;     // total degree of any basis element
};

// Element of the free module P^rank (rank 1 doubles as the ring itself).
struct Vec {
    std::vector<Poly> c;

    Vec() = default;
    Vec(CtxPtr ctx, std::uint32_t rank)
        : c(rank, Poly::zero(std::move(ctx))) {}

    std::uint32_t rank() const { return static_cast<std::uint32_t>(c.size()); }
    bool is_zero() const;

    static Vec unit(CtxPtr ctx, std::uint32_t rank, std::uint32_t comp,
                    Poly scale); // scale * e_comp

    Vec& operator+=(const Vec& o);
    Vec& operator-=(const Vec& o);
    Vec scaled(const Rational& r) const;
    Vec mono_mul(const Monomial& m, const Rational& r) const;
    Vec poly_mul(const Poly& p) const;
    friend bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }
};

// Leading data of a Vec: component index plus the leading term inside it.
struct VecLead {
    std::uint32_t comp = 0;
    Monomial m;
    Rational c;
};

// Module order: ring order on the monomial, lower component wins ties.
VecLead vec_lead(const Vec& v, const MonomialOrder& ord);
int vec_term_compare(std::uint32_t comp_a, const Monomial& a, std::uint32_t comp_b,
                     const Monomial& b, const MonomialOrder& ord);

// Reduced Groebner basis with full transformation transcript.
struct GB {
    MonomialOrder ord;
    std::uint32_t rank = 1;
    std::vector<Vec> input;             // generators exactly as given
    std::vector<Vec> basis;             // reduced, monic, sorted by leading term
    std::vector<std::vector<Poly>> rep; // basis[i] = sum_j rep[i][j] * input[j]
};

GB buchberger(std::vector<Vec> gens, const MonomialOrder& ord, const Caps& caps = {});
GB buchberger_ideal(std::vector<Poly> gens, const MonomialOrder& ord = {},
                    const Caps& caps = {});

// Division with certificate: v = sum_i q[i] * divisors[i] + rem, and no term
// of rem is divisible by any divisor's leading term.
struct Division {
    std::vector<Poly> q;
    Vec rem;
};
Division divide(const Vec& v, const std::vector<Vec>& divisors, const MonomialOrder& ord);

// Normal form against a reduced basis; unique remainder.
Poly normal_form(const Poly& p, const GB& gb);
Vec normal_form(const Vec& v, const GB& gb);

// Exact membership: coefficients on gb.input when the element belongs to the
// ideal/submodule, nullopt otherwise.
std::optional<std::vector<Poly>> membership(const Vec& v, const GB& gb);
std::optional<std::vector<Poly>> membership(const Poly& p, const GB& gb);

// Generators of the syzygy module of the given elements (first syzygies),
// normalised to a reduced module basis.  Index i of a syzygy refers to
// gens[i].
std::vector<Vec> syzygy_basis(const std::vector<Vec>& gens, const MonomialOrder& ord = {},
                              const Caps& caps = {});
std::vector<Vec> syzygy_basis_ideal(const std::vector<Poly>& gens,
                                    const MonomialOrder& ord = {}, const Caps& caps = {});

// Kernel of the A-linear map A^a -> A^b given by the columns (each a Vec of
// rank b) where A = P/(J): syzygies of the columns augmented with J times the
// unit vectors, projected back to the a coordinates.
std::vector<Vec> module_kernel(const std::vector<Vec>& cols, std::uint32_t b,
                               const std::vector<Poly>& J, const MonomialOrder& ord = {},
                               const Caps& caps = {});

// Rabinowitsch trick: p lies in the radical of (gens) iff 1 lies in
// (gens, 1 - u*p) in one extra variable.
bool radical_membership(const Poly& p, const std::vector<Poly>& gens,
                        const MonomialOrder& ord = {}, const Caps& caps = {});

} // namespace detkit
