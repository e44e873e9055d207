#pragma once

#include <cstdint>
#include <vector>

#include "detkit/monomial.hpp"

namespace detkit {

// Total multiplicative monomial orders.  The default is a block order: the
// z-block (compared degrevlex) dominates every pure power of t, so normal
// forms never move information below a given t-adic level.
enum class OrderKind {
    block_z_over_t_degrevlex,
    lex,
    degrevlex,
};

struct MonomialOrder {
    OrderKind kind = OrderKind::block_z_over_t_degrevlex;
    // Permutation of the z variables; slot 0 is the most significant.
    // Empty means identity.  For lex/degrevlex, t comes after all z slots.
    std::vector<std::uint32_t> perm;

    static MonomialOrder block_default() { return MonomialOrder{}; }
    static MonomialOrder lex_order() { return MonomialOrder{OrderKind::lex, {}}; }
    static MonomialOrder degrevlex_order() { return MonomialOrder{OrderKind::degrevlex, {}}; }

    std::uint32_t slot(std::uint32_t i) const {
        return perm.empty() ? i : perm[i];
    }

    // negative if a < b, 0 if equal, positive if a > b
    int compare(const Monomial& a, const Monomial& b) const;
};

// a < b under ord
inline bool mono_less(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
    return ord.compare(a, b) < 0;
}

int compare_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& ord);

} // namespace detkit
