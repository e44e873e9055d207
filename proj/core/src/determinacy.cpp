#include "detkit/determinacy.hpp"

#include "detkit/errors.hpp"

namespace detkit {

bool MembershipCert::check() const {
    if (gens.size() != coeffs.size()) return false;
    Poly acc = Poly::zero(target.ctx());
    for (std::size_t i = 0; i < gens.size(); ++i) acc += coeffs[i] * gens[i];
    return acc == target;
}

namespace {

MembershipCert make_cert(const Poly& target, const GB& gb) {
    auto coeffs = membership(target, gb);
    if (!coeffs) throw Error("internal: certificate requested for a non-member");
    std::vector<Poly> gens;
    for (const auto& g : gb.input) gens.push_back(g.c[0]);
    return MembershipCert{target, std::move(gens), std::move(*coeffs)};
}

NonMembershipWitness make_witness(const Poly& target, const GB& gb) {
    Poly nf = normal_form(target, gb);
    if (nf.is_zero()) throw Error("internal: witness requested for a member");
    std::vector<Poly> basis;
    for (const auto& e : gb.basis) basis.push_back(e.c[0]);
    return NonMembershipWitness{target, std::move(nf), std::move(basis)};
}

// submodule equality test: does every generator of bigger lie in span(smaller)?
bool contained_in(const std::vector<Vec>& bigger, const std::vector<Vec>& smaller,
                  const MonomialOrder& ord, const Caps& caps) {
    if (bigger.empty()) return true;
    if (smaller.empty()) {
        for (const auto& g : bigger)
            if (!g.is_zero()) return false;
        return true;
    }
    const GB gb = buchberger(smaller, ord, caps);
    for (const auto& g : bigger)
        if (!normal_form(g, gb).is_zero()) return false;
    return true;
}

// first offender: a generator of bigger outside span(smaller)
Vec growth_witness(const std::vector<Vec>& bigger, const std::vector<Vec>& smaller,
                   const MonomialOrder& ord, const Caps& caps) {
    const GB gb = buchberger(smaller, ord, caps);
    for (const auto& g : bigger)
        if (!normal_form(g, gb).is_zero()) return g;
    throw Error("internal: no growth witness in an equal pair");
}

} // namespace

DeterminacyReport determinacy(const Presentation& pres, std::uint32_t cap) {
    const LSComplex L = ls_complex(pres);
    DeterminacyReport rep;

    const Subquotient T1 = t1(L);
    rep.ann_t1 = annihilator(T1);
    const GB ann_gb = buchberger_ideal(rep.ann_t1, pres.ord, pres.caps);

    bool found = false;
    for (std::uint32_t n = 0; n <= cap; ++n) {
        const Poly tn = Poly::t_power(pres.ctx, n);
        if (membership(tn, ann_gb)) {
            rep.N1 = n;
            rep.n1_cert = make_cert(tn, ann_gb);
            if (n > 0) rep.n1_witness = make_witness(Poly::t_power(pres.ctx, n - 1), ann_gb);
            found = true;
            break;
        }
    }
    if (!found)
        throw MathError("no power of t up to the cap annihilates T1; "
                        "the family is outside the supported setup");

    const Subquotient T2 = t2(L);
    if (is_zero_module(T2)) {
        rep.N2 = 0;
        rep.t2_levels_checked = 0;
    } else {
        std::vector<Vec> prev = scaled_kernel(T2, Poly::one(pres.ctx));
        bool stable = false;
        for (std::uint32_t i = 0; i <= cap; ++i) {
            const std::vector<Vec> next = scaled_kernel(T2, Poly::t_power(pres.ctx, i + 1));
            ++rep.t2_levels_checked;
            if (contained_in(next, prev, pres.ord, pres.caps)) {
                rep.N2 = i;
                stable = true;
                break;
            }
            rep.t2_strict_witnesses.push_back(growth_witness(next, prev, pres.ord, pres.caps));
            prev = next;
        }
        if (!stable)
            throw MathError("T2 multiplication kernels fail to stabilise below the cap");
    }

    rep.N = std::max(rep.N1, rep.N2);
    rep.threshold_k = 4 * rep.N + 1;
    rep.precision_loss = 2 * rep.N;
    return rep;
}

std::uint32_t t2_stable_index(const Presentation& pres, std::uint32_t cap) {
    const LSComplex L = ls_complex(pres);
    const Subquotient T2 = t2(L);
    if (is_zero_module(T2)) return 0;
    std::vector<Vec> prev = scaled_kernel(T2, Poly::one(pres.ctx));
    for (std::uint32_t i = 0; i <= cap; ++i) {
        const std::vector<Vec> next = scaled_kernel(T2, Poly::t_power(pres.ctx, i + 1));
        if (contained_in(next, prev, pres.ord, pres.caps)) return i;
        prev = next;
    }
    throw MathError("T2 multiplication kernels fail to stabilise below the cap");
}

namespace {

DivisorBound divisor_bound(const Presentation& pres, std::uint32_t wvar, std::uint32_t s,
                           std::uint32_t cap) {
    const LSComplex L = ls_complex(pres);
    std::vector<Poly> coeff = pres.f;
    if (s > 0) {
        Poly ws = Poly::var(pres.ctx, wvar, s);
        coeff = colon_ideal(pres.f, ws, pres.ord, pres.caps);
    }
    const Subquotient T1 = t1(L, coeff);

    DivisorBound out;
    out.s = s;
    out.ann = annihilator(T1);
    const GB ann_gb = buchberger_ideal(out.ann, pres.ord, pres.caps);

    auto probe = [&](std::uint32_t n, std::uint32_t m) {
        Monomial mono(pres.ctx->vars.size());
        mono.t = n;
        mono.z[wvar] = m;
        return Poly::term(pres.ctx, mono, Rational(1));
    };

    for (std::uint32_t n = 0; n <= cap; ++n)
        for (std::uint32_t m = 0; m <= cap; ++m) {
            const Poly p = probe(n, m);
            if (!membership(p, ann_gb)) continue;
            out.N = n;
            out.M = m;
            out.cert = make_cert(p, ann_gb);
            // monotonicity in each coordinate turns two witnesses into a
            // proof of lex minimality over the whole searched box
            if (n > 0) out.wit_N = make_witness(probe(n - 1, cap), ann_gb);
            if (m > 0) out.wit_M = make_witness(probe(n, m - 1), ann_gb);
            return out;
        }
    throw MathError("no monomial t^N w^M up to the cap annihilates the twisted T1");
}

} // namespace

DivisorReport divisor_report(const Presentation& pres, std::uint32_t divisor_var,
                             std::uint32_t cap) {
    if (!pres.ctx || divisor_var >= pres.ctx->vars.size())
        throw Error("divisor variable index out of range");
    DivisorReport rep;
    rep.divisor_var = divisor_var;
    rep.s0 = divisor_bound(pres, divisor_var, 0, cap);
    rep.s1 = divisor_bound(pres, divisor_var, 1, cap);
    return rep;
}

bool t1_support_within(const Presentation& pres, const std::vector<Poly>& cutouts) {
    const LSComplex L = ls_complex(pres);
    const Subquotient T1 = t1(L);
    const auto ann = annihilator(T1);
    Poly prod = Poly::one(pres.ctx);
    for (const auto& c : cutouts) prod = prod * c;
    return radical_membership(prod, ann, pres.ord, pres.caps);
}

} // namespace detkit
