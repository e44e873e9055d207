#include "detkit/groebner.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "detkit/errors.hpp"

namespace detkit {

namespace {

bool is_canonical(const MonomialOrder& ord) {
    return ord.kind == OrderKind::block_z_over_t_degrevlex && ord.perm.empty();
}

// leading term of a nonzero polynomial under an arbitrary order
const Term& poly_lead_under(const Poly& p, const MonomialOrder& ord) {
    if (is_canonical(ord)) return p.lead();
    const auto& ts = p.terms();
    std::size_t best = 0;
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (ord.compare(ts[i].m, ts[best].m) > 0) best = i;
    return ts[best];
}

std::uint32_t vec_total_deg(const Vec& v) {
    std::uint32_t d = 0;
    for (const auto& p : v.c)
        if (!p.is_zero()) d = std::max(d, p.total_deg());
    return d;
}

CtxPtr vec_ctx(const Vec& v) {
    for (const auto& p : v.c)
        if (p.ctx()) return p.ctx();
    return nullptr;
}

} // namespace

bool Vec::is_zero() const {
    for (const auto& p : c)
        if (!p.is_zero()) return false;
    return true;
}

Vec Vec::unit(CtxPtr ctx, std::uint32_t rank, std::uint32_t comp, Poly scale) {
    Vec v(std::move(ctx), rank);
    v.c[comp] = std::move(scale);
    return v;
}

Vec& Vec::operator+=(const Vec& o) {
    if (c.size() != o.c.size()) throw ContextError("vector rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

Vec& Vec::operator-=(const Vec& o) {
    if (c.size() != o.c.size()) throw ContextError("vector rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

Vec Vec::scaled(const Rational& r) const {
    Vec v = *this;
    for (auto& p : v.c) p = p.scaled(r);
    return v;
}

Vec Vec::mono_mul(const Monomial& m, const Rational& r) const {
    Vec v = *this;
    for (auto& p : v.c) p = p.mono_mul(m, r);
    return v;
}

Vec Vec::poly_mul(const Poly& p) const {
    Vec v = *this;
    for (auto& q : v.c) q = q * p;
    return v;
}

int vec_term_compare(std::uint32_t comp_a, const Monomial& a, std::uint32_t comp_b,
                     const Monomial& b, const MonomialOrder& ord) {
    const int c = ord.compare(a, b);
    if (c != 0) return c;
    if (comp_a == comp_b) return 0;
    return comp_a < comp_b ? 1 : -1; // lower component is the greater term
}

VecLead vec_lead(const Vec& v, const MonomialOrder& ord) {
    bool have = false;
    VecLead best;
    for (std::uint32_t i = 0; i < v.rank(); ++i) {
        if (v.c[i].is_zero()) continue;
        const Term& lt = poly_lead_under(v.c[i], ord);
        if (!have || vec_term_compare(i, lt.m, best.comp, best.m, ord) > 0) {
            best = VecLead{i, lt.m, lt.c};
            have = true;
        }
    }
    if (!have) throw Error("vec_lead: zero vector");
    return best;
}

Division divide(const Vec& v, const std::vector<Vec>& divisors, const MonomialOrder& ord) {
    CtxPtr ctx = vec_ctx(v);
    for (const auto& d : divisors)
        if (!ctx) ctx = vec_ctx(d);
    Division out;
    out.q.assign(divisors.size(), Poly::zero(ctx));
    out.rem = Vec(ctx, v.rank());

    std::vector<std::optional<VecLead>> dl(divisors.size());
    for (std::size_t i = 0; i < divisors.size(); ++i)
        if (!divisors[i].is_zero()) dl[i] = vec_lead(divisors[i], ord);

    Vec cur = v;
    while (!cur.is_zero()) {
        const VecLead lt = vec_lead(cur, ord);
        int found = -1;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (dl[i] && dl[i]->comp == lt.comp && dl[i]->m.divides(lt.m)) {
                found = static_cast<int>(i);
                break;
            }
        }
        if (found >= 0) {
            const Monomial fm = lt.m.quotient_by(dl[found]->m);
            const Rational fc = lt.c / dl[found]->c;
            out.q[found] += Poly::term(ctx, fm, fc);
            cur -= divisors[found].mono_mul(fm, fc);
        } else {
            const Poly tm = Poly::term(ctx, lt.m, lt.c);
            out.rem.c[lt.comp] += tm;
            cur.c[lt.comp] -= tm;
        }
    }
    return out;
}

namespace {

struct Work {
    Vec v;
    std::vector<Poly> rep;
    VecLead lt;
    std::uint32_t sugar = 0;
};

// Fully reduce (s, rep_s) against the listed work items.  rep bookkeeping is
// exact: on return s equals its original value minus the subtracted
// multiples, and rep_s has been adjusted to stay a valid expression of s.
void reduce_against(Vec& s, std::vector<Poly>& rep_s, std::uint32_t& sug,
                    const std::deque<Work>& items, const std::vector<std::size_t>& use,
                    const MonomialOrder& ord, const CtxPtr& ctx) {
    Vec rem(ctx, s.rank());
    while (!s.is_zero()) {
        const VecLead lt = vec_lead(s, ord);
        long found = -1;
        for (std::size_t k : use) {
            const Work& w = items[k];
            if (w.lt.comp == lt.comp && w.lt.m.divides(lt.m)) {
                found = static_cast<long>(k);
                break;
            }
        }
        if (found >= 0) {
            const Work& w = items[static_cast<std::size_t>(found)];
            const Monomial fm = lt.m.quotient_by(w.lt.m);
            const Rational fc = lt.c; // basis elements are monic
            s -= w.v.mono_mul(fm, fc);
            for (std::size_t j = 0; j < rep_s.size(); ++j)
                rep_s[j] -= w.rep[j].mono_mul(fm, fc);
            sug = std::max(sug, w.sugar + fm.total_deg());
        } else {
            const Poly tm = Poly::term(ctx, lt.m, lt.c);
            rem.c[lt.comp] += tm;
            s.c[lt.comp] -= tm;
        }
    }
    s = std::move(rem);
}

struct Pair {
    std::uint32_t i, j;
    Monomial lcm;
    std::uint32_t sugar;
};

struct PairLess {
    MonomialOrder ord;
    bool operator()(const Pair& a, const Pair& b) const {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        const int c = ord.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

} // namespace

GB buchberger(std::vector<Vec> gens, const MonomialOrder& ord, const Caps& caps) {
    GB out;
    out.ord = ord;
    out.input = gens;
    out.rank = gens.empty() ? 1 : gens[0].rank();
    for (const auto& g : gens)
        if (g.rank() != out.rank) throw ContextError("mixed ranks in generator list");

    CtxPtr ctx;
    for (const auto& g : gens)
        if (!ctx) ctx = vec_ctx(g);
    if (!ctx) return out; // no nonzero generators

    const std::size_t m = gens.size();
    std::deque<Work> items;
    std::set<Pair, PairLess> pairs(PairLess{ord});

    auto add_element = [&](Vec v, std::vector<Poly> rep, std::uint32_t sugar) {
        const VecLead lt = vec_lead(v, ord);
        if (!lt.c.is_one()) {
            const Rational inv = lt.c.inverse();
            v = v.scaled(inv);
            for (auto& p : rep) p = p.scaled(inv);
        }
        if (vec_total_deg(v) > caps.degree_cap)
            throw CapError("degree cap exceeded during basis computation");
        if (items.size() + 1 > caps.basis_cap)
            throw CapError("basis size cap exceeded");

        const std::uint32_t h = static_cast<std::uint32_t>(items.size());
        const VecLead lh = vec_lead(v, ord);
        items.push_back(Work{std::move(v), std::move(rep), lh, sugar});

        // Gebauer-Moeller criterion B on the existing queue
        std::vector<Pair> drop;
        for (const auto& pr : pairs) {
            if (items[pr.i].lt.comp != lh.comp) continue;
            if (!lh.m.divides(pr.lcm)) continue;
            if (lcm(items[pr.i].lt.m, lh.m) == pr.lcm) continue;
            if (lcm(items[pr.j].lt.m, lh.m) == pr.lcm) continue;
            drop.push_back(pr);
        }
        for (const auto& pr : drop) pairs.erase(pr);

        // candidate pairs with the new element
        struct Cand {
            std::uint32_t i;
            Monomial l;
            bool dead = false;
        };
        std::vector<Cand> cc;
        for (std::uint32_t i = 0; i < h; ++i)
            if (items[i].lt.comp == lh.comp)
                cc.push_back(Cand{i, lcm(items[i].lt.m, lh.m)});
        // criterion M: strictly smaller lcm wins
        for (auto& a : cc)
            for (const auto& b : cc) {
                if (a.dead || a.i == b.i) continue;
                if (b.l.divides(a.l) && b.l != a.l) a.dead = true;
            }
        // criterion F: among equal lcms keep the earliest
        for (auto& a : cc)
            for (const auto& b : cc) {
                if (a.dead) break;
                if (b.i < a.i && !b.dead && b.l == a.l) a.dead = true;
            }
        // product criterion, sound for ideals only
        if (out.rank == 1)
            for (auto& a : cc)
                if (!a.dead && coprime(items[a.i].lt.m, lh.m)) a.dead = true;
        for (const auto& a : cc) {
            if (a.dead) continue;
            const std::uint32_t si =
                items[a.i].sugar + a.l.quotient_by(items[a.i].lt.m).total_deg();
            const std::uint32_t sj = items[h].sugar + a.l.quotient_by(lh.m).total_deg();
            pairs.insert(Pair{a.i, h, a.l, std::max(si, sj)});
        }
    };

    for (std::size_t g = 0; g < m; ++g) {
        if (gens[g].is_zero()) continue;
        std::vector<Poly> rep(m, Poly::zero(ctx));
        rep[g] = Poly::one(ctx);
        add_element(gens[g], std::move(rep), vec_total_deg(gens[g]));
    }

    std::vector<std::size_t> all;
    std::uint64_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > caps.pair_budget)
            throw CapError("pair budget exceeded during basis computation");
        const Pair pr = *pairs.begin();
        pairs.erase(pairs.begin());

        const Work& wi = items[pr.i];
        const Work& wj = items[pr.j];
        const Monomial mi = pr.lcm.quotient_by(wi.lt.m);
        const Monomial mj = pr.lcm.quotient_by(wj.lt.m);
        Vec s = wi.v.mono_mul(mi, Rational(1));
        s -= wj.v.mono_mul(mj, Rational(1));
        std::vector<Poly> rep_s(m, Poly::zero(ctx));
        for (std::size_t k = 0; k < m; ++k) {
            rep_s[k] = wi.rep[k].mono_mul(mi, Rational(1));
            rep_s[k] -= wj.rep[k].mono_mul(mj, Rational(1));
        }
        std::uint32_t sug = pr.sugar;
        all.resize(items.size());
        for (std::size_t k = 0; k < items.size(); ++k) all[k] = k;
        reduce_against(s, rep_s, sug, items, all, ord, ctx);
        if (!s.is_zero()) add_element(std::move(s), std::move(rep_s), sug);
    }

    // minimalisation: drop elements whose lead another one divides
    std::vector<std::size_t> idx(items.size());
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const int c = vec_term_compare(items[a].lt.comp, items[a].lt.m, items[b].lt.comp,
                                       items[b].lt.m, ord);
        if (c != 0) return c < 0;
        return a < b;
    });
    std::vector<std::size_t> kept;
    for (std::size_t k : idx) {
        bool redundant = false;
        for (std::size_t p : kept)
            if (items[p].lt.comp == items[k].lt.comp && items[p].lt.m.divides(items[k].lt.m)) {
                redundant = true;
                break;
            }
        if (!redundant) kept.push_back(k);
    }

    // interreduce to a fixpoint; leads are untouched so the set stays minimal
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a : kept) {
            std::vector<std::size_t> others;
            for (std::size_t k : kept)
                if (k != a) others.push_back(k);
            Vec before = items[a].v;
            std::uint32_t sug = items[a].sugar;
            reduce_against(items[a].v, items[a].rep, sug, items, others, ord, ctx);
            items[a].sugar = sug;
            if (!(items[a].v == before)) changed = true;
        }
    }

    for (std::size_t k : kept) {
        out.basis.push_back(std::move(items[k].v));
        out.rep.push_back(std::move(items[k].rep));
    }
    return out;
}

GB buchberger_ideal(std::vector<Poly> gens, const MonomialOrder& ord, const Caps& caps) {
    std::vector<Vec> v;
    v.reserve(gens.size());
    for (auto& g : gens) {
        Vec w;
        w.c.push_back(std::move(g));
        v.push_back(std::move(w));
    }
    return buchberger(std::move(v), ord, caps);
}

Poly normal_form(const Poly& p, const GB& gb) {
    Vec v;
    v.c.push_back(p);
    return normal_form(v, gb).c[0];
}

Vec normal_form(const Vec& v, const GB& gb) {
    return divide(v, gb.basis, gb.ord).rem;
}

std::optional<std::vector<Poly>> membership(const Vec& v, const GB& gb) {
    const Division d = divide(v, gb.basis, gb.ord);
    if (!d.rem.is_zero()) return std::nullopt;
    CtxPtr ctx = vec_ctx(v);
    for (const auto& g : gb.input)
        if (!ctx) ctx = vec_ctx(g);
    std::vector<Poly> out(gb.input.size(), Poly::zero(ctx));
    for (std::size_t b = 0; b < gb.basis.size(); ++b) {
        if (d.q[b].is_zero()) continue;
        for (std::size_t j = 0; j < gb.input.size(); ++j) out[j] += d.q[b] * gb.rep[b][j];
    }
    return out;
}

std::optional<std::vector<Poly>> membership(const Poly& p, const GB& gb) {
    Vec v;
    v.c.push_back(p);
    return membership(v, gb);
}

std::vector<Vec> syzygy_basis(const std::vector<Vec>& gens, const MonomialOrder& ord,
                              const Caps& caps) {
    const std::size_t m = gens.size();
    if (m == 0) return {};
    CtxPtr ctx;
    for (const auto& g : gens)
        if (!ctx) ctx = vec_ctx(g);

    std::vector<Vec> cand;
    if (!ctx) {
        // every generator is zero: the unit vectors generate the syzygies
        return {};
    }
    for (std::size_t i = 0; i < m; ++i)
        if (gens[i].is_zero())
            cand.push_back(Vec::unit(ctx, static_cast<std::uint32_t>(m),
                                     static_cast<std::uint32_t>(i), Poly::one(ctx)));

    const GB gb = buchberger(gens, ord, caps);
    const std::size_t k = gb.basis.size();

    // coordinates of each input over the basis
    std::vector<std::vector<Poly>> S(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (gens[i].is_zero()) continue;
        Division d = divide(gens[i], gb.basis, ord);
        if (!d.rem.is_zero()) throw Error("internal: generator fails to reduce to zero");
        S[i] = std::move(d.q);
    }

    std::vector<VecLead> bl(k);
    for (std::size_t b = 0; b < k; ++b) bl[b] = vec_lead(gb.basis[b], ord);

    auto to_input_coords = [&](const std::vector<Poly>& over_basis) {
        Vec row(ctx, static_cast<std::uint32_t>(m));
        for (std::size_t b = 0; b < k; ++b) {
            if (over_basis[b].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) row.c[j] += over_basis[b] * gb.rep[b][j];
        }
        return row;
    };

    // Schreyer syzygies from every S-pair of the reduced basis
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) {
            if (bl[a].comp != bl[b].comp) continue;
            const Monomial l = lcm(bl[a].m, bl[b].m);
            const Monomial ma = l.quotient_by(bl[a].m);
            const Monomial mb = l.quotient_by(bl[b].m);
            Vec s = gb.basis[a].mono_mul(ma, Rational(1));
            s -= gb.basis[b].mono_mul(mb, Rational(1));
            Division d = divide(s, gb.basis, ord);
            if (!d.rem.is_zero()) throw Error("internal: S-pair fails to reduce to zero");
            std::vector<Poly> sig(k, Poly::zero(ctx));
            sig[a] += Poly::term(ctx, ma, Rational(1));
            sig[b] -= Poly::term(ctx, mb, Rational(1));
            for (std::size_t c = 0; c < k; ++c) sig[c] -= d.q[c];
            Vec row = to_input_coords(sig);
            if (!row.is_zero()) cand.push_back(std::move(row));
        }

    // rows of I - S*T close the gap between inputs and basis
    for (std::size_t i = 0; i < m; ++i) {
        if (gens[i].is_zero()) continue;
        Vec row = Vec::unit(ctx, static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(i),
                            Poly::one(ctx));
        row -= to_input_coords(S[i]);
        if (!row.is_zero()) cand.push_back(std::move(row));
    }

    if (cand.empty()) return {};
    return buchberger(std::move(cand), ord, caps).basis;
}

std::vector<Vec> syzygy_basis_ideal(const std::vector<Poly>& gens, const MonomialOrder& ord,
                                    const Caps& caps) {
    std::vector<Vec> v;
    v.reserve(gens.size());
    for (const auto& g : gens) {
        Vec w;
        w.c.push_back(g);
        v.push_back(std::move(w));
    }
    return syzygy_basis(v, ord, caps);
}

std::vector<Vec> module_kernel(const std::vector<Vec>& cols, std::uint32_t b,
                               const std::vector<Poly>& J, const MonomialOrder& ord,
                               const Caps& caps) {
    const std::size_t a = cols.size();
    CtxPtr ctx;
    for (const auto& c : cols)
        if (!ctx) ctx = vec_ctx(c);
    for (const auto& g : J)
        if (!ctx && g.ctx()) ctx = g.ctx();
    if (a == 0) return {};

    std::vector<Vec> gens = cols;
    for (const auto& g : J) {
        if (g.is_zero()) continue;
        for (std::uint32_t i = 0; i < b; ++i) gens.push_back(Vec::unit(ctx, b, i, g));
    }
    const auto syz = syzygy_basis(gens, ord, caps);

    std::vector<Vec> proj;
    for (const auto& s : syz) {
        Vec p(ctx, static_cast<std::uint32_t>(a));
        for (std::size_t j = 0; j < a; ++j) p.c[j] = s.c[j];
        if (!p.is_zero()) proj.push_back(std::move(p));
    }
    if (proj.empty()) return {};
    return buchberger(std::move(proj), ord, caps).basis;
}

bool radical_membership(const Poly& p, const std::vector<Poly>& gens,
                        const MonomialOrder& ord, const Caps& caps) {
    (void)ord; // the answer is order independent; the block order is used
    CtxPtr ctx = p.ctx();
    for (const auto& g : gens)
        if (!ctx && g.ctx()) ctx = g.ctx();
    if (!ctx) ctx = make_ctx({});
    if (p.is_zero()) {
        // zero lies in every radical of a proper ideal; check 1 in (gens)
        GB gb = buchberger_ideal(gens, MonomialOrder{}, caps);
        for (const auto& e : gb.basis)
            if (vec_lead(e, MonomialOrder{}).m.is_one()) return true;
        return false;
    }

    std::string uname = "u";
    auto taken = [&](const std::string& s) {
        for (const auto& v : ctx->vars)
            if (v == s) return true;
        return s == "t";
    };
    while (taken(uname)) uname += "_";
    std::vector<std::string> wide = ctx->vars;
    wide.push_back(uname);
    const CtxPtr wctx = make_ctx(wide);
    std::vector<std::uint32_t> map(ctx->vars.size());
    for (std::uint32_t i = 0; i < map.size(); ++i) map[i] = i;

    std::vector<Poly> sys;
    for (const auto& g : gens)
        if (!g.is_zero()) sys.push_back(g.embed(wctx, map));
    const Poly u = Poly::var(wctx, static_cast<std::uint32_t>(wide.size() - 1));
    sys.push_back(Poly::one(wctx) - u * p.embed(wctx, map));

    const GB gb = buchberger_ideal(sys, MonomialOrder{}, caps);
    for (const auto& e : gb.basis)
        if (vec_lead(e, MonomialOrder{}).m.is_one()) return true;
    return false;
}

} // namespace detkit
