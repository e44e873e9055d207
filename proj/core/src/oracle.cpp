#include "detkit/oracle.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace detkit {

namespace {

// Deterministic enumeration of the box monomials: t-exponent ascending,
// z-tuples in recursive counting order within each t-layer.
struct BoxSpace {
    CtxPtr ctx;
    TruncationBox box;
    std::vector<Monomial> monos;
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;

    BoxSpace(CtxPtr c, TruncationBox b) : ctx(std::move(c)), box(b) {
        std::size_t n = ctx ? ctx->vars.size() : 0;
        std::vector<std::vector<std::uint32_t>> tuples;
        std::vector<std::uint32_t> cur(n, 0);
        gen_tuples(0, box.d, cur, tuples);
        for (std::uint32_t t = 0; t < box.L; ++t) {
            for (const auto& z : tuples) {
                Monomial m(n);
                m.t = t;
                m.z = z;
                index.emplace(key(m), static_cast<std::uint32_t>(monos.size()));
                monos.push_back(std::move(m));
            }
        }
    }

    static void gen_tuples(std::size_t pos, std::uint32_t rem,
                           std::vector<std::uint32_t>& cur,
                           std::vector<std::vector<std::uint32_t>>& out) {
        if (pos == cur.size()) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t e = 0; e <= rem; ++e) {
            cur[pos] = e;
            gen_tuples(pos + 1, rem - e, cur, out);
        }
        cur[pos] = 0;
    }

    static std::vector<std::uint32_t> key(const Monomial& m) {
        std::vector<std::uint32_t> k;
        k.reserve(1 + m.z.size());
        k.push_back(m.t);
        k.insert(k.end(), m.z.begin(), m.z.end());
        return k;
    }

    std::size_t size() const { return monos.size(); }

    bool fits(const Monomial& m) const { return m.t < box.L && m.zdeg() <= box.d; }

    // exact coordinates; nullopt when some term falls outside the box
    std::optional<SparseVec> to_vec(const Poly& p) const {
        std::vector<std::pair<std::uint32_t, Rational>> ix;
        ix.reserve(p.nterms());
        for (const auto& tm : p.terms()) {
            auto it = index.find(key(tm.m));
            if (it == index.end()) return std::nullopt;
            ix.emplace_back(it->second, tm.c);
        }
        std::sort(ix.begin(), ix.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec v;
        for (auto& e : ix) v.push(e.first, std::move(e.second));
        return v;
    }

    // coordinates of the image in the boxed quotient: outside terms drop
    SparseVec project(const Poly& p) const {
        std::vector<std::pair<std::uint32_t, Rational>> ix;
        for (const auto& tm : p.terms()) {
            auto it = index.find(key(tm.m));
            if (it != index.end()) ix.emplace_back(it->second, tm.c);
        }
        std::sort(ix.begin(), ix.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec v;
        for (auto& e : ix) v.push(e.first, std::move(e.second));
        return v;
    }

    Poly from_vec(const SparseVec& v) const {
        std::vector<Term> terms;
        terms.reserve(v.e.size());
        for (const auto& [idx, c] : v.e) terms.push_back({monos[idx], c});
        return Poly::from_terms(ctx, std::move(terms));
    }
};

CtxPtr pick_ctx(const Poly& p, const std::vector<Poly>& gens) {
    if (p.ctx()) return p.ctx();
    for (const auto& g : gens)
        if (g.ctx()) return g.ctx();
    return nullptr;
}

// span of the ideal image inside the boxed quotient algebra
Echelon ideal_span(const BoxSpace& B, const std::vector<Poly>& f) {
    Echelon E;
    for (const auto& g : f) {
        if (g.is_zero()) continue;
        for (const auto& mu : B.monos) E.add(B.project(g.mono_mul(mu, Rational(1))));
    }
    return E;
}

// stack per-slot class representatives into one vector, slot i at offset i*dim
SparseVec stack(const std::vector<SparseVec>& slots, std::size_t dim) {
    SparseVec out;
    for (std::size_t i = 0; i < slots.size(); ++i)
        for (const auto& [idx, c] : slots[i].e)
            out.push(static_cast<std::uint32_t>(i * dim + idx), c);
    return out;
}

// rank of the map sent, generator by generator, through the boxed quotient:
// for each domain slot j and box monomial mu the column stacks the classes
// of entries[r][j] * mu over the target slots r.
std::size_t boxed_map_rank(const BoxSpace& B, const Echelon& U,
                           const std::vector<std::vector<Poly>>& entries,
                           std::size_t domain_slots) {
    std::size_t rows = entries.size();
    if (rows == 0 || domain_slots == 0) return 0;
    Echelon image;
    std::vector<SparseVec> slots(rows);
    for (std::size_t j = 0; j < domain_slots; ++j) {
        for (const auto& mu : B.monos) {
            for (std::size_t r = 0; r < rows; ++r) {
                SparseVec v = B.project(entries[r][j].mono_mul(mu, Rational(1)));
                U.reduce(v, nullptr);
                slots[r] = std::move(v);
            }
            image.add(stack(slots, B.size()));
        }
    }
    return image.rank();
}

// exact syzygies of f with components supported in the margin box
std::vector<std::vector<Poly>> margin_syzygies(const Presentation& pres,
                                               TruncationBox box) {
    std::uint32_t mt = max_tdeg(pres.f), mz = max_zdeg(pres.f);
    BoxSpace Bm(pres.ctx, {box.L + mt, box.d + mz});
    BoxSpace Bp(pres.ctx, {Bm.box.L + mt, Bm.box.d + mz});
    std::size_t m = pres.f.size();
    std::vector<SparseVec> cols;
    cols.reserve(m * Bm.size());
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& mu : Bm.monos) {
            auto v = Bp.to_vec(pres.f[i].mono_mul(mu, Rational(1)));
            cols.push_back(std::move(*v));
        }
    std::vector<std::vector<Poly>> syz;
    for (const auto& rel : kernel_basis(cols)) {
        std::vector<Poly> p(m, Poly::zero(pres.ctx));
        for (const auto& [idx, c] : rel.e) {
            std::size_t i = idx / Bm.size(), k = idx % Bm.size();
            p[i] += Poly::term(pres.ctx, Bm.monos[k], c);
        }
        syz.push_back(std::move(p));
    }
    return syz;
}

std::vector<std::vector<Poly>> jacobian_rows(const Presentation& pres) {
    std::size_t n = pres.ctx->vars.size();
    std::vector<std::vector<Poly>> jac(pres.f.size());
    for (std::size_t i = 0; i < pres.f.size(); ++i) {
        jac[i].reserve(n);
        for (std::size_t j = 0; j < n; ++j)
            jac[i].push_back(pres.f[i].derivative(static_cast<std::uint32_t>(j)));
    }
    return jac;
}

// filter a stacked vector down to the coordinates with t-exponent <= layer
SparseVec restrict_layers(const SparseVec& v, const BoxSpace& B, std::uint32_t layer) {
    SparseVec out;
    for (const auto& [idx, c] : v.e)
        if (B.monos[idx % B.size()].t <= layer) out.push(idx, c);
    return out;
}

} // namespace

std::size_t box_dimension(const CtxPtr& ctx, TruncationBox box) {
    return BoxSpace(ctx, box).size();
}

BruteResult brute_membership(const Poly& p, const std::vector<Poly>& gens,
                             TruncationBox box) {
    CtxPtr ctx = pick_ctx(p, gens);
    BruteResult out;
    out.witness.assign(gens.size(), Poly::zero(ctx));
    if (p.is_zero()) {
        out.status = BruteStatus::member;
        return out;
    }
    BoxSpace B(ctx, box);
    auto pv = B.to_vec(p);
    if (!pv) {
        out.status = BruteStatus::box_too_small;
        out.witness.clear();
        return out;
    }
    Echelon E;
    std::vector<std::pair<std::size_t, std::uint32_t>> tags; // (gen, monomial)
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        if (gens[gi].is_zero()) continue;
        for (std::uint32_t k = 0; k < B.size(); ++k) {
            auto mv = B.to_vec(gens[gi].mono_mul(B.monos[k], Rational(1)));
            if (!mv) continue; // multiple leaves the box
            E.feed(std::move(*mv), static_cast<std::uint32_t>(tags.size()));
            tags.emplace_back(gi, k);
        }
    }
    SparseVec w;
    if (!E.contains(*pv, &w)) {
        out.status = BruteStatus::not_member_within_box;
        out.witness.clear();
        return out;
    }
    out.status = BruteStatus::member;
    for (const auto& [tag, c] : w.e) {
        const auto& [gi, k] = tags[tag];
        out.witness[gi] += Poly::term(ctx, B.monos[k], c);
    }
    return out;
}

std::size_t truncated_quotient_dimension(const Presentation& pres, TruncationBox box) {
    BoxSpace B(pres.ctx, box);
    return B.size() - ideal_span(B, pres.f).rank();
}

std::size_t truncated_t0_dimension(const Presentation& pres, TruncationBox box) {
    BoxSpace B(pres.ctx, box);
    Echelon U = ideal_span(B, pres.f);
    std::size_t dimA = B.size() - U.rank();
    std::size_t n = pres.ctx->vars.size();
    return n * dimA - boxed_map_rank(B, U, jacobian_rows(pres), n);
}

std::size_t truncated_t1_dimension(const Presentation& pres, TruncationBox box) {
    BoxSpace B(pres.ctx, box);
    std::size_t m = pres.f.size();
    std::size_t n = pres.ctx->vars.size();
    if (m == 0) return 0;

    // denominator: Jacobian-column multiples and per-slot ideal multiples,
    // projected into the box; one span since the two overlap
    std::vector<std::vector<Poly>> jac = jacobian_rows(pres);
    std::vector<SparseVec> dcols;
    std::vector<SparseVec> slots(m);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& mu : B.monos) {
            for (std::size_t i = 0; i < m; ++i)
                slots[i] = B.project(jac[i][j].mono_mul(mu, Rational(1)));
            dcols.push_back(stack(slots, B.size()));
        }
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& g : pres.f)
            for (const auto& mu : B.monos) {
                SparseVec col;
                for (const auto& [idx, c] : B.project(g.mono_mul(mu, Rational(1))).e)
                    col.push(static_cast<std::uint32_t>(i * B.size() + idx), c);
                dcols.push_back(std::move(col));
            }
    Echelon ED;
    for (const auto& c : dcols) ED.add(c);
    std::size_t rank_den = ED.rank();

    std::vector<std::vector<Poly>> syz = margin_syzygies(pres, box);
    std::size_t q = syz.size();
    if (q == 0) return m * B.size() - rank_den;

    // syzygy conditions evaluated without truncation: products of a syzygy
    // entry with a box monomial land in an enlarged box and are reduced
    // against the ideal span there, so boundary classes see the genuine
    // relation instead of a vacuous one
    std::uint32_t MT = 0, MZ = 0;
    for (const auto& s : syz)
        for (const auto& e : s) {
            MT = std::max(MT, e.max_tdeg());
            MZ = std::max(MZ, e.max_zdeg());
        }
    BoxSpace Bs(pres.ctx, {box.L + MT, box.d + MZ});
    Echelon Us = ideal_span(Bs, pres.f);

    std::vector<SparseVec> sigma_col(m * B.size());
    std::vector<SparseVec> rows(q);
    Echelon ES;
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < B.size(); ++k) {
            for (std::size_t r = 0; r < q; ++r) {
                SparseVec v = *Bs.to_vec(syz[r][j].mono_mul(B.monos[k], Rational(1)));
                Us.reduce(v, nullptr);
                rows[r] = std::move(v);
            }
            sigma_col[j * B.size() + k] = stack(rows, Bs.size());
            ES.add(sigma_col[j * B.size() + k]);
        }
    std::size_t rank_sigma = ES.rank();

    // the projected denominator need not lie inside the condition kernel at
    // the boundary, so the intersection is counted through the composite map
    Echelon ESD;
    for (const auto& d : dcols) {
        SparseVec img;
        for (const auto& [idx, c] : d.e) img.add_scaled(sigma_col[idx], c);
        ESD.add(img);
    }
    std::size_t rank_comp = ESD.rank();

    return (m * B.size() - rank_sigma) - (rank_den - rank_comp);
}

std::size_t truncated_t2_dimension(const Presentation& pres, TruncationBox box) {
    std::size_t m = pres.f.size();
    // generating syzygies are borrowed from the resolution machinery; the
    // rank computations stay in the box
    std::vector<Vec> syz = syzygy_basis_ideal(pres.f, pres.ord, pres.caps);
    std::size_t q = syz.size();
    if (q == 0) return 0;

    std::vector<Vec> combined = syz;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vec k(pres.ctx, static_cast<std::uint32_t>(m));
            k.c[j] = pres.f[i];
            k.c[i] = -pres.f[j];
            combined.push_back(std::move(k));
        }
    std::vector<Vec> rel = syzygy_basis(combined, pres.ord, pres.caps);

    BoxSpace B(pres.ctx, box);
    Echelon U = ideal_span(B, pres.f);
    std::size_t dimA = B.size() - U.rank();

    std::vector<std::vector<Poly>> rho;
    for (const auto& r : rel) {
        std::vector<Poly> row(q);
        for (std::size_t k = 0; k < q; ++k) row[k] = r.c[k];
        rho.push_back(std::move(row));
    }
    std::vector<std::vector<Poly>> sig;
    for (std::size_t k = 0; k < q; ++k) {
        std::vector<Poly> row(m);
        for (std::size_t i = 0; i < m; ++i) row[i] = syz[k].c[i];
        sig.push_back(std::move(row));
    }
    std::size_t rank_rho = boxed_map_rank(B, U, rho, q);
    std::size_t rank_sig = boxed_map_rank(B, U, sig, m);
    return q * dimA - rank_rho - rank_sig;
}

std::size_t truncated_dimension(const Subquotient& s, TruncationBox box) {
    if (s.rank == 0 || s.gens.empty()) return 0;
    BoxSpace B(s.ctx, box);
    Echelon E;
    std::vector<SparseVec> slots(s.rank);
    auto feed_multiples = [&](const std::vector<Vec>& vs) {
        for (const auto& v : vs)
            for (const auto& mu : B.monos) {
                for (std::uint32_t i = 0; i < s.rank; ++i)
                    slots[i] = B.project(v.c[i].mono_mul(mu, Rational(1)));
                E.add(stack(slots, B.size()));
            }
    };
    feed_multiples(s.zero);
    std::size_t rank_zero = E.rank();
    feed_multiples(s.gens);
    return E.rank() - rank_zero;
}

IsoSearchResult truncated_iso_search(const Presentation& orig, const std::vector<Poly>& pert,
                                     std::uint32_t s0, std::uint32_t target,
                                     TruncationBox box) {
    IsoSearchResult out;
    const CtxPtr& ctx = orig.ctx;
    std::size_t n = ctx->vars.size(), m = orig.f.size();
    if (target > box.L) {
        out.note = "target exceeds the box";
        return out;
    }
    BoxSpace B(ctx, box);

    // reduction span: multiples of the perturbed equations that stay inside
    // the box, fed with transcripts so witnesses can be read off at the end
    Echelon E;
    std::vector<std::pair<std::size_t, std::uint32_t>> tags;
    for (std::size_t gi = 0; gi < pert.size(); ++gi) {
        if (pert[gi].is_zero()) continue;
        for (std::uint32_t k = 0; k < B.size(); ++k) {
            auto mv = B.to_vec(pert[gi].mono_mul(B.monos[k], Rational(1)));
            if (!mv) continue;
            E.feed(std::move(*mv), static_cast<std::uint32_t>(tags.size()));
            tags.emplace_back(gi, k);
        }
    }

    std::uint32_t o_min = (s0 + 2) / 2;
    std::vector<Poly> images;
    images.reserve(n);
    for (std::uint32_t j = 0; j < n; ++j) images.push_back(Poly::var(ctx, j));

    // z-monomial correction shapes (t-free part of the unknowns)
    std::vector<Monomial> shapes;
    for (const auto& mu : B.monos)
        if (mu.t == 0) shapes.push_back(mu);

    std::optional<std::uint32_t> prev_layer;
    for (std::uint32_t round = 0; round <= target + 2; ++round) {
        // exact residuals and their canonical representatives mod the span
        std::vector<SparseVec> red(m);
        std::optional<std::uint32_t> layer;
        for (std::size_t i = 0; i < m; ++i) {
            Poly r = orig.f[i].substitute(images);
            auto rv = B.to_vec(r);
            if (!rv) {
                out.note = "residual escapes the box";
                return out;
            }
            red[i] = std::move(*rv);
            E.reduce(red[i], nullptr);
            for (const auto& [idx, c] : red[i].e) {
                std::uint32_t t = B.monos[idx].t;
                if (t < target && (!layer || t < *layer)) layer = t;
            }
        }

        if (!layer) {
            // success: everything below the target order is absorbed
            out.found = true;
            out.images = images;
            out.witness.assign(m, std::vector<Poly>(pert.size(), Poly::zero(ctx)));
            out.tails.reserve(m);
            for (std::size_t i = 0; i < m; ++i) {
                Poly r = orig.f[i].substitute(images);
                SparseVec v = *B.to_vec(r), expr;
                E.reduce(v, &expr);
                for (const auto& [tag, c] : expr.e) {
                    const auto& [gi, k] = tags[tag];
                    out.witness[i][gi] += Poly::term(ctx, B.monos[k], c);
                }
                out.tails.push_back(B.from_vec(v));
            }
            return out;
        }
        if (prev_layer && *layer <= *prev_layer) {
            out.note = "no progress at order " + std::to_string(*layer);
            return out;
        }
        prev_layer = layer;

        // solve for corrections of t-order in [o_min, layer] cancelling all
        // residual classes through that layer
        Echelon S;
        std::vector<std::tuple<std::uint32_t, std::uint32_t, std::size_t>> unknowns;
        std::vector<SparseVec> slots(m);
        for (std::uint32_t j = 0; j < n; ++j) {
            std::vector<Poly> dcol(m);
            for (std::size_t i = 0; i < m; ++i)
                dcol[i] = orig.f[i].derivative(j).substitute(images);
            for (std::uint32_t o = o_min; o <= *layer; ++o)
                for (std::size_t sh = 0; sh < shapes.size(); ++sh) {
                    Monomial mu = shapes[sh];
                    mu.t = o;
                    bool fits = true;
                    for (std::size_t i = 0; i < m && fits; ++i) {
                        Poly prod = dcol[i].mono_mul(mu, Rational(1));
                        auto pv = B.to_vec(prod);
                        if (!pv) {
                            fits = false;
                            break;
                        }
                        E.reduce(*pv, nullptr);
                        slots[i] = std::move(*pv);
                    }
                    if (!fits) continue;
                    SparseVec col = restrict_layers(stack(slots, B.size()), B, *layer);
                    S.feed(std::move(col), static_cast<std::uint32_t>(unknowns.size()));
                    unknowns.emplace_back(j, o, sh);
                }
        }
        SparseVec goal = restrict_layers(stack(red, B.size()), B, *layer);
        goal.scale(Rational(-1));
        SparseVec sol;
        if (!S.contains(std::move(goal), &sol)) {
            out.note = "no correction found at order " + std::to_string(*layer);
            return out;
        }
        for (const auto& [tag, c] : sol.e) {
            auto [j, o, sh] = unknowns[tag];
            Monomial mu = shapes[sh];
            mu.t = o;
            images[j] += Poly::term(ctx, mu, c);
        }
    }
    out.note = "round limit reached";
    return out;
}

} // namespace detkit
