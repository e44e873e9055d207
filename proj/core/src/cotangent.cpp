#include "detkit/cotangent.hpp"

#include "detkit/errors.hpp"

namespace detkit {

namespace {

std::vector<Vec> unit_vectors(const CtxPtr& ctx, std::uint32_t rank) {
    std::vector<Vec> u;
    for (std::uint32_t i = 0; i < rank; ++i)
        u.push_back(Vec::unit(ctx, rank, i, Poly::one(ctx)));
    return u;
}

std::vector<Vec> scaled_units(const CtxPtr& ctx, std::uint32_t rank,
                              const std::vector<Poly>& I) {
    std::vector<Vec> out;
    for (const auto& g : I) {
        if (g.is_zero()) continue;
        for (std::uint32_t i = 0; i < rank; ++i) out.push_back(Vec::unit(ctx, rank, i, g));
    }
    return out;
}

// project syzygies of (head | tail) onto the head coordinates
std::vector<Vec> head_projection(const std::vector<Vec>& combined, std::size_t head,
                                 const CtxPtr& ctx, const MonomialOrder& ord,
                                 const Caps& caps) {
    std::vector<Vec> proj;
    for (const auto& s : combined) {
        Vec p(ctx, static_cast<std::uint32_t>(head));
        for (std::size_t j = 0; j < head; ++j) p.c[j] = s.c[j];
        if (!p.is_zero()) proj.push_back(std::move(p));
    }
    if (proj.empty()) return {};
    return buchberger(std::move(proj), ord, caps).basis;
}

} // namespace

bool is_zero_module(const Subquotient& s) {
    if (s.gens.empty()) return true;
    const GB zgb = buchberger(s.zero, s.ord, s.caps);
    for (const auto& g : s.gens)
        if (!normal_form(g, zgb).is_zero()) return false;
    return true;
}

std::vector<Vec> scaled_kernel(const Subquotient& s, const Poly& p) {
    if (s.gens.empty()) return {};
    std::vector<Vec> combined;
    for (const auto& g : s.gens) combined.push_back(g.poly_mul(p));
    for (const auto& z : s.zero) combined.push_back(z);
    const auto syz = syzygy_basis(combined, s.ord, s.caps);
    return head_projection(syz, s.gens.size(), s.ctx, s.ord, s.caps);
}

std::vector<Vec> relations(const Subquotient& s) {
    return scaled_kernel(s, Poly::one(s.ctx));
}

std::vector<Poly> annihilator(const Subquotient& s) {
    if (s.gens.empty()) return {Poly::one(s.ctx)};
    std::vector<Poly> acc;
    bool first = true;
    for (const auto& g : s.gens) {
        // (span(zero) : g) via syzygies of (g | zero)
        std::vector<Vec> combined;
        combined.push_back(g);
        for (const auto& z : s.zero) combined.push_back(z);
        const auto syz = syzygy_basis(combined, s.ord, s.caps);
        std::vector<Poly> colon;
        for (const auto& v : syz)
            if (!v.c[0].is_zero()) colon.push_back(v.c[0]);
        if (first) {
            acc = std::move(colon);
            first = false;
        } else {
            acc = ideal_intersect(acc, colon, s.ord, s.caps);
        }
        if (acc.empty()) return {};
    }
    if (acc.empty()) return {};
    GB gb = buchberger_ideal(acc, s.ord, s.caps);
    std::vector<Poly> out;
    for (const auto& e : gb.basis) out.push_back(e.c[0]);
    return out;
}

Subquotient pruned(const Subquotient& s) {
    Subquotient out = s;
    out.gens.clear();
    for (const auto& g : s.gens) {
        std::vector<Vec> span = s.zero;
        for (const auto& k : out.gens) span.push_back(k);
        const GB gb = buchberger(span, s.ord, s.caps);
        if (!normal_form(g, gb).is_zero()) out.gens.push_back(g);
    }
    return out;
}

std::vector<Poly> colon_ideal(const std::vector<Poly>& I, const Poly& p,
                              const MonomialOrder& ord, const Caps& caps) {
    if (p.is_zero()) return {Poly::one(p.ctx() ? p.ctx() : make_ctx({}))};
    std::vector<Poly> gens;
    gens.push_back(p);
    for (const auto& g : I)
        if (!g.is_zero()) gens.push_back(g);
    const auto syz = syzygy_basis_ideal(gens, ord, caps);
    std::vector<Poly> out;
    for (const auto& v : syz)
        if (!v.c[0].is_zero()) out.push_back(v.c[0]);
    if (out.empty()) return {};
    GB gb = buchberger_ideal(out, ord, caps);
    out.clear();
    for (const auto& e : gb.basis) out.push_back(e.c[0]);
    return out;
}

std::vector<Poly> ideal_intersect(const std::vector<Poly>& a, const std::vector<Poly>& b,
                                  const MonomialOrder& ord, const Caps& caps) {
    std::vector<Poly> ga, gb_;
    for (const auto& p : a)
        if (!p.is_zero()) ga.push_back(p);
    for (const auto& p : b)
        if (!p.is_zero()) gb_.push_back(p);
    if (ga.empty() || gb_.empty()) return {};
    std::vector<Poly> all = ga;
    all.insert(all.end(), gb_.begin(), gb_.end());
    const auto syz = syzygy_basis_ideal(all, ord, caps);
    std::vector<Poly> out;
    for (const auto& v : syz) {
        Poly w = Poly::zero(ga[0].ctx());
        for (std::size_t i = 0; i < ga.size(); ++i) w += v.c[i] * ga[i];
        if (!w.is_zero()) out.push_back(std::move(w));
    }
    if (out.empty()) return {};
    GB gb = buchberger_ideal(out, ord, caps);
    out.clear();
    for (const auto& e : gb.basis) out.push_back(e.c[0]);
    return out;
}

LSComplex ls_complex(const Presentation& p) {
    if (!p.ctx) throw ContextError("presentation without a variable context");
    LSComplex L;
    L.pres = p;
    const std::size_t m = p.f.size();
    const std::size_t n = p.ctx->vars.size();
    L.jac.assign(m, std::vector<Poly>(n, Poly::zero(p.ctx)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            L.jac[i][j] = p.f[i].derivative(static_cast<std::uint32_t>(j));
    L.syz = syzygy_basis_ideal(p.f, p.ord, p.caps);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vec k(p.ctx, static_cast<std::uint32_t>(m));
            k.c[j] = p.f[i];
            k.c[i] = -p.f[j];
            if (!k.is_zero()) L.koszul.push_back(std::move(k));
        }
    return L;
}

namespace {

// shared kernel/image assembly for T1 given an arbitrary row list for sigma
Subquotient t1_core(const Presentation& p, const std::vector<std::vector<Poly>>& jac,
                    const std::vector<Vec>& sigma_rows, const std::vector<Poly>& coeff) {
    const std::size_t m = p.f.size();
    const std::size_t n = p.ctx->vars.size();
    const std::size_t q = sigma_rows.size();

    std::vector<Vec> ker;
    if (q == 0) {
        ker = unit_vectors(p.ctx, static_cast<std::uint32_t>(m));
    } else {
        std::vector<Vec> cols;
        for (std::size_t i = 0; i < m; ++i) {
            Vec col(p.ctx, static_cast<std::uint32_t>(q));
            for (std::size_t k = 0; k < q; ++k) col.c[k] = sigma_rows[k].c[i];
            cols.push_back(std::move(col));
        }
        ker = module_kernel(cols, static_cast<std::uint32_t>(q), coeff, p.ord, p.caps);
    }

    std::vector<Vec> zero;
    for (std::size_t j = 0; j < n; ++j) {
        Vec col(p.ctx, static_cast<std::uint32_t>(m));
        for (std::size_t i = 0; i < m; ++i) col.c[i] = jac[i][j];
        if (!col.is_zero()) zero.push_back(std::move(col));
    }
    for (auto& u : scaled_units(p.ctx, static_cast<std::uint32_t>(m), coeff))
        zero.push_back(std::move(u));

    return Subquotient{p.ctx, static_cast<std::uint32_t>(m), std::move(ker), std::move(zero),
                       p.ord, p.caps};
}

} // namespace

Subquotient t0(const LSComplex& L, const std::vector<Poly>& coeff) {
    const Presentation& p = L.pres;
    const std::size_t m = p.f.size();
    const std::size_t n = p.ctx->vars.size();
    std::vector<Vec> ker;
    if (m == 0) {
        // kernel of the zero pairing is the whole free module
        for (std::size_t j = 0; j < n; ++j) {
            Vec u(p.ctx, static_cast<std::uint32_t>(n));
            u.c[j] = Poly::one(p.ctx);
            ker.push_back(std::move(u));
        }
    } else if (n > 0) {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < n; ++j) {
            Vec col(p.ctx, static_cast<std::uint32_t>(m));
            for (std::size_t i = 0; i < m; ++i) col.c[i] = L.jac[i][j];
            cols.push_back(std::move(col));
        }
        ker = module_kernel(cols, static_cast<std::uint32_t>(m), coeff, p.ord, p.caps);
    }
    return Subquotient{p.ctx, static_cast<std::uint32_t>(n), std::move(ker),
                       scaled_units(p.ctx, static_cast<std::uint32_t>(n), coeff), p.ord,
                       p.caps};
}

Subquotient t1(const LSComplex& L, const std::vector<Poly>& coeff) {
    return t1_core(L.pres, L.jac, L.syz, coeff);
}

Subquotient t2(const LSComplex& L, const std::vector<Poly>& coeff) {
    const Presentation& p = L.pres;
    const std::size_t m = p.f.size();
    const std::size_t q = L.syz.size();
    if (q == 0)
        return Subquotient{p.ctx, 0, {}, {}, p.ord, p.caps};

    // relations of the second homotopy module: combinations of the
    // generating syzygies landing in the Koszul span
    std::vector<Vec> combined = L.syz;
    for (const auto& k : L.koszul) combined.push_back(k);
    const auto syz2 = syzygy_basis(combined, p.ord, p.caps);
    const auto R = head_projection(syz2, q, p.ctx, p.ord, p.caps);

    std::vector<Vec> ker;
    if (R.empty()) {
        ker = unit_vectors(p.ctx, static_cast<std::uint32_t>(q));
    } else {
        std::vector<Vec> cols;
        for (std::size_t k = 0; k < q; ++k) {
            Vec col(p.ctx, static_cast<std::uint32_t>(R.size()));
            for (std::size_t r = 0; r < R.size(); ++r) col.c[r] = R[r].c[k];
            cols.push_back(std::move(col));
        }
        ker = module_kernel(cols, static_cast<std::uint32_t>(R.size()), coeff, p.ord, p.caps);
    }

    std::vector<Vec> zero;
    for (std::size_t i = 0; i < m; ++i) {
        Vec col(p.ctx, static_cast<std::uint32_t>(q));
        for (std::size_t k = 0; k < q; ++k) col.c[k] = L.syz[k].c[i];
        if (!col.is_zero()) zero.push_back(std::move(col));
    }
    for (auto& u : scaled_units(p.ctx, static_cast<std::uint32_t>(q), coeff))
        zero.push_back(std::move(u));

    return Subquotient{p.ctx, static_cast<std::uint32_t>(q), std::move(ker), std::move(zero),
                       p.ord, p.caps};
}

Subquotient t0(const LSComplex& L) { return t0(L, L.pres.f); }
Subquotient t1(const LSComplex& L) { return t1(L, L.pres.f); }
Subquotient t2(const LSComplex& L) { return t2(L, L.pres.f); }

Subquotient t1_truncated(const Presentation& p, std::uint32_t L) {
    if (!p.ctx) throw ContextError("presentation without a variable context");
    const std::size_t m = p.f.size();
    const std::size_t n = p.ctx->vars.size();

    std::vector<std::vector<Poly>> jac(m, std::vector<Poly>(n, Poly::zero(p.ctx)));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            jac[i][j] = p.f[i].derivative(static_cast<std::uint32_t>(j));

    std::vector<Poly> coeff = p.f;
    coeff.push_back(Poly::t_power(p.ctx, L));

    // syzygies of f relative to (t^L): project Syz(f, t^L) onto the f slots
    const auto syz = syzygy_basis_ideal(coeff, p.ord, p.caps);
    const auto rows = head_projection(syz, m, p.ctx, p.ord, p.caps);

    return t1_core(p, jac, rows, coeff);
}

} // namespace detkit
