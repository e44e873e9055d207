#include "detkit/lifting.hpp"

#include <map>

#include "detkit/errors.hpp"

namespace detkit {

namespace {

// t^tpow, optionally times w^wpow
Poly window_poly(const CtxPtr& ctx, std::uint32_t tpow,
                 const std::optional<DivisorDatum>& div, std::uint32_t wpow) {
    Monomial m(ctx->vars.size());
    m.t = tpow;
    if (div) m.z[div->var] = wpow;
    return Poly::term(ctx, m, Rational(1));
}

Monomial scale_monomial(const CtxPtr& ctx, std::uint32_t tpow,
                        const std::optional<DivisorDatum>& div, std::uint32_t wpow) {
    Monomial m(ctx->vars.size());
    m.t = tpow;
    if (div) m.z[div->var] = wpow;
    return m;
}

// every term divisible by t^tpow (and by w^wpow when a divisor is set)
bool in_window(const Poly& p, std::uint32_t tpow, const std::optional<DivisorDatum>& div,
               std::uint32_t wpow) {
    if (!p.in_t_power(tpow)) return false;
    if (div && !p.in_var_power(div->var, wpow)) return false;
    return true;
}

// termwise division by t^tpow (and w^wpow); caller checks divisibility
Poly window_shift_down(const Poly& p, std::uint32_t tpow,
                       const std::optional<DivisorDatum>& div, std::uint32_t wpow) {
    std::vector<Term> ts;
    ts.reserve(p.nterms());
    for (const auto& tm : p.terms()) {
        Monomial m = tm.m;
        m.t -= tpow;
        if (div) m.z[div->var] -= wpow;
        ts.push_back({std::move(m), tm.c});
    }
    return Poly::from_terms(p.ctx(), std::move(ts));
}

} // namespace

FamilyPair make_family_pair(Presentation orig, std::vector<Poly> pert, std::uint32_t k,
                            std::optional<DivisorDatum> divisor) {
    if (!orig.ctx) throw ContextError("family without a variable context");
    if (orig.f.empty()) throw MathError("family needs at least one equation");
    if (pert.size() != orig.f.size())
        throw MathError("perturbed family must have the same number of equations");
    if (k == 0) throw MathError("agreement order k must be positive");
    for (const auto& p : pert)
        if (!same_ctx(p.ctx(), orig.ctx))
            throw ContextError("perturbed equations use a different variable context");
    if (divisor && divisor->var >= orig.ctx->vars.size())
        throw Error("divisor variable index out of range");

    const std::uint32_t r = divisor ? divisor->r : 0;
    const Poly win = window_poly(orig.ctx, k, divisor, r);

    std::vector<Poly> fw = orig.f;
    fw.push_back(win);
    const GB gb_f = buchberger_ideal(fw, orig.ord, orig.caps);
    for (std::size_t i = 0; i < pert.size(); ++i)
        if (!membership(pert[i], gb_f))
            throw MathError("perturbed equation " + std::to_string(i) +
                            " does not agree with the family inside the window");

    std::vector<Poly> pw = pert;
    pw.push_back(win);
    const GB gb_p = buchberger_ideal(pw, orig.ord, orig.caps);
    for (std::size_t i = 0; i < orig.f.size(); ++i)
        if (!membership(orig.f[i], gb_p))
            throw MathError("original equation " + std::to_string(i) +
                            " does not agree with the perturbation inside the window");

    return FamilyPair{std::move(orig), std::move(pert), k, divisor};
}

std::vector<LiftedEquation> lift_equations(const FamilyPair& pair) {
    const Presentation& p = pair.orig;
    const std::uint32_t r = pair.divisor ? pair.divisor->r : 0;
    const Poly win = window_poly(p.ctx, pair.k, pair.divisor, r);

    std::vector<Poly> gens = pair.pert;
    gens.push_back(win);
    const GB gb = buchberger_ideal(gens, p.ord, p.caps);

    std::vector<LiftedEquation> out;
    for (const auto& f : p.f) {
        auto cert = membership(f, gb);
        if (!cert) throw Error("internal: pair invariant lost");
        LiftedEquation e;
        e.cofactor = cert->back();
        cert->pop_back();
        e.coeffs = std::move(*cert);
        e.lifted = f - win * e.cofactor;
        Poly check = Poly::zero(p.ctx);
        for (std::size_t j = 0; j < pair.pert.size(); ++j) check += e.coeffs[j] * pair.pert[j];
        if (check != e.lifted) throw Error("internal: lifted equation fails to re-expand");
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Poly> lift_relation(const Presentation& pres, const std::vector<Poly>& approx,
                                std::uint32_t l) {
    if (approx.size() != pres.f.size())
        throw MathError("relation length must match the number of equations");
    Poly S = Poly::zero(pres.ctx);
    for (std::size_t i = 0; i < approx.size(); ++i) S += approx[i] * pres.f[i];
    if (S.is_zero()) return approx;
    if (!S.in_t_power(l))
        throw MathError("the combination does not vanish to the stated order");

    const Poly rho = S.t_shift_down(l);
    const GB gb = buchberger_ideal(pres.f, pres.ord, pres.caps);
    auto cert = membership(rho, gb);
    if (!cert)
        throw MathError("order-" + std::to_string(l) +
                        " relation defect is not a combination of the equations; "
                        "the family cannot be flat over the base");

    std::vector<Poly> out = approx;
    const Poly tl = Poly::t_power(pres.ctx, l);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= tl * (*cert)[i];

    Poly zero = Poly::zero(pres.ctx);
    for (std::size_t i = 0; i < out.size(); ++i) zero += out[i] * pres.f[i];
    if (!zero.is_zero()) throw Error("internal: lifted relation fails to re-expand");
    return out;
}

Poly MapTruncation::apply(const Poly& p, std::uint32_t trunc) const {
    return p.substitute(images, trunc);
}

LiftCertificate formal_lift(const FamilyPair& pair, std::uint32_t target_L,
                            std::uint32_t cap) {
    const Presentation& pres = pair.orig;
    const CtxPtr& ctx = pres.ctx;
    const std::size_t m = pres.f.size();
    const std::size_t n = ctx->vars.size();
    if (target_L == 0) throw MathError("target truncation order must be positive");

    LiftCertificate out;
    out.pair = pair;
    out.target_L = target_L;

    std::uint32_t N = 0, M = 0;
    const std::uint32_t r = pair.divisor ? pair.divisor->r : 0;
    if (pair.divisor) {
        const DivisorReport drep = divisor_report(pres, pair.divisor->var, cap);
        N = std::max({drep.s0.N, drep.s1.N, t2_stable_index(pres, cap)});
        M = std::max(drep.s0.M, drep.s1.M);
        if (pair.k < 4 * N + 1)
            throw MathError("agreement order k=" + std::to_string(pair.k) +
                            " is below the threshold 4N+1=" + std::to_string(4 * N + 1));
        if (r < 4 * M + 1)
            throw MathError("divisor window r=" + std::to_string(r) +
                            " is below the threshold 4M+1=" + std::to_string(4 * M + 1));
        // the correction windows twist the coefficients by w^(r-2M); the
        // bound (N, M) must hold for that twist as well
        const std::uint32_t s = r - 2 * M;
        std::vector<Poly> coeff = pres.f;
        if (s > 0)
            coeff = colon_ideal(pres.f, Poly::var(ctx, pair.divisor->var, s), pres.ord,
                                pres.caps);
        const Subquotient t1s = t1(ls_complex(pres), coeff);
        const auto ann = annihilator(t1s);
        const GB ann_gb = buchberger_ideal(ann, pres.ord, pres.caps);
        if (!membership(window_poly(ctx, N, pair.divisor, M), ann_gb))
            throw MathError("divisor bound is not uniform at twist " + std::to_string(s));
    } else {
        const DeterminacyReport drep = determinacy(pres, cap);
        N = drep.N;
        if (pair.k < drep.threshold_k)
            throw MathError("agreement order k=" + std::to_string(pair.k) +
                            " is below the threshold 4N+1=" + std::to_string(drep.threshold_k));
    }
    out.N = N;
    out.M = M;
    out.agreement_order = pair.k - 2 * N;
    const std::uint32_t W = target_L + 2 * N + 1;
    out.working_L = W;

    // one correction solver for every stage: eta with
    //   Jac * eta = t^2N w^2M * residual  modulo (f) + (t^(2N+1) w^(2M+1))
    std::vector<Vec> thg;
    for (std::size_t j = 0; j < n; ++j) {
        Vec col(ctx, static_cast<std::uint32_t>(m));
        for (std::size_t i = 0; i < m; ++i)
            col.c[i] = pres.f[i].derivative(static_cast<std::uint32_t>(j));
        thg.push_back(std::move(col));
    }
    for (const auto& g : pres.f)
        for (std::size_t i = 0; i < m; ++i)
            thg.push_back(Vec::unit(ctx, static_cast<std::uint32_t>(m),
                                    static_cast<std::uint32_t>(i), g));
    const Poly win_hi = window_poly(ctx, 2 * N + 1, pair.divisor, 2 * M + 1);
    for (std::size_t i = 0; i < m; ++i)
        thg.push_back(Vec::unit(ctx, static_cast<std::uint32_t>(m),
                                static_cast<std::uint32_t>(i), win_hi));
    const GB theta_gb = buchberger(thg, pres.ord, pres.caps);

    // with a divisor the t-truncation would leave the w window, so that
    // branch runs on exact polynomials throughout
    const std::uint32_t subst_trunc = pair.divisor ? 0 : W;

    std::vector<Poly> images;
    for (std::size_t j = 0; j < n; ++j)
        images.push_back(Poly::var(ctx, static_cast<std::uint32_t>(j)));
    std::map<std::uint32_t, std::vector<Poly>> snaps;
    snaps[pair.k] = images;

    // one basis at the agreement level writes phi(f_i) as a combination of
    // the perturbed generators plus a window multiple; the stage loop then
    // carries that decomposition forward through the correction certificates
    // instead of recomputing a basis per level
    const Poly win_k = window_poly(ctx, pair.k, pair.divisor, r);
    std::vector<Poly> base = pair.pert;
    base.push_back(win_k);
    const GB gb_base = buchberger_ideal(base, pres.ord, pres.caps);
    std::vector<Poly> combo;   // f_i minus its window part, as a pert combination
    std::vector<Poly> pending; // phi(f_i) = -pending[i] modulo the window remainder
    for (std::size_t i = 0; i < m; ++i) {
        auto cert = membership(pres.f[i], gb_base);
        if (!cert) throw Error("internal: agreement level decomposition failed");
        combo.push_back(pres.f[i] - win_k * cert->back());
        pending.push_back(-combo.back());
    }

    for (std::uint32_t l = pair.k; l < W; ++l) {
        std::vector<Poly> fphi, rem;
        bool any = false;
        for (std::size_t i = 0; i < m; ++i) {
            fphi.push_back(pres.f[i].substitute(images, subst_trunc));
            Poly R = fphi.back() + pending[i];
            if (subst_trunc) R = R.truncate_t(W);
            if (!in_window(R, l, pair.divisor, r))
                throw Error("internal: stage invariant lost at level " + std::to_string(l));
            if (!R.is_zero()) any = true;
            rem.push_back(std::move(R));
        }

        StageTrace st;
        st.level = l;
        std::optional<std::vector<Poly>> sol;
        const Monomial shift =
            scale_monomial(ctx, l - 2 * N, pair.divisor, r >= 2 * M ? r - 2 * M : 0);
        if (any) {
            Vec tau(ctx, static_cast<std::uint32_t>(m));
            for (std::size_t i = 0; i < m; ++i)
                tau.c[i] = window_shift_down(rem[i], l - 2 * N, pair.divisor,
                                             r >= 2 * M ? r - 2 * M : 0);
            sol = membership(tau, theta_gb);
            if (!sol)
                throw MathError("obstruction at level " + std::to_string(l) +
                                ": residual lies outside the Jacobian image window");
            for (std::size_t j = 0; j < n; ++j) {
                Poly theta = (*sol)[j].mono_mul(shift, Rational(1));
                if (subst_trunc) theta = theta.truncate_t(W);
                if (!theta.is_zero()) images[j] -= theta;
                st.theta.push_back(std::move(theta));
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            // the certificate spends f_j in slot i; fold its pert combination
            // into the carried decomposition
            Poly p = rem[i] - fphi[i];
            if (sol)
                for (std::size_t jg = 0; jg < m; ++jg) {
                    const Poly& u = (*sol)[n + jg * m + i];
                    if (!u.is_zero()) p -= u.mono_mul(shift, Rational(1)) * combo[jg];
                }
            if (subst_trunc) p = p.truncate_t(W);
            pending[i] = std::move(p);
        }
        out.trace.push_back(std::move(st));
        snaps[l + 1] = images;
    }

    // tower coherence: truncations at t^l settle once corrections pass 2N+1
    // levels beyond l
    for (std::uint32_t l = pair.k; l + 1 + 2 * N + 1 <= W; ++l) {
        const auto& a = snaps.at(l + 2 * N + 1);
        const auto& b = snaps.at(l + 1 + 2 * N + 1);
        for (std::size_t j = 0; j < n; ++j)
            if (a[j].truncate_t(l) != b[j].truncate_t(l))
                throw Error("internal: truncation tower is incoherent at level " +
                            std::to_string(l));
    }

    out.map.ctx = ctx;
    out.map.L = target_L;
    for (std::size_t j = 0; j < n; ++j) out.map.images.push_back(images[j].truncate_t(target_L));

    // agreement with the identity, termwise, surviving the truncation
    for (std::size_t j = 0; j < n; ++j) {
        const Poly diff = out.map.images[j] - Poly::var(ctx, static_cast<std::uint32_t>(j));
        if (!in_window(diff, out.agreement_order, pair.divisor,
                       pair.divisor ? r - 2 * M : 0))
            throw Error("internal: lifted map leaves the identity window");
    }

    // fresh certificates for the published truncation
    std::vector<Poly> fin = pair.pert;
    fin.push_back(Poly::t_power(ctx, target_L));
    const GB gb_fin = buchberger_ideal(fin, pres.ord, pres.caps);
    for (std::size_t i = 0; i < m; ++i) {
        GenCert gc;
        gc.image = pres.f[i].substitute(out.map.images);
        auto cert = membership(gc.image, gb_fin);
        if (!cert) throw Error("internal: published map fails its own window");
        gc.cofactor = cert->back();
        cert->pop_back();
        gc.coeffs = std::move(*cert);
        out.gen_certs.push_back(std::move(gc));
    }

    // inverse images: Newton-style corrections gain at least k-2N in t-adic
    // valuation per pass.  The residual is the raw composition error cut at
    // the published order; reducing it to a normal form instead can move
    // information to lower t-levels whenever a perturbation tail outranks
    // the original leading term, and then the iteration stalls.
    const std::uint32_t gain = pair.k - 2 * N;
    const std::uint32_t max_pass = target_L / (gain ? gain : 1) + 2;
    for (std::size_t j = 0; j < n; ++j) {
        const Poly zj = Poly::var(ctx, static_cast<std::uint32_t>(j));
        Poly p = zj;
        bool done = false;
        for (std::uint32_t pass = 0; pass < max_pass && !done; ++pass) {
            const Poly res = p.substitute(out.map.images, target_L) - zj;
            if (res.is_zero())
                done = true;
            else
                p -= res;
        }
        if (!done)
            throw MathError("inverse image iteration failed to converge for variable " +
                            ctx->vars[j]);
        PreimageCert pc;
        pc.preimage = p;
        pc.image = p.substitute(out.map.images);
        auto cert = membership(pc.image - zj, gb_fin);
        if (!cert) throw Error("internal: converged preimage fails its window");
        pc.cofactor = cert->back();
        cert->pop_back();
        pc.coeffs = std::move(*cert);
        out.preimages.push_back(std::move(pc));
    }

    return out;
}

LiftCheck verify_lift(const LiftCertificate& c) {
    int idx = 0;
    auto fail = [&](const std::string& what) { return LiftCheck{false, idx, what}; };
    const Presentation& pres = c.pair.orig;
    const CtxPtr& ctx = pres.ctx;
    const std::size_t m = pres.f.size();
    const std::size_t n = ctx ? ctx->vars.size() : 0;
    const std::uint32_t r = c.pair.divisor ? c.pair.divisor->r : 0;

    // structural facts first
    if (!ctx || c.pair.pert.size() != m || c.map.images.size() != n ||
        c.gen_certs.size() != m || c.preimages.size() != n)
        return fail("certificate shape is inconsistent");
    ++idx;
    if (c.pair.k < 4 * c.N + 1) return fail("agreement order is below 4N+1");
    ++idx;
    if (c.pair.divisor && r < 4 * c.M + 1) return fail("divisor window is below 4M+1");
    ++idx;
    if (c.working_L != c.target_L + 2 * c.N + 1) return fail("working order mismatch");
    ++idx;
    if (c.agreement_order != c.pair.k - 2 * c.N) return fail("stated identity window mismatch");
    ++idx;
    if (c.map.L != c.target_L) return fail("published truncation order mismatch");
    ++idx;

    // the pair agrees inside its window, termwise on the stated difference
    const Poly win_target = Poly::t_power(ctx, c.target_L);
    for (std::size_t i = 0; i < m; ++i, ++idx) {
        Poly img = pres.f[i].substitute(c.map.images);
        if (img != c.gen_certs[i].image)
            return fail("gen cert " + std::to_string(i) + ": stored image differs");
        Poly rhs = win_target * c.gen_certs[i].cofactor;
        if (c.gen_certs[i].coeffs.size() != m)
            return fail("gen cert " + std::to_string(i) + ": coefficient count");
        for (std::size_t j = 0; j < m; ++j) rhs += c.gen_certs[i].coeffs[j] * c.pair.pert[j];
        if (rhs != c.gen_certs[i].image)
            return fail("gen cert " + std::to_string(i) + ": window identity fails");
    }

    for (std::size_t j = 0; j < n; ++j, ++idx) {
        const Poly zj = Poly::var(ctx, static_cast<std::uint32_t>(j));
        const PreimageCert& pc = c.preimages[j];
        Poly img = pc.preimage.substitute(c.map.images);
        if (img != pc.image) return fail("preimage " + std::to_string(j) + ": stored image differs");
        Poly rhs = win_target * pc.cofactor;
        if (pc.coeffs.size() != m) return fail("preimage " + std::to_string(j) + ": coefficient count");
        for (std::size_t i = 0; i < m; ++i) rhs += pc.coeffs[i] * c.pair.pert[i];
        if (rhs != pc.image - zj)
            return fail("preimage " + std::to_string(j) + ": window identity fails");
    }

    for (std::size_t j = 0; j < n; ++j, ++idx) {
        const Poly diff = c.map.images[j] - Poly::var(ctx, static_cast<std::uint32_t>(j));
        const std::uint32_t wpow = c.pair.divisor ? (r >= 2 * c.M ? r - 2 * c.M : 0) : 0;
        if (!in_window(diff, c.agreement_order, c.pair.divisor, wpow))
            return fail("image of " + ctx->vars[j] + " leaves the identity window");
    }

    // stage corrections respect their windows
    for (const auto& st : c.trace) {
        for (const auto& th : st.theta) {
            if (th.is_zero()) continue;
            const std::uint32_t wpow = c.pair.divisor ? (r >= 2 * c.M ? r - 2 * c.M : 0) : 0;
            if (st.level < 2 * c.N || !in_window(th, st.level - 2 * c.N, c.pair.divisor, wpow))
                return fail("stage " + std::to_string(st.level) + " correction leaves its window");
        }
    }
    ++idx;

    return LiftCheck{};
}

ArtinSystem emit_artin_system(const LiftCertificate& lift) {
    const Presentation& pres = lift.pair.orig;
    const CtxPtr& ctx = pres.ctx;
    const std::size_t m = pres.f.size();
    const std::size_t n = ctx->vars.size();

    auto taken = [&](const std::string& s) {
        if (s == "t") return true;
        for (const auto& v : ctx->vars)
            if (v == s) return true;
        return false;
    };
    std::vector<std::string> ext_names = ctx->vars;
    std::vector<std::string> a_names, b_names;
    for (std::size_t j = 0; j < n; ++j) {
        std::string nm = "a" + std::to_string(j + 1);
        while (taken(nm)) nm += "_";
        a_names.push_back(nm);
        ext_names.push_back(nm);
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            std::string nm = "b" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
            while (taken(nm)) nm += "_";
            b_names.push_back(nm);
            ext_names.push_back(nm);
        }
    const CtxPtr ext = make_ctx(ext_names);

    std::vector<std::uint32_t> id_map(n), a_map(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        id_map[j] = j;
        a_map[j] = static_cast<std::uint32_t>(n + j);
    }

    ArtinSystem sys;
    sys.ext = ext;
    sys.order = lift.target_L;
    for (std::size_t i = 0; i < m; ++i) {
        Poly eq = pres.f[i].embed(ext, a_map);
        for (std::size_t j = 0; j < m; ++j) {
            // b slots come after the z and a blocks
            const std::uint32_t slot = static_cast<std::uint32_t>(2 * n + i * m + j);
            eq -= Poly::var(ext, slot) * lift.pair.pert[j].embed(ext, id_map);
        }
        sys.equations.push_back(std::move(eq));
    }

    // solution: the lifted coordinate images solve for a, and the window
    // certificates of the lift are exactly the matrix b plus the residual
    for (std::size_t j = 0; j < n; ++j) sys.a_solution.push_back(lift.map.images[j]);
    for (std::size_t i = 0; i < m; ++i) {
        sys.b_solution.push_back(lift.gen_certs[i].coeffs);
        sys.residual_cofactors.push_back(lift.gen_certs[i].cofactor);
    }
    return sys;
}

} // namespace detkit
