#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "detkit/monomial.hpp"
#include "detkit/order.hpp"
#include "detkit/rational.hpp"

namespace detkit {

// Fibre variable names.  t is implicit and reserved; it never appears here.
struct VarCtx {
    std::vector<std::string> vars;
};

using CtxPtr = std::shared_ptr<const VarCtx>;

CtxPtr make_ctx(std::vector<std::string> vars);
bool same_ctx(const CtxPtr& a, const CtxPtr& b);

struct Term {
    Monomial m;
    Rational c;
};

// Sparse polynomial over Q[t][z_1..z_n].  Terms are kept sorted in strictly
// descending canonical order (the default block order) with nonzero
// coefficients, so equality is structural and rendering is canonical.
class Poly {
public:
    Poly() = default;
    explicit Poly(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static Poly zero(CtxPtr ctx) { return Poly(std::move(ctx)); }
    static Poly constant(CtxPtr ctx, const Rational& c);
    static Poly one(CtxPtr ctx) { return constant(std::move(ctx), Rational(1)); }
    static Poly var(CtxPtr ctx, std::uint32_t idx, std::uint32_t e = 1);
    static Poly t_power(CtxPtr ctx, std::uint32_t e);
    static Poly term(CtxPtr ctx, Monomial m, Rational c);

    const CtxPtr& ctx() const { return ctx_; }
    std::size_t nvars() const { return ctx_ ? ctx_->vars.size() : 0; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t nterms() const { return t_.size(); }

    // leading data under the canonical order
    const Term& lead() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);

    Poly scaled(const Rational& c) const;                   // c * this
    Poly mono_mul(const Monomial& m, const Rational& c) const; // c*m * this
    Poly mul_trunc(const Poly& o, std::uint32_t L) const;   // product mod t^L

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // drop all terms with t-exponent >= L
    Poly truncate_t(std::uint32_t L) const;
    // true iff every term has t-exponent >= e (i.e. membership in (t^e))
    bool in_t_power(std::uint32_t e) const;
    // divide by t^e; caller guarantees in_t_power(e)
    Poly t_shift_down(std::uint32_t e) const;
    // minimum t-exponent over the terms; nullopt for zero
    std::optional<std::uint32_t> t_order() const;
    // true iff every term has exponent >= e at fibre variable idx
    bool in_var_power(std::uint32_t idx, std::uint32_t e) const;

    std::uint32_t max_tdeg() const;
    std::uint32_t max_zdeg() const;
    std::uint32_t total_deg() const;

    Poly derivative(std::uint32_t idx) const; // d/dz_idx

    // substitute z_j -> images[j], keep t; all products truncated mod t^L
    // (L = no truncation when 0)
    Poly substitute(const std::vector<Poly>& images, std::uint32_t L = 0) const;

    // reinterpret over a wider context; old variable i maps to slot map[i]
    Poly embed(const CtxPtr& wider, const std::vector<std::uint32_t>& map) const;

    std::string str() const;

    static Poly parse(const std::string& text, const CtxPtr& ctx);

    // assemble from arbitrary term list (sorts, merges, drops zeros)
    static Poly from_terms(CtxPtr ctx, std::vector<Term> terms);

private:
    CtxPtr ctx_;
    std::vector<Term> t_;
};

std::uint32_t max_tdeg(const std::vector<Poly>& v);
std::uint32_t max_zdeg(const std::vector<Poly>& v);

} // namespace detkit
