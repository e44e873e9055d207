#include "detkit/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace detkit {

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
    case OrderKind::block_z_over_t_degrevlex: {
        const std::uint32_t da = a.zdeg(), db = b.zdeg();
        if (da != db) return da < db ? -1 : 1;
        for (std::size_t i = a.z.size(); i-- > 0;) {
            const std::uint32_t sa = a.z[slot(static_cast<std::uint32_t>(i))];
            const std::uint32_t sb = b.z[slot(static_cast<std::uint32_t>(i))];
            if (sa != sb) return sa > sb ? -1 : 1;
        }
        if (a.t != b.t) return a.t < b.t ? -1 : 1;
        return 0;
    }
    case OrderKind::lex: {
        for (std::size_t i = 0; i < a.z.size(); ++i) {
            const std::uint32_t sa = a.z[slot(static_cast<std::uint32_t>(i))];
            const std::uint32_t sb = b.z[slot(static_cast<std::uint32_t>(i))];
            if (sa != sb) return sa < sb ? -1 : 1;
        }
        if (a.t != b.t) return a.t < b.t ? -1 : 1;
        return 0;
    }
    case OrderKind::degrevlex: {
        const std::uint32_t da = a.total_deg(), db = b.total_deg();
        if (da != db) return da < db ? -1 : 1;
        // t sits after every z slot, so it is scanned first in reverse
        if (a.t != b.t) return a.t > b.t ? -1 : 1;
        for (std::size_t i = a.z.size(); i-- > 0;) {
            const std::uint32_t sa = a.z[slot(static_cast<std::uint32_t>(i))];
            const std::uint32_t sb = b.z[slot(static_cast<std::uint32_t>(i))];
            if (sa != sb) return sa > sb ? -1 : 1;
        }
        return 0;
    }
    }
    return 0;
}

int compare_monomials(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
    return ord.compare(a, b);
}

namespace {

const MonomialOrder kCanon{}; // storage order for Poly terms

struct CanonLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return kCanon.compare(a, b) < 0;
    }
};

bool valid_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

} // namespace

CtxPtr make_ctx(std::vector<std::string> vars) {
    for (const auto& v : vars) {
        if (!valid_ident(v)) throw Error("bad variable name '" + v + "'");
        if (v == "t") throw Error("variable name 't' is reserved for the base parameter");
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw Error("duplicate variable name '" + vars[i] + "'");
    auto c = std::make_shared<VarCtx>();
    c->vars = std::move(vars);
    return c;
}

bool same_ctx(const CtxPtr& a, const CtxPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->vars == b->vars;
}

static void require_ctx(const CtxPtr& a, const CtxPtr& b) {
    if (!same_ctx(a, b)) throw ContextError("mismatched variable contexts");
}

Poly Poly::constant(CtxPtr ctx, const Rational& c) {
    Poly p(std::move(ctx));
    if (!c.is_zero()) p.t_.push_back(Term{Monomial(p.nvars()), c});
    return p;
}

Poly Poly::var(CtxPtr ctx, std::uint32_t idx, std::uint32_t e) {
    Poly p(std::move(ctx));
    if (idx >= p.nvars()) throw Error("variable index out of range");
    Monomial m(p.nvars());
    m.z[idx] = e;
    if (e == 0) m = Monomial(p.nvars());
    p.t_.push_back(Term{m, Rational(1)});
    return p;
}

Poly Poly::t_power(CtxPtr ctx, std::uint32_t e) {
    Poly p(std::move(ctx));
    Monomial m(p.nvars());
    m.t = e;
    p.t_.push_back(Term{m, Rational(1)});
    return p;
}

Poly Poly::term(CtxPtr ctx, Monomial m, Rational c) {
    Poly p(std::move(ctx));
    if (m.z.size() != p.nvars()) throw Error("monomial arity mismatch");
    if (!c.is_zero()) p.t_.push_back(Term{std::move(m), std::move(c)});
    return p;
}

const Term& Poly::lead() const {
    if (t_.empty()) throw Error("leading term of zero polynomial");
    return t_.front();
}

Poly Poly::from_terms(CtxPtr ctx, std::vector<Term> terms) {
    std::map<Monomial, Rational, CanonLess> acc;
    for (auto& t : terms) {
        auto [it, fresh] = acc.try_emplace(std::move(t.m), t.c);
        if (!fresh) it->second += t.c;
    }
    Poly p(std::move(ctx));
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) p.t_.push_back(Term{it->first, it->second});
    return p;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    require_ctx(ctx_, o.ctx_);
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    std::size_t i = 0, j = 0;
    while (i < t_.size() && j < o.t_.size()) {
        const int c = kCanon.compare(t_[i].m, o.t_[j].m);
        if (c > 0) {
            out.push_back(t_[i++]);
        } else if (c < 0) {
            out.push_back(o.t_[j++]);
        } else {
            Rational s = t_[i].c + o.t_[j].c;
            if (!s.is_zero()) out.push_back(Term{t_[i].m, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < t_.size(); ++i) out.push_back(t_[i]);
    for (; j < o.t_.size(); ++j) out.push_back(o.t_[j]);
    t_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    return *this += -o;
}

Poly Poly::scaled(const Rational& c) const {
    if (c.is_zero()) return Poly::zero(ctx_);
    Poly r = *this;
    for (auto& t : r.t_) t.c *= c;
    return r;
}

Poly Poly::mono_mul(const Monomial& m, const Rational& c) const {
    if (c.is_zero()) return Poly::zero(ctx_);
    Poly r = *this;
    for (auto& t : r.t_) {
        t.m = t.m * m;
        t.c *= c;
    }
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_ctx(a.ctx_, b.ctx_);
    std::map<Monomial, Rational, CanonLess> acc;
    for (const auto& ta : a.t_)
        for (const auto& tb : b.t_) {
            Monomial m = ta.m * tb.m;
            Rational c = ta.c * tb.c;
            auto [it, fresh] = acc.try_emplace(std::move(m), c);
            if (!fresh) it->second += c;
        }
    Poly p(a.ctx_);
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) p.t_.push_back(Term{it->first, it->second});
    return p;
}

Poly Poly::mul_trunc(const Poly& o, std::uint32_t L) const {
    require_ctx(ctx_, o.ctx_);
    std::map<Monomial, Rational, CanonLess> acc;
    for (const auto& ta : t_)
        for (const auto& tb : o.t_) {
            if (ta.m.t + tb.m.t >= L) continue;
            Monomial m = ta.m * tb.m;
            Rational c = ta.c * tb.c;
            auto [it, fresh] = acc.try_emplace(std::move(m), c);
            if (!fresh) it->second += c;
        }
    Poly p(ctx_);
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (!it->second.is_zero()) p.t_.push_back(Term{it->first, it->second});
    return p;
}

bool operator==(const Poly& a, const Poly& b) {
    if (!same_ctx(a.ctx_, b.ctx_)) return false;
    if (a.t_.size() != b.t_.size()) return false;
    for (std::size_t i = 0; i < a.t_.size(); ++i)
        if (a.t_[i].m != b.t_[i].m || a.t_[i].c != b.t_[i].c) return false;
    return true;
}

Poly Poly::truncate_t(std::uint32_t L) const {
    Poly r(ctx_);
    for (const auto& t : t_)
        if (t.m.t < L) r.t_.push_back(t);
    return r;
}

bool Poly::in_t_power(std::uint32_t e) const {
    for (const auto& t : t_)
        if (t.m.t < e) return false;
    return true;
}

Poly Poly::t_shift_down(std::uint32_t e) const {
    Poly r(ctx_);
    r.t_.reserve(t_.size());
    for (const auto& t : t_) {
        if (t.m.t < e) throw Error("t_shift_down: term below t^" + std::to_string(e));
        Term u = t;
        u.m.t -= e;
        r.t_.push_back(std::move(u));
    }
    return r;
}

std::optional<std::uint32_t> Poly::t_order() const {
    std::optional<std::uint32_t> r;
    for (const auto& t : t_)
        if (!r || t.m.t < *r) r = t.m.t;
    return r;
}

bool Poly::in_var_power(std::uint32_t idx, std::uint32_t e) const {
    for (const auto& t : t_)
        if (t.m.z[idx] < e) return false;
    return true;
}

std::uint32_t Poly::max_tdeg() const {
    std::uint32_t r = 0;
    for (const auto& t : t_) r = std::max(r, t.m.t);
    return r;
}

std::uint32_t Poly::max_zdeg() const {
    std::uint32_t r = 0;
    for (const auto& t : t_) r = std::max(r, t.m.zdeg());
    return r;
}

std::uint32_t Poly::total_deg() const {
    std::uint32_t r = 0;
    for (const auto& t : t_) r = std::max(r, t.m.total_deg());
    return r;
}

Poly Poly::derivative(std::uint32_t idx) const {
    Poly r(ctx_);
    for (const auto& t : t_) {
        if (t.m.z[idx] == 0) continue;
        Term u = t;
        u.c *= Rational(static_cast<long>(t.m.z[idx]));
        u.m.z[idx] -= 1;
        r.t_.push_back(std::move(u));
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& images, std::uint32_t L) const {
    if (images.size() != nvars()) throw Error("substitute: wrong number of images");
    for (const auto& im : images) require_ctx(ctx_, im.ctx());

    auto mul = [&](const Poly& a, const Poly& b) {
        return L == 0 ? a * b : a.mul_trunc(b, L);
    };

    // power caches, one per variable, filled on demand
    std::vector<std::vector<Poly>> pw(images.size());
    auto power = [&](std::uint32_t j, std::uint32_t e) -> const Poly& {
        auto& cache = pw[j];
        if (cache.empty()) cache.push_back(Poly::one(ctx_));
        while (cache.size() <= e) cache.push_back(mul(cache.back(), images[j]));
        return cache[e];
    };

    Poly out = Poly::zero(ctx_);
    for (const auto& t : t_) {
        if (L != 0 && t.m.t >= L) continue;
        Monomial tm(nvars());
        tm.t = t.m.t;
        Poly cur = Poly::term(ctx_, std::move(tm), t.c);
        for (std::uint32_t j = 0; j < nvars(); ++j)
            if (t.m.z[j] > 0) cur = mul(cur, power(j, t.m.z[j]));
        out += cur;
    }
    return out;
}

Poly Poly::embed(const CtxPtr& wider, const std::vector<std::uint32_t>& map) const {
    if (map.size() != nvars()) throw Error("embed: bad variable map");
    std::vector<Term> terms;
    terms.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial m(wider->vars.size());
        m.t = t.m.t;
        for (std::size_t i = 0; i < map.size(); ++i) m.z[map[i]] = t.m.z[i];
        terms.push_back(Term{std::move(m), t.c});
    }
    return Poly::from_terms(wider, std::move(terms));
}

std::uint32_t max_tdeg(const std::vector<Poly>& v) {
    std::uint32_t r = 0;
    for (const auto& p : v) r = std::max(r, p.max_tdeg());
    return r;
}

std::uint32_t max_zdeg(const std::vector<Poly>& v) {
    std::uint32_t r = 0;
    for (const auto& p : v) r = std::max(r, p.max_zdeg());
    return r;
}

// ---------------------------------------------------------------- rendering

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : t_) {
        const bool neg = t.c.sign() < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        const Rational mag = t.c.abs();
        std::vector<std::string> factors;
        if (!mag.is_one() || t.m.is_one()) factors.push_back(mag.str());
        if (t.m.t > 0)
            factors.push_back(t.m.t == 1 ? "t" : "t^" + std::to_string(t.m.t));
        for (std::size_t j = 0; j < t.m.z.size(); ++j) {
            if (t.m.z[j] == 0) continue;
            std::string f = ctx_->vars[j];
            if (t.m.z[j] > 1) f += "^" + std::to_string(t.m.z[j]);
            factors.push_back(std::move(f));
        }
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i) out += "*";
            out += factors[i];
        }
    }
    return out;
}

// ------------------------------------------------------------------ parsing

namespace {

struct PolyParser {
    const std::string& s;
    const CtxPtr& ctx;
    std::size_t pos = 0;

    PolyParser(const std::string& text, const CtxPtr& c) : s(text), ctx(c) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, 0, static_cast<int>(pos) + 1);
    }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    std::string integer_digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return s.substr(start, pos - start);
    }

    std::uint32_t small_integer() {
        const std::string d = integer_digits();
        if (d.size() > 9) fail("exponent too large");
        return static_cast<std::uint32_t>(std::stoul(d));
    }

    Poly factor() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        const char c = s[pos];
        if (c == '(') {
            ++pos;
            Poly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = integer_digits();
            if (eat('/')) num += "/" + integer_digits();
            return Poly::constant(ctx, Rational::parse(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            const std::string name = s.substr(start, pos - start);
            std::uint32_t e = 1;
            if (eat('^')) e = small_integer();
            if (name == "t") return Poly::t_power(ctx, e);
            for (std::uint32_t j = 0; j < ctx->vars.size(); ++j)
                if (ctx->vars[j] == name) return Poly::var(ctx, j, e);
            pos = start;
            fail("undeclared variable '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Poly term() {
        Poly p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    Poly expr() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        Poly p = term();
        if (neg) p = -p;
        for (;;) {
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+')) {
                p += term();
            } else if (eat('-')) {
                p -= term();
            } else {
                break;
            }
        }
        return p;
    }
};

} // namespace

Poly Poly::parse(const std::string& text, const CtxPtr& ctx) {
    PolyParser pp(text, ctx);
    Poly p = pp.expr();
    pp.skip_ws();
    if (pp.pos != text.size()) pp.fail("trailing input");
    return p;
}

} // namespace detkit
