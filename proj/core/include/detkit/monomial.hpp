#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "detkit/errors.hpp"

namespace detkit {

// Monomial in the base parameter t and the fibre variables z_1..z_n.
// The z exponent vector length is fixed by the ambient variable context.
struct Monomial {
    std::uint32_t t = 0;
    std::vector<std::uint32_t> z;

    Monomial() = default;
    explicit Monomial(std::size_t n) : z(n, 0) {}

    std::uint32_t zdeg() const {
        return std::accumulate(z.begin(), z.end(), std::uint32_t(0));
    }
    std::uint32_t total_deg() const { return t + zdeg(); }
    bool is_one() const { return t == 0 && zdeg() == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.t == b.t && a.z == b.z;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        r.t += b.t;
        for (std::size_t i = 0; i < r.z.size(); ++i) r.z[i] += b.z[i];
        return r;
    }

    bool divides(const Monomial& m) const {
        if (t > m.t) return false;
        for (std::size_t i = 0; i < z.size(); ++i)
            if (z[i] > m.z[i]) return false;
        return true;
    }

    // this / d; caller guarantees divisibility
    Monomial quotient_by(const Monomial& d) const {
        Monomial r = *this;
        r.t -= d.t;
        for (std::size_t i = 0; i < z.size(); ++i) r.z[i] -= d.z[i];
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        if (b.t > r.t) r.t = b.t;
        for (std::size_t i = 0; i < r.z.size(); ++i)
            if (b.z[i] > r.z[i]) r.z[i] = b.z[i];
        return r;
    }

    friend bool coprime(const Monomial& a, const Monomial& b) {
        if (a.t > 0 && b.t > 0) return false;
        for (std::size_t i = 0; i < a.z.size(); ++i)
            if (a.z[i] > 0 && b.z[i] > 0) return false;
        return true;
    }
};

} // namespace detkit
