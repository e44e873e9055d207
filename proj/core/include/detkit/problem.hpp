#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "detkit/poly.hpp"

namespace detkit {

// Parsed problem description.  Line-oriented `key: value` format with keys
// vars, ideal, perturbed, k, divisor, r, cap, order, box; `#` starts a
// comment; ideal and perturbed take comma-separated polynomials.
struct ProblemSpec {
    CtxPtr ctx;
    std::vector<Poly> ideal;
    std::optional<std::vector<Poly>> perturbed;
    std::optional<std::uint32_t> k;
    // divisor datum: fibre variable index plus the order r
    std::optional<std::pair<std::uint32_t, std::uint32_t>> divisor;
    std::optional<std::uint32_t> cap;
    std::optional<std::uint32_t> order; // lift target precision
    std::optional<std::pair<std::uint32_t, std::uint32_t>> box; // (L, d)

    friend bool operator==(const ProblemSpec& a, const ProblemSpec& b);
    friend bool operator!=(const ProblemSpec& a, const ProblemSpec& b) { return !(a == b); }
};

// Throws ParseError with 1-based line/column on malformed input.
ProblemSpec parse_problem(const std::string& text);

// Canonical rendering; parse_problem(render_problem(p)) == p.
std::string render_problem(const ProblemSpec& p);

} // namespace detkit
