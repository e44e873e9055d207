#include "detkit/problem.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "detkit/errors.hpp"

namespace detkit {

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
    auto vars = [](const CtxPtr& c) {
        return c ? c->vars : std::vector<std::string>{};
    };
    return vars(a.ctx) == vars(b.ctx) && a.ideal == b.ideal && a.perturbed == b.perturbed &&
           a.k == b.k && a.divisor == b.divisor && a.cap == b.cap && a.order == b.order &&
           a.box == b.box;
}

namespace {

struct RawLine {
    std::string key;
    std::string value;
    int line = 0;
    int value_col = 0; // 1-based column where the value starts
};

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string strip(const std::string& s, int* lead = nullptr) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (lead) *lead = static_cast<int>(b);
    return s.substr(b, e - b);
}

std::uint32_t parse_uint(const RawLine& rl) {
    const std::string& v = rl.value;
    if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        throw ParseError("expected a non-negative integer for '" + rl.key + "'", rl.line,
                         rl.value_col);
    try {
        unsigned long x = std::stoul(v);
        if (x > 0xfffffffful) throw std::out_of_range("");
        return static_cast<std::uint32_t>(x);
    } catch (const std::exception&) {
        throw ParseError("integer out of range for '" + rl.key + "'", rl.line, rl.value_col);
    }
}

std::vector<Poly> parse_poly_list(const RawLine& rl, const CtxPtr& ctx) {
    std::vector<Poly> out;
    std::size_t start = 0;
    const std::string& v = rl.value;
    while (start <= v.size()) {
        std::size_t comma = v.find(',', start);
        std::size_t end = comma == std::string::npos ? v.size() : comma;
        std::string piece = v.substr(start, end - start);
        int lead = 0;
        std::string trimmed = strip(piece, &lead);
        if (trimmed.empty()) {
            if (!(out.empty() && comma == std::string::npos))
                throw ParseError("empty polynomial in '" + rl.key + "'", rl.line,
                                 rl.value_col + static_cast<int>(start));
            break;
        }
        try {
            out.push_back(Poly::parse(trimmed, ctx));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " in '" + rl.key + "'", rl.line,
                             rl.value_col + static_cast<int>(start) + lead + e.col - 1);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace

ProblemSpec parse_problem(const std::string& text) {
    static const char* known[] = {"vars", "ideal",   "perturbed", "k",  "divisor",
                                  "r",    "cap",     "order",     "box"};
    std::map<std::string, RawLine> lines;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        int lead = 0;
        std::string body = strip(raw, &lead);
        if (body.empty()) continue;
        std::size_t colon = body.find(':');
        if (colon == std::string::npos)
            throw ParseError("expected 'key: value'", lineno, lead + 1);
        std::string key = strip(body.substr(0, colon));
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* s) { return key == s; }) == std::end(known))
            throw ParseError("unknown key '" + key + "'", lineno, lead + 1);
        if (lines.count(key))
            throw ParseError("duplicate key '" + key + "'", lineno, lead + 1);
        RawLine rl;
        rl.key = key;
        int vlead = 0;
        rl.value = strip(body.substr(colon + 1), &vlead);
        rl.line = lineno;
        rl.value_col = lead + static_cast<int>(colon) + 2 + vlead;
        lines.emplace(key, std::move(rl));
    }

    ProblemSpec spec;
    std::vector<std::string> vars;
    if (auto it = lines.find("vars"); it != lines.end()) {
        std::istringstream vs(it->second.value);
        std::string name;
        while (vs >> name) {
            if (!std::all_of(name.begin(), name.end(), is_ident_char) ||
                std::isdigit(static_cast<unsigned char>(name[0])))
                throw ParseError("bad variable name '" + name + "'", it->second.line,
                                 it->second.value_col);
            if (name == "t")
                throw ParseError("'t' is the reserved base parameter", it->second.line,
                                 it->second.value_col);
            if (std::find(vars.begin(), vars.end(), name) != vars.end())
                throw ParseError("duplicate variable '" + name + "'", it->second.line,
                                 it->second.value_col);
            vars.push_back(name);
        }
    }
    spec.ctx = make_ctx(vars);

    if (auto it = lines.find("ideal"); it != lines.end())
        spec.ideal = parse_poly_list(it->second, spec.ctx);
    if (auto it = lines.find("perturbed"); it != lines.end())
        spec.perturbed = parse_poly_list(it->second, spec.ctx);
    if (auto it = lines.find("k"); it != lines.end()) spec.k = parse_uint(it->second);
    if (auto it = lines.find("cap"); it != lines.end()) spec.cap = parse_uint(it->second);
    if (auto it = lines.find("order"); it != lines.end()) spec.order = parse_uint(it->second);

    if (auto it = lines.find("box"); it != lines.end()) {
        const RawLine& rl = it->second;
        std::size_t comma = rl.value.find(',');
        if (comma == std::string::npos)
            throw ParseError("box takes 'L,d'", rl.line, rl.value_col);
        RawLine a = rl, b = rl;
        a.value = strip(rl.value.substr(0, comma));
        b.value = strip(rl.value.substr(comma + 1));
        b.value_col = rl.value_col + static_cast<int>(comma) + 1;
        spec.box = {parse_uint(a), parse_uint(b)};
    }

    auto div_it = lines.find("divisor");
    auto r_it = lines.find("r");
    bool has_div = div_it != lines.end(), has_r = r_it != lines.end();
    if (has_div != has_r) {
        const RawLine& rl = has_div ? div_it->second : r_it->second;
        throw ParseError("'divisor' and 'r' must be given together", rl.line, 1);
    }
    if (has_div) {
        const RawLine& rl = div_it->second;
        auto pos = std::find(vars.begin(), vars.end(), rl.value);
        if (pos == vars.end())
            throw ParseError("divisor '" + rl.value + "' is not a declared variable",
                             rl.line, rl.value_col);
        spec.divisor = {static_cast<std::uint32_t>(pos - vars.begin()),
                        parse_uint(r_it->second)};
    }

    if (spec.perturbed && !spec.k) {
        const RawLine& rl = lines.find("perturbed")->second;
        throw ParseError("'perturbed' requires 'k'", rl.line, 1);
    }
    if (spec.perturbed && spec.perturbed->size() != spec.ideal.size()) {
        const RawLine& rl = lines.find("perturbed")->second;
        throw ParseError("'perturbed' must list one polynomial per ideal generator",
                         rl.line, rl.value_col);
    }
    return spec;
}

std::string render_problem(const ProblemSpec& p) {
    std::ostringstream out;
    if (p.ctx && !p.ctx->vars.empty()) {
        out << "vars:";
        for (const auto& v : p.ctx->vars) out << ' ' << v;
        out << '\n';
    }
    auto poly_list = [&](const char* key, const std::vector<Poly>& v) {
        out << key << ':';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : " ") << v[i].str();
        out << '\n';
    };
    if (!p.ideal.empty()) poly_list("ideal", p.ideal);
    if (p.perturbed) poly_list("perturbed", *p.perturbed);
    if (p.k) out << "k: " << *p.k << '\n';
    if (p.divisor) {
        out << "divisor: " << p.ctx->vars[p.divisor->first] << '\n';
        out << "r: " << p.divisor->second << '\n';
    }
    if (p.cap) out << "cap: " << *p.cap << '\n';
    if (p.order) out << "order: " << *p.order << '\n';
    if (p.box) out << "box: " << p.box->first << ',' << p.box->second << '\n';
    return out.str();
}

} // namespace detkit
