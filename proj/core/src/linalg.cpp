#include "detkit/linalg.hpp"

#include <algorithm>

namespace detkit {

void SparseVec::push(std::uint32_t idx, Rational c) {
    if (c.is_zero()) return;
    if (!e.empty() && e.back().first >= idx) throw Error("SparseVec::push out of order");
    e.emplace_back(idx, std::move(c));
}

SparseVec SparseVec::unit(std::uint32_t idx) {
    SparseVec v;
    v.e.emplace_back(idx, Rational(1));
    return v;
}

void SparseVec::scale(const Rational& c) {
    if (c.is_zero()) {
        e.clear();
        return;
    }
    for (auto& p : e) p.second *= c;
}

void SparseVec::add_scaled(const SparseVec& o, const Rational& c) {
    if (c.is_zero() || o.e.empty()) return;
    std::vector<std::pair<std::uint32_t, Rational>> out;
    out.reserve(e.size() + o.e.size());
    std::size_t i = 0, j = 0;
    while (i < e.size() && j < o.e.size()) {
        if (e[i].first < o.e[j].first) {
            out.push_back(std::move(e[i++]));
        } else if (e[i].first > o.e[j].first) {
            out.emplace_back(o.e[j].first, o.e[j].second * c);
            ++j;
        } else {
            Rational s = e[i].second + o.e[j].second * c;
            if (!s.is_zero()) out.emplace_back(e[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    for (; i < e.size(); ++i) out.push_back(std::move(e[i]));
    for (; j < o.e.size(); ++j) out.emplace_back(o.e[j].first, o.e[j].second * c);
    e = std::move(out);
}

void Echelon::reduce(SparseVec& v, SparseVec* expr) const {
    for (;;) {
        if (v.is_zero()) return;
        // eliminate the lowest index that is a pivot
        bool hit = false;
        for (const auto& [idx, c] : v.e) {
            auto it = by_pivot_.find(idx);
            if (it == by_pivot_.end()) continue;
            const Row& row = rows_[it->second];
            const Rational factor = c; // row pivot is 1
            v.add_scaled(row.v, -factor);
            if (expr) expr->add_scaled(row.expr, factor);
            hit = true;
            break;
        }
        if (!hit) return;
    }
}

void Echelon::insert_row(SparseVec v, SparseVec expr) {
    const Rational inv = v.e.front().second.inverse();
    v.scale(inv);
    expr.scale(inv);
    const std::uint32_t pivot = v.e.front().first;
    rows_.push_back(Row{std::move(v), std::move(expr)});
    by_pivot_[pivot] = rows_.size() - 1;
}

std::optional<SparseVec> Echelon::feed(SparseVec v, std::uint32_t tag_index) {
    SparseVec used; // combination of fed vectors removed from v
    reduce(v, &used);
    if (v.is_zero()) {
        // 0 = fed_tag - used  =>  kernel relation
        SparseVec rel = SparseVec::unit(tag_index);
        rel.add_scaled(used, Rational(-1));
        return rel;
    }
    SparseVec expr = SparseVec::unit(tag_index);
    expr.add_scaled(used, Rational(-1)); // v = fed_tag - used
    insert_row(std::move(v), std::move(expr));
    return std::nullopt;
}

bool Echelon::add(SparseVec v) {
    reduce(v, nullptr);
    if (v.is_zero()) return false;
    insert_row(std::move(v), SparseVec{});
    return true;
}

bool Echelon::contains(SparseVec v, SparseVec* witness) const {
    SparseVec used;
    reduce(v, witness ? &used : nullptr);
    if (!v.is_zero()) return false;
    if (witness) *witness = std::move(used);
    return true;
}

std::vector<SparseVec> kernel_basis(const std::vector<SparseVec>& cols) {
    Echelon ech;
    std::vector<SparseVec> kernel;
    for (std::uint32_t j = 0; j < cols.size(); ++j) {
        if (auto rel = ech.feed(cols[j], j)) kernel.push_back(std::move(*rel));
    }
    return kernel;
}

} // namespace detkit
