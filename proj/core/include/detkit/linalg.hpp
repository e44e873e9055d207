#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "detkit/poly.hpp"

namespace detkit {

// Sparse exact vector over Q: (index, coefficient) pairs sorted by index,
// coefficients nonzero.
struct SparseVec {
    std::vector<std::pair<std::uint32_t, Rational>> e;

    bool is_zero() const { return e.empty(); }
    void add_scaled(const SparseVec& o, const Rational& c); // this += c*o
    void scale(const Rational& c);
    void push(std::uint32_t idx, Rational c); // build helper, indices ascending
    static SparseVec unit(std::uint32_t idx);
    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.e == b.e; }
};

// Incremental echelon form over Q with exact arithmetic and a transcript:
// every stored row knows its expression in terms of the vectors fed in, so
// membership tests come with witnesses and zero reductions yield kernel
// relations.  Pivot choice is the lowest index, wholly deterministic.
class Echelon {
public:
    // Reduce v in place against the stored rows.  If expr is non-null it
    // accumulates the combination of fed vectors that was subtracted.
    void reduce(SparseVec& v, SparseVec* expr) const;

    // Feed a tagged vector.  Returns the kernel relation (expression of 0 in
    // the fed vectors) when v reduces to zero, nullopt when a new pivot row
    // was inserted.  tag_index is the position of this vector in the fed
    // family.
    std::optional<SparseVec> feed(SparseVec v, std::uint32_t tag_index);

    // Feed without transcript bookkeeping (cheaper, for rank-only uses).
    bool add(SparseVec v); // true when the vector enlarged the span

    // Does v lie in the span?  witness, when requested and membership holds,
    // satisfies v = sum_i witness[i] * fed_i.
    bool contains(SparseVec v, SparseVec* witness) const;

    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        SparseVec v;    // pivot coefficient 1
        SparseVec expr; // v = sum expr[i] * fed_i (when transcripts are on)
    };
    std::vector<Row> rows_;
    std::map<std::uint32_t, std::size_t> by_pivot_;

    void insert_row(SparseVec v, SparseVec expr);
};

// Kernel of the linear map sending unit vector j to cols[j]: feeds the
// columns left to right and collects the relations.
std::vector<SparseVec> kernel_basis(const std::vector<SparseVec>& cols);

} // namespace detkit
