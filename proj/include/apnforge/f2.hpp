// f2.hpp -- bit-packed linear algebra over GF(2), width <= 64.
//
// Vectors are packed into a single 64-bit word.  Bases are kept in
// reduced echelon form with *highest*-bit pivots, so the fully reduced
// coset representative is the integer minimum of its coset and two
// subspaces are equal iff their canonical bases are equal.
#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace apn {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

inline int parity64(u64 x) { return std::popcount(x) & 1; }

struct BitVec {
    u64 bits = 0;
    int width = 0;

    BitVec() = default;
    BitVec(u64 b, int w) : bits(b), width(w) {
        if (w < 0 || w > 64) throw std::invalid_argument("BitVec: width out of range");
        if (w < 64) bits &= (u64(1) << w) - 1;
    }
    bool get(int i) const { return (bits >> i) & 1; }
    friend bool operator==(const BitVec&, const BitVec&) = default;
};

struct BitMat {
    int rows = 0;
    int cols = 0;
    std::vector<u64> row_data;  // row_data[i] = packed row i, cols bits

    BitMat() = default;
    BitMat(int r, int c) : rows(r), cols(c), row_data(r, 0) {
        if (c < 0 || c > 64) throw std::invalid_argument("BitMat: cols out of range");
    }
    bool get(int r, int c) const { return (row_data[r] >> c) & 1; }
    void set(int r, int c, bool v) {
        if (v) row_data[r] |= u64(1) << c;
        else   row_data[r] &= ~(u64(1) << c);
    }
    static BitMat identity(int n) {
        BitMat m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }
    BitMat transposed() const {
        BitMat t(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (get(r, c)) t.set(c, r, true);
        return t;
    }
    // y = M x  (x over cols bits, result over rows bits)
    u64 apply(u64 x) const {
        u64 y = 0;
        for (int r = 0; r < rows; ++r)
            y |= u64(parity64(row_data[r] & x)) << r;
        return y;
    }
};

// Linearly independent vectors in reduced echelon form, highest-bit
// pivots, stored in decreasing order of leading bit.
class EchelonBasis {
public:
    EchelonBasis() = default;

    int dim() const { return int(rows_.size()); }
    const std::vector<u64>& rows() const { return rows_; }

    // Canonical (minimal) representative of x + span(rows).
    u64 reduce(u64 x) const {
        for (u64 r : rows_) {
            u64 lead = top_bit(r);
            if (x & lead) x ^= r;
        }
        return x;
    }

    bool contains(u64 x) const { return reduce(x) == 0; }

    // Insert x; returns false if x already lies in the span.
    bool insert(u64 x) {
        x = reduce(x);
        if (x == 0) return false;
        u64 lead = top_bit(x);
        // back-reduce existing rows against the new pivot
        for (u64& r : rows_)
            if (r & lead) r ^= x;
        auto it = rows_.begin();
        while (it != rows_.end() && top_bit(*it) > lead) ++it;
        rows_.insert(it, x);
        return true;
    }

    // Element indexed by the bits of idx (0 <= idx < 2^dim).
    u64 element(u64 idx) const {
        u64 x = 0;
        for (size_t i = 0; i < rows_.size(); ++i)
            if ((idx >> i) & 1) x ^= rows_[i];
        return x;
    }

    friend bool operator==(const EchelonBasis&, const EchelonBasis&) = default;

private:
    static u64 top_bit(u64 x) { return u64(1) << (63 - std::countl_zero(x)); }
    std::vector<u64> rows_;
};

inline EchelonBasis span_of(const std::vector<u64>& vecs) {
    EchelonBasis b;
    for (u64 v : vecs) b.insert(v);
    return b;
}

inline int gf2_rank(const BitMat& m) {
    std::vector<u64> rows = m.row_data;
    int rank = 0;
    for (int c = m.cols - 1; c >= 0; --c) {
        u64 mask = u64(1) << c;
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (rows[r] & mask) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < m.rows; ++r)
            if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

// Basis of { x : M x = 0 }.
inline std::vector<BitVec> kernel_basis(const BitMat& m) {
    // RREF with lowest-column pivots so free variables read off directly.
    std::vector<u64> rows = m.row_data;
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        u64 mask = u64(1) << c;
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (rows[r] & mask) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < m.rows; ++r)
            if (r != rank && (rows[r] & mask)) rows[r] ^= rows[rank];
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<BitVec> basis;
    for (int j = 0; j < m.cols; ++j) {
        if (is_pivot[j]) continue;
        u64 x = u64(1) << j;
        for (int i = 0; i < rank; ++i)
            if ((rows[i] >> j) & 1) x |= u64(1) << pivot_col[i];
        basis.emplace_back(x, m.cols);
    }
    return basis;
}

// Basis of { y : y . v = 0 for all v in basis }, coordinate-wise dot product.
inline std::vector<BitVec> orthogonal_complement(const std::vector<BitVec>& basis,
                                                 int ambient_dim) {
    BitMat m(int(basis.size()), ambient_dim);
    for (size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].width != ambient_dim)
            throw std::invalid_argument("orthogonal_complement: width mismatch");
        m.row_data[i] = basis[i].bits;
    }
    return kernel_basis(m);
}

inline std::vector<u64> orthogonal_complement(const std::vector<u64>& basis,
                                              int ambient_dim) {
    std::vector<BitVec> bv;
    bv.reserve(basis.size());
    for (u64 b : basis) bv.emplace_back(b, ambient_dim);
    std::vector<u64> out;
    for (const BitVec& v : orthogonal_complement(bv, ambient_dim)) out.push_back(v.bits);
    return out;
}

// Enumerate all d-dimensional subspaces of a k-dimensional coordinate
// space (k <= 24 or so).  Each subspace is visited exactly once, via its
// unique increasing basis of minimal coset representatives.  `keep(x)`
// filters candidate elements: a partial span is abandoned as soon as it
// would contain a nonzero element with keep(element) == false.
// `emit(basis)` is called with the generator list; return false from
// emit to stop the whole enumeration.
inline bool for_each_subspace(int k, int d,
                              const std::function<bool(u64)>& keep,
                              const std::function<bool(const std::vector<u64>&)>& emit) {
    std::vector<u64> gens;
    std::vector<u64> span_elems{0};  // all elements of current span
    std::function<bool(u64)> rec = [&](u64 start) -> bool {
        if (int(gens.size()) == d) return emit(gens);
        for (u64 g = start; g < (u64(1) << k); ++g) {
            // g must be the minimum of its coset modulo the current span
            bool minimal = true, ok = true;
            for (u64 s : span_elems) {
                if (s && (g ^ s) < g) { minimal = false; break; }
                if (keep && s != g && !keep(g ^ s)) { ok = false; }
            }
            if (!minimal || !ok) continue;
            if (keep && !keep(g)) continue;
            size_t old_size = span_elems.size();
            gens.push_back(g);
            for (size_t i = 0; i < old_size; ++i) span_elems.push_back(span_elems[i] ^ g);
            bool cont = rec(g + 1);
            gens.pop_back();
            span_elems.resize(old_size);
            if (!cont) return false;
        }
        return true;
    };
    return rec(1);
}

}  // namespace apn
