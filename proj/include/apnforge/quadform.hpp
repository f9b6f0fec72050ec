// quadform.hpp -- homogeneous quadratic forms over GF(2) as coefficient
// bit-masks, rank, bentness, rank-2 form enumeration, and subspaces of
// the quadratic-form space Qf(n).
//
// Monomial x_i x_j with 0 <= i < j <= n-1 sits at bit j(j-1)/2 + i
// (colexicographic triangular numbering; independent of n).
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "boolfun.hpp"
#include "f2.hpp"

namespace apn {

inline int qf_dim(int n) { return n * (n - 1) / 2; }

inline int monomial_bit(int i, int j) {
    // requires i < j
    return j * (j - 1) / 2 + i;
}

struct QuadForm {
    int n = 0;
    u32 coeffs = 0;  // qf_dim(n) bits in colex order

    QuadForm() = default;
    QuadForm(int n_, u32 c_) : n(n_), coeffs(c_) {
        if (n_ < 0 || n_ > 8) throw std::invalid_argument("QuadForm: n out of range");
    }
    bool has(int i, int j) const { return (coeffs >> monomial_bit(i, j)) & 1; }
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

// Symmetric matrix B = U + U^T (zero diagonal), rows packed.
inline BitMat qf_bilinear_matrix(const QuadForm& q) {
    BitMat b(q.n, q.n);
    for (int j = 1; j < q.n; ++j)
        for (int i = 0; i < j; ++i)
            if (q.has(i, j)) {
                b.row_data[i] |= u64(1) << j;
                b.row_data[j] |= u64(1) << i;
            }
    return b;
}

inline int qf_rank(const QuadForm& q) { return gf2_rank(qf_bilinear_matrix(q)); }

// Rank straight from the mask; the hot path for search loops.
inline int qf_rank_mask(int n, u32 mask) {
    u64 rows[8] = {};
    int bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if ((mask >> bit) & 1) {
                rows[i] |= u64(1) << j;
                rows[j] |= u64(1) << i;
            }
    int rank = 0;
    for (int c = 0; c < n; ++c) {
        u64 m = u64(1) << c;
        int pivot = -1;
        for (int r = rank; r < n; ++r)
            if (rows[r] & m) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < n; ++r)
            if (r != rank && (rows[r] & m)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

inline bool is_bent(const QuadForm& q) {
    if (q.n % 2 != 0) throw std::invalid_argument("is_bent: n must be even");
    return qf_rank(q) == q.n;
}

// q(x) for a single point.
inline int qf_eval(const QuadForm& q, u32 x) {
    int acc = 0;
    u32 c = q.coeffs;
    while (c) {
        int bit = std::countr_zero(c);
        c &= c - 1;
        // invert colex numbering: find j with j(j-1)/2 <= bit < j(j+1)/2
        int j = 1;
        while (j * (j + 1) / 2 <= bit) ++j;
        int i = bit - j * (j - 1) / 2;
        acc ^= int((x >> i) & (x >> j) & 1);
    }
    return acc;
}

inline TruthTable qf_truth_table(const QuadForm& q) {
    TruthTable tt(q.n);
    // fill via ANF: set monomial coefficients, then Moebius back
    for (int j = 1; j < q.n; ++j)
        for (int i = 0; i < j; ++i)
            if (q.has(i, j)) tt.values[(u32(1) << i) | (u32(1) << j)] = 1;
    return moebius(tt);
}

// All quadratic forms of rank 2: the forms (a.x)(b.x) for 2-dimensional
// subspaces span{a,b} of the dual; |Q2(n)| = (2^n - 1)(2^{n-1} - 1) / 3.
inline std::vector<QuadForm> rank2_forms(int n) {
    if (n < 2) throw std::invalid_argument("rank2_forms: n >= 2 required");
    std::set<u32> masks;
    for (u32 a = 1; a < (u32(1) << n); ++a)
        for (u32 b = a + 1; b < (u32(1) << n); ++b) {
            if (b == a) continue;
            u32 mask = 0;
            for (int j = 1; j < n; ++j)
                for (int i = 0; i < j; ++i) {
                    int c = (((a >> i) & (b >> j)) ^ ((a >> j) & (b >> i))) & 1;
                    if (c) mask |= u32(1) << monomial_bit(i, j);
                }
            if (mask) masks.insert(mask);
        }
    std::vector<QuadForm> out;
    out.reserve(masks.size());
    for (u32 m : masks) out.emplace_back(n, m);
    return out;
}

// Precomputed rank lookup over all of Qf(n); practical for n <= 6
// (2^15 entries).  For larger n fall back to qf_rank_mask.
class RankOracle {
public:
    explicit RankOracle(int n) : n_(n) {
        if (qf_dim(n) <= 16) {
            table_.resize(size_t(1) << qf_dim(n));
            for (size_t m = 0; m < table_.size(); ++m)
                table_[m] = std::uint8_t(qf_rank_mask(n, u32(m)));
        }
    }
    int operator()(u32 mask) const {
        if (!table_.empty()) return table_[mask];
        return qf_rank_mask(n_, mask);
    }
    int n() const { return n_; }

private:
    int n_;
    std::vector<std::uint8_t> table_;
};

// Linear subspace of Qf(n), canonical reduced-echelon basis.
struct QuadSpace {
    int n = 0;
    EchelonBasis basis;  // masks over qf_dim(n) bits

    QuadSpace() = default;
    explicit QuadSpace(int n_) : n(n_) {}
    QuadSpace(int n_, const std::vector<u32>& forms) : n(n_) {
        for (u32 f : forms) basis.insert(f);
    }
    int dim() const { return basis.dim(); }
    bool contains(u32 mask) const { return basis.contains(mask); }
    u32 element(u64 idx) const { return u32(basis.element(idx)); }
    friend bool operator==(const QuadSpace&, const QuadSpace&) = default;
    friend bool operator<(const QuadSpace& a, const QuadSpace& b) {
        return a.basis.rows() < b.basis.rows();
    }
};

inline QuadSpace qs_orthogonal_complement(const QuadSpace& s) {
    std::vector<u64> rows(s.basis.rows().begin(), s.basis.rows().end());
    QuadSpace w(s.n);
    for (u64 v : orthogonal_complement(rows, qf_dim(s.n))) w.basis.insert(v);
    return w;
}

}  // namespace apn
