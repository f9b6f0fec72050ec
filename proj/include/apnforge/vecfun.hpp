// vecfun.hpp -- vectorial (n,m)-functions: component spaces, differential
// uniformity, APN tests, profiles, J2 signatures, bent-subspace search
// and EA transforms.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "boolfun.hpp"
#include "f2.hpp"
#include "gf2e.hpp"
#include "quadform.hpp"

namespace apn {

struct VectorialFunction {
    int n = 0;
    int m = 0;
    std::vector<u32> values;  // 2^n entries in [0, 2^m)

    VectorialFunction() = default;
    VectorialFunction(int n_, int m_) : n(n_), m(m_), values(size_t(1) << n_, 0) {}
    VectorialFunction(int n_, int m_, std::vector<u32> v)
        : n(n_), m(m_), values(std::move(v)) {
        if (values.size() != (size_t(1) << n))
            throw std::invalid_argument("VectorialFunction: length must be 2^n");
    }
    u32 operator()(u32 x) const { return values[x]; }
    friend bool operator==(const VectorialFunction&, const VectorialFunction&) = default;
};

// x -> x^3 over GF(2^n), the canonical Gold function.
inline VectorialFunction gold_function(int n) {
    GF2e field(n);
    VectorialFunction f(n, n);
    for (u32 x = 0; x < (u32(1) << n); ++x) f.values[x] = field.cube(x);
    return f;
}

inline TruthTable component_tt(const VectorialFunction& f, u32 b) {
    TruthTable tt(f.n);
    for (size_t x = 0; x < tt.size(); ++x)
        tt.values[x] = std::uint8_t(parity64(f.values[x] & b));
    return tt;
}

// Shared per-dimension caches.
inline const RankOracle& rank_oracle(int n) {
    static std::array<std::unique_ptr<RankOracle>, 9> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (!cache[n]) cache[n] = std::make_unique<RankOracle>(n);
    return *cache[n];
}

inline const std::vector<QuadForm>& rank2_forms_cached(int n) {
    static std::array<std::vector<QuadForm>, 9> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (cache[n].empty()) cache[n] = rank2_forms(n);
    return cache[n];
}

// Quadratic part of one coordinate, or nullopt if degree > 2.
inline std::optional<u32> quadratic_part(const TruthTable& tt) {
    TruthTable anf = moebius(tt);
    u32 mask = 0;
    for (size_t s = 1; s < anf.size(); ++s) {
        if (!anf.values[s]) continue;
        int pc = std::popcount(u64(s));
        if (pc > 2) return std::nullopt;
        if (pc == 2) {
            int i = std::countr_zero(u64(s));
            int j = 63 - std::countl_zero(u64(s));
            mask |= u32(1) << monomial_bit(i, j);
        }
    }
    return mask;
}

inline bool is_quadratic(const VectorialFunction& f) {
    for (int k = 0; k < f.m; ++k)
        if (!quadratic_part(component_tt(f, u32(1) << k))) return false;
    return true;
}

// Span of the homogeneous quadratic parts of the components.
inline QuadSpace comp_space(const VectorialFunction& f) {
    QuadSpace s(f.n);
    for (int k = 0; k < f.m; ++k) {
        auto q = quadratic_part(component_tt(f, u32(1) << k));
        if (!q) throw std::invalid_argument("comp_space: function is not quadratic");
        s.basis.insert(*q);
    }
    return s;
}

// (n, dim)-function whose coordinates are the basis forms of a space,
// zero affine part.
inline VectorialFunction function_from_space(const QuadSpace& s) {
    int d = s.dim();
    VectorialFunction f(s.n, d);
    for (int k = 0; k < d; ++k) {
        QuadForm q(s.n, u32(s.basis.rows()[k]));
        TruthTable tt = qf_truth_table(q);
        for (size_t x = 0; x < tt.size(); ++x)
            if (tt.values[x]) f.values[x] |= u32(1) << k;
    }
    return f;
}

inline int differential_uniformity(const VectorialFunction& f) {
    std::vector<int> cnt(size_t(1) << f.m);
    int best = 0;
    for (u32 a = 1; a < (u32(1) << f.n); ++a) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (u32 x = 0; x < (u32(1) << f.n); ++x) {
            int c = ++cnt[f.values[x ^ a] ^ f.values[x]];
            if (c > best) best = c;
        }
    }
    return best;
}

// Like differential_uniformity but stops as soon as delta > bound.
inline bool differential_uniformity_at_most(const VectorialFunction& f, int bound) {
    std::vector<int> cnt(size_t(1) << f.m);
    for (u32 a = 1; a < (u32(1) << f.n); ++a) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (u32 x = 0; x < (u32(1) << f.n); ++x)
            if (++cnt[f.values[x ^ a] ^ f.values[x]] > bound) return false;
    }
    return true;
}

// APN via the alpha-moment sum: sum_{b != 0} alpha(F_b) = 2^{n+1} - 2.
inline bool is_apn_alpha(const VectorialFunction& f) {
    if (f.n != f.m) throw std::invalid_argument("is_apn_alpha: requires n = m");
    // component quadratic parts, if F is quadratic
    std::vector<u32> coord_masks(f.m);
    bool quadratic = true;
    for (int k = 0; k < f.m && quadratic; ++k) {
        auto q = quadratic_part(component_tt(f, u32(1) << k));
        if (q) coord_masks[k] = *q;
        else quadratic = false;
    }
    Dyadic sum(0, 0);
    for (u32 b = 1; b < (u32(1) << f.m); ++b) {
        if (quadratic) {
            u32 mask = 0;
            for (int k = 0; k < f.m; ++k)
                if ((b >> k) & 1) mask ^= coord_masks[k];
            int r = qf_rank_mask(f.n, mask);
            sum = dyadic_add(sum, Dyadic(u64(1) << (f.n - r), 0));
        } else {
            sum = dyadic_add(sum, alpha(component_tt(f, b)));
        }
    }
    return sum == (u64(1) << (f.n + 1)) - 2;
}

// APN via rank-2 avoidance of the orthogonal complement (quadratic case).
inline bool is_apn_flat(const QuadSpace& s) {
    if (s.dim() != s.n)
        throw std::invalid_argument("is_apn_flat: component space must have dim n");
    QuadSpace w = qs_orthogonal_complement(s);
    for (const QuadForm& q : rank2_forms_cached(s.n))
        if (w.contains(q.coeffs)) return false;
    return true;
}

struct BSPair {
    int bent = 0;
    u64 k = 0;  // K(V) = sum of alpha over nonzero elements (integer here)

    friend bool operator==(const BSPair&, const BSPair&) = default;
    friend auto operator<=>(const BSPair& a, const BSPair& b) {
        if (auto c = a.bent <=> b.bent; c != 0) return c;
        return a.k <=> b.k;
    }
};

inline BSPair bs_pair(const QuadSpace& v) {
    if (v.n % 2 != 0) throw std::invalid_argument("bs_pair: n must be even");
    const RankOracle& rk = rank_oracle(v.n);
    BSPair bs;
    for (u64 idx = 1; idx < (u64(1) << v.dim()); ++idx) {
        int r = rk(v.element(idx));
        if (r == v.n) ++bs.bent;
        bs.k += u64(1) << (v.n - r);
    }
    return bs;
}

using Profile = std::vector<BSPair>;

// Lexicographically greatest [BS(V_0), ..., BS(V_k)] over flags of V.
// Greedy level-by-level: any subspace extends to a full flag, so the
// lex maximum is attained by keeping, at each depth, exactly the
// subspaces whose BS pair attains the running maximum.
inline Profile profile(const QuadSpace& v, int k) {
    if (k > v.dim()) throw std::invalid_argument("profile: k exceeds dim(V)");
    const RankOracle& rk = rank_oracle(v.n);
    int d = v.dim();
    u32 space = u32(1) << d;
    std::vector<std::uint8_t> rank_of(space);
    for (u32 c = 0; c < space; ++c)
        rank_of[c] = std::uint8_t(rk(v.element(c)));

    struct Node {
        EchelonBasis coords;     // subspace in coordinate indices
        std::vector<u32> elems;  // all its elements, as indices
        BSPair bs;
    };
    Profile prof{BSPair{}};
    std::vector<Node> layer{Node{{}, {0}, {}}};
    for (int depth = 1; depth <= k; ++depth) {
        BSPair best{-1, 0};
        std::vector<Node> next;
        std::map<std::vector<u64>, bool> seen;
        for (const Node& node : layer) {
            for (u32 g = 1; g < space; ++g) {
                if (node.coords.reduce(g) != g) continue;  // canonical coset rep only
                BSPair bs = node.bs;
                for (u32 e : node.elems) {
                    int r = rank_of[g ^ e];
                    if (r == v.n) ++bs.bent;
                    bs.k += u64(1) << (v.n - r);
                }
                if (bs < best) continue;
                if (best < bs) {
                    best = bs;
                    next.clear();
                    seen.clear();
                }
                EchelonBasis nb = node.coords;
                nb.insert(g);
                if (seen.emplace(nb.rows(), true).second) {
                    Node child{std::move(nb), node.elems, bs};
                    child.elems.reserve(node.elems.size() * 2);
                    for (size_t i = 0, sz = node.elems.size(); i < sz; ++i)
                        child.elems.push_back(node.elems[i] ^ g);
                    next.push_back(std::move(child));
                }
            }
        }
        prof.push_back(best);
        layer = std::move(next);
    }
    return prof;
}

struct J2Signature {
    std::map<int, u64> counts;  // rank -> multiplicity
    friend bool operator==(const J2Signature&, const J2Signature&) = default;
    friend bool operator<(const J2Signature& a, const J2Signature& b) {
        return a.counts < b.counts;
    }
};

inline J2Signature j2_signature(const QuadSpace& s) {
    const RankOracle& rk = rank_oracle(s.n);
    std::vector<u32> elems;
    elems.reserve(size_t(1) << s.dim());
    for (u64 idx = 0; idx < (u64(1) << s.dim()); ++idx) elems.push_back(s.element(idx));
    J2Signature sig;
    for (const QuadForm& f : rank2_forms_cached(s.n))
        for (u32 e : elems) ++sig.counts[rk(f.coeffs ^ e)];
    return sig;
}

// Multiset of (full-rank count, K) pairs over all one-dimensional
// extensions of S inside Qf(n).  Linear input changes permute the
// extensions and preserve ranks, so this is an equivalence invariant;
// it separates classes that share a J2 signature.
inline std::map<std::pair<int, u64>, u64> extension_spectrum(const QuadSpace& s) {
    const RankOracle& rk = rank_oracle(s.n);
    std::vector<u32> elems;
    elems.reserve(size_t(1) << s.dim());
    for (u64 idx = 0; idx < (u64(1) << s.dim()); ++idx) elems.push_back(s.element(idx));
    std::map<std::pair<int, u64>, u64> spec;
    for (u32 g = 1; g < (u32(1) << qf_dim(s.n)); ++g) {
        if (s.basis.reduce(g) != g) continue;
        int full = 0;
        u64 k = 0;
        for (u32 e : elems) {
            int r = rk(g ^ e);
            if (r == s.n) ++full;
            k += u64(1) << (s.n - r);
        }
        ++spec[{full, k}];
    }
    return spec;
}

// Equivalence-class label: J2 signature, refined by the extension
// spectrum where the form space is small enough to scan (n <= 6).
struct SpaceLabel {
    J2Signature j2;
    std::map<std::pair<int, u64>, u64> ext;
    friend bool operator==(const SpaceLabel&, const SpaceLabel&) = default;
    friend bool operator<(const SpaceLabel& a, const SpaceLabel& b) {
        if (a.j2.counts != b.j2.counts) return a.j2.counts < b.j2.counts;
        return a.ext < b.ext;
    }
};

inline SpaceLabel space_label(const QuadSpace& s) {
    SpaceLabel label{j2_signature(s), {}};
    if (qf_dim(s.n) <= 21) label.ext = extension_spectrum(s);
    return label;
}

// Exhaustive search for a d-dimensional all-bent subspace of S.
inline std::optional<QuadSpace> find_bent_subspace(const QuadSpace& s, int d) {
    if (s.n % 2 != 0) throw std::invalid_argument("find_bent_subspace: n must be even");
    if (d > s.n / 2)
        throw std::invalid_argument("find_bent_subspace: d exceeds Nyberg bound n/2");
    const RankOracle& rk = rank_oracle(s.n);
    int k = s.dim();
    std::vector<bool> bent(size_t(1) << k);
    for (u64 c = 1; c < (u64(1) << k); ++c) bent[c] = rk(s.element(c)) == s.n;

    std::optional<QuadSpace> found;
    for_each_subspace(
        k, d, [&](u64 x) { return bent[x]; },
        [&](const std::vector<u64>& gens) {
            QuadSpace sub(s.n);
            for (u64 g : gens) sub.basis.insert(s.element(g));
            found = std::move(sub);
            return false;  // stop at first hit
        });
    return found;
}

// Affine map x -> M x + c.
struct AffineMap {
    BitMat mat;
    u32 c = 0;

    AffineMap() = default;
    AffineMap(BitMat m, u32 c_) : mat(std::move(m)), c(c_) {}
    static AffineMap identity(int dim) { return {BitMat::identity(dim), 0}; }
    u32 operator()(u32 x) const { return u32(mat.apply(x)) ^ c; }
    bool invertible() const {
        return mat.rows == mat.cols && gf2_rank(mat) == mat.rows;
    }
};

// F' = A o F o B + C
inline VectorialFunction apply_ea(const VectorialFunction& f, const AffineMap& a,
                                  const AffineMap& b, const AffineMap& c) {
    if (!a.invertible() || a.mat.rows != f.m)
        throw std::invalid_argument("apply_ea: A must be an affine permutation of F2^m");
    if (!b.invertible() || b.mat.rows != f.n)
        throw std::invalid_argument("apply_ea: B must be an affine permutation of F2^n");
    if (c.mat.rows != f.m || c.mat.cols != f.n)
        throw std::invalid_argument("apply_ea: C must be an affine (n,m)-map");
    VectorialFunction out(f.n, f.m);
    for (u32 x = 0; x < (u32(1) << f.n); ++x)
        out.values[x] = a(f.values[b(x)]) ^ c(x);
    return out;
}

template <typename Rng>
AffineMap random_affine_permutation(int dim, Rng& rng) {
    for (;;) {
        BitMat m(dim, dim);
        for (int r = 0; r < dim; ++r)
            m.row_data[r] = rng() & ((u64(1) << dim) - 1);
        if (gf2_rank(m) == dim)
            return {std::move(m), u32(rng() & ((u64(1) << dim) - 1))};
    }
}

template <typename Rng>
AffineMap random_affine_map(int in_dim, int out_dim, Rng& rng) {
    BitMat m(out_dim, in_dim);
    for (int r = 0; r < out_dim; ++r)
        m.row_data[r] = rng() & ((u64(1) << in_dim) - 1);
    return {std::move(m), u32(rng() & ((u64(1) << out_dim) - 1))};
}

}  // namespace apn
