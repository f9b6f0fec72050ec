// search.hpp -- the two construction engines for quadratic APN functions:
//  * bent-space coordinate extension (profile-targeted coset extension,
//    J2 dedup, differential-uniformity pruning, Fourier-coefficient
//    finisher for the last two coordinates), and
//  * input-dimension extension (lift (n,m) -> (n+1,m) through linear
//    maps L admissible for the derivative condition, random incremental
//    construction plus exhaustive enumeration).
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "orthoderiv.hpp"
#include "quadform.hpp"
#include "vecfun.hpp"

namespace apn {

struct ExtensionTarget {
    int bent_count = 0;          // required b of the extended space
    std::optional<u64> k_value;  // required K of the extended space
};

struct SearchBudget {
    u64 seed = 0;
    int attempts = 256;
    std::optional<u64> max_results;
    std::optional<std::chrono::milliseconds> time_limit;
};

namespace detail {

inline u64 splitmix64(u64 x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// counter-based stream derivation: one global seed, per-attempt streams
inline std::mt19937_64 stream_rng(u64 seed, u64 counter) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ counter));
}

struct Deadline {
    std::optional<std::chrono::steady_clock::time_point> end;
    explicit Deadline(const SearchBudget& b) {
        if (b.time_limit) end = std::chrono::steady_clock::now() + *b.time_limit;
    }
    bool expired() const {
        return end && std::chrono::steady_clock::now() >= *end;
    }
};

template <typename T, typename Fn>
void parallel_for_each(const std::vector<T>& items, int workers, Fn fn) {
    if (workers <= 1 || items.size() <= 1) {
        for (const T& it : items) fn(it);
        return;
    }
    std::atomic<size_t> next{0};
    auto body = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) return;
            fn(items[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
}

}  // namespace detail

// All (dim+1)-dimensional superspaces of V inside Qf(n), one coset
// representative per extension (the lexicographically least element of
// g+V under the monomial bit-order).  When a target is given, only
// extensions whose BS pair equals the target are kept.  Candidates whose
// associated (n, dim+1)-function has differential uniformity above
// 2^{n-dim(W)+1} have no APN extension and are discarded.
inline std::vector<QuadSpace> coordinate_extensions(
    const QuadSpace& v, const std::optional<ExtensionTarget>& target = std::nullopt,
    bool prune_diff = true, const detail::Deadline* deadline = nullptr) {
    int n = v.n, d = v.dim();
    if (d >= qf_dim(n))
        throw std::invalid_argument("coordinate_extensions: space already full");
    const RankOracle& rk = rank_oracle(n);

    int need_bent = -1;
    std::optional<u64> need_k;
    if (target) {
        BSPair base = bs_pair(v);
        need_bent = target->bent_count - base.bent;
        if (target->k_value) {
            if (*target->k_value < base.k) return {};
            need_k = *target->k_value - base.k;
        }
        if (need_bent < 0) return {};
    }

    std::vector<u32> elems;
    elems.reserve(size_t(1) << d);
    for (u64 idx = 0; idx < (u64(1) << d); ++idx) elems.push_back(v.element(idx));

    int diff_bound = 1 << (n - d);  // 2^{n-(d+1)+1}
    std::vector<QuadSpace> out;
    for (u32 g = 1; g < (u32(1) << qf_dim(n)); ++g) {
        if (deadline && (g & 0xffff) == 0 && deadline->expired()) break;
        if (v.basis.reduce(g) != g) continue;  // in span, or not the least coset rep
        int bc = 0;
        u64 kc = 0;
        for (u32 e : elems) {
            int r = rk(g ^ e);
            if (r == n) ++bc;
            kc += u64(1) << (n - r);
        }
        if (target && (bc != need_bent || (need_k && kc != *need_k))) continue;
        QuadSpace w = v;
        w.basis.insert(g);
        if (prune_diff &&
            !differential_uniformity_at_most(function_from_space(w), diff_bound))
            continue;
        out.push_back(std::move(w));
    }
    return out;
}

// Group spaces by class label (J2 signature refined by the extension
// spectrum), keeping up to `reps_per_label` distinct representatives
// per label.
inline std::vector<QuadSpace> j2_dedup(const std::vector<QuadSpace>& spaces,
                                       int reps_per_label = 1, int workers = 1) {
    std::map<SpaceLabel, std::vector<QuadSpace>> groups;
    std::mutex mtx;
    detail::parallel_for_each(spaces, workers, [&](const QuadSpace& s) {
        SpaceLabel sig = space_label(s);
        std::lock_guard<std::mutex> lock(mtx);
        auto& bucket = groups[sig];
        if (int(bucket.size()) < reps_per_label) {
            for (const QuadSpace& seen : bucket)
                if (seen == s) return;
            bucket.push_back(s);
        }
    });
    std::vector<QuadSpace> out;
    for (auto& [sig, bucket] : groups)
        for (QuadSpace& s : bucket) out.push_back(std::move(s));
    return out;
}

// Representatives of all quadratic (n,m)-bent spaces, built by
// successive one-dimensional extension from the rank-n forms, with
// J2-label deduplication between levels.  Intermediate levels keep a few
// representatives per label as a guard against label collisions.
inline std::vector<QuadSpace> enumerate_bent_spaces(int n, int m,
                                                    int reps_per_label = 4,
                                                    int workers = 1) {
    if (n % 2 != 0) throw std::invalid_argument("enumerate_bent_spaces: n must be even");
    if (m > n / 2)
        throw std::invalid_argument("enumerate_bent_spaces: m exceeds Nyberg bound n/2");
    const RankOracle& rk = rank_oracle(n);

    std::vector<QuadSpace> level;
    for (u32 f = 1; f < (u32(1) << qf_dim(n)); ++f)
        if (rk(f) == n) {
            QuadSpace s(n);
            s.basis.insert(f);
            // singleton spaces: only keep the canonical (own) representative
            level.push_back(std::move(s));
        }
    level = j2_dedup(level, reps_per_label, workers);

    for (int k = 2; k <= m; ++k) {
        std::vector<QuadSpace> next;
        std::mutex mtx;
        detail::parallel_for_each(level, workers, [&](const QuadSpace& v) {
            std::vector<u32> elems;
            for (u64 idx = 1; idx < (u64(1) << v.dim()); ++idx)
                elems.push_back(v.element(idx));
            std::vector<QuadSpace> local;
            for (u32 g = 1; g < (u32(1) << qf_dim(n)); ++g) {
                if (v.basis.reduce(g) != g) continue;
                if (rk(g) != n) continue;
                bool ok = true;
                for (u32 e : elems)
                    if (rk(g ^ e) != n) { ok = false; break; }
                if (!ok) continue;
                QuadSpace w = v;
                w.basis.insert(g);
                local.push_back(std::move(w));
            }
            std::lock_guard<std::mutex> lock(mtx);
            for (QuadSpace& w : local) next.push_back(std::move(w));
        });
        level = j2_dedup(next, k == m ? 1 : reps_per_label, workers);
    }
    return level;
}

struct FourierTable {
    std::vector<u64> w_basis;        // canonical basis of W = S^perp
    std::vector<std::int32_t> tfr;   // Fourier transform of the Q2 indicator
};

namespace detail {

// Coordinates of an element of W relative to the reduced echelon basis:
// read off the pivot bits.
struct WCoords {
    std::vector<int> pivot;  // pivot bit position per basis row

    explicit WCoords(const EchelonBasis& basis) {
        for (u64 r : basis.rows()) pivot.push_back(63 - std::countl_zero(r));
    }
    u32 coords(u64 w) const {
        u32 c = 0;
        for (size_t i = 0; i < pivot.size(); ++i)
            c |= u32((w >> pivot[i]) & 1) << i;
        return c;
    }
};

}  // namespace detail

// Fourier table of the rank-2 indicator on W = S^perp: the indicator of
// Q2(n) restricted to W, transformed over the coordinate space of W.
inline FourierTable fourier_table(const QuadSpace& s) {
    QuadSpace w = qs_orthogonal_complement(s);
    int dw = w.dim();
    FourierTable ft;
    ft.w_basis.assign(w.basis.rows().begin(), w.basis.rows().end());
    ft.tfr.assign(size_t(1) << dw, 0);
    detail::WCoords wc(w.basis);
    for (const QuadForm& q : rank2_forms_cached(s.n))
        if (w.contains(q.coeffs)) ft.tfr[wc.coords(q.coeffs)] = 1;
    fwht(ft.tfr);
    return ft;
}

// All APN extensions of an (n, n-2)-quadratic component space S:
// codimension-2 subspaces T of W = S^perp avoiding the rank-2 forms,
// found through pairs {u, v} of dual elements with
// tfr(0)+tfr(u)+tfr(v)+tfr(u+v) = 0, returned as the extended
// n-dimensional component spaces T^perp.
//
// The pair sum always equals 4 |Q2 ^ T| (Poisson); this is asserted for
// every accepted pair.
inline std::vector<QuadSpace> fourier_apn_extensions(const QuadSpace& s) {
    int n = s.n;
    if (s.dim() != n - 2)
        throw std::invalid_argument("fourier_apn_extensions: dim(S) must be n-2");
    FourierTable ft = fourier_table(s);
    int dw = int(ft.w_basis.size());
    u32 space = u32(1) << dw;
    const std::vector<std::int32_t>& tfr = ft.tfr;
    std::int32_t t0 = tfr[0];

    // u ranges over possible minimum elements of the dual pair triple:
    // 3 tfr(u) <= -tfr(0).  The middle element v then satisfies
    // 2 tfr(v) <= -tfr(0) - tfr(u); bucket elements by value to walk
    // only the admissible range.
    std::vector<u32> cands;
    std::int32_t max_bucket_val = std::numeric_limits<std::int32_t>::min();
    for (u32 u = 1; u < space; ++u)
        if (3 * tfr[u] <= -t0) {
            cands.push_back(u);
            max_bucket_val = std::max(max_bucket_val, (-t0 - tfr[u]) / 2);
        }
    std::map<std::int32_t, std::vector<u32>> buckets;
    if (!cands.empty())
        for (u32 x = 1; x < space; ++x)
            if (tfr[x] <= max_bucket_val) buckets[tfr[x]].push_back(x);

    std::set<std::pair<u64, u64>> spans;
    for (u32 u : cands) {
        std::int32_t su = -t0 - tfr[u];  // tfr(v) + tfr(u+v)
        for (auto& [val, xs] : buckets) {
            if (val < tfr[u]) continue;
            if (2 * val > su) break;
            for (u32 x : xs) {
                if (x == u) continue;
                u32 y = u ^ x;
                if (tfr[y] != su - val || tfr[y] < val) continue;
                EchelonBasis sp;
                sp.insert(u);
                sp.insert(x);
                spans.emplace(sp.rows()[0], sp.rows()[1]);
            }
        }
    }

    std::vector<QuadSpace> out;
    for (auto& [a, b] : spans) {
        // T = {w in W : a.w = b.w = 0} in coordinates
        std::vector<u64> t_coords = orthogonal_complement(std::vector<u64>{a, b}, dw);
        std::vector<u64> t_masks;
        for (u64 c : t_coords) {
            u64 mask = 0;
            for (int i = 0; i < dw; ++i)
                if ((c >> i) & 1) mask ^= ft.w_basis[i];
            t_masks.push_back(mask);
        }
        // Poisson identity check: the pair sum equals 4 |Q2 ^ T|
        EchelonBasis t_space = span_of(t_masks);
        int hits = 0;
        for (const QuadForm& q : rank2_forms_cached(n))
            if (t_space.contains(q.coeffs)) ++hits;
        std::int32_t pair_sum = t0 + tfr[u32(a)] + tfr[u32(b)] + tfr[u32(a ^ b)];
        if (pair_sum != 4 * hits)
            throw std::logic_error("fourier_apn_extensions: Poisson identity violated");
        if (hits != 0) continue;  // defensive; pair_sum == 0 already implies this

        QuadSpace ext(n);
        for (u64 m : orthogonal_complement(t_masks, qf_dim(n))) ext.basis.insert(m);
        out.push_back(std::move(ext));
    }
    return out;
}

// Step 1 / Step 2 / Step 3 of the bent-to-APN procedure, generalized to
// any even n: extend (n, n/2)-bent seeds one coordinate at a time up to
// dimension n-2 (optional per-level BS targets, J2 dedup between levels,
// differential-uniformity pruning), then finish with the Fourier-pair
// extension.  Emits verified quadratic APN functions with zero affine
// part; return false from emit to stop early.
inline void bent_pipeline(const std::vector<QuadSpace>& seeds,
                          const std::vector<std::optional<ExtensionTarget>>& level_targets,
                          const SearchBudget& budget,
                          const std::function<bool(const VectorialFunction&)>& emit,
                          int workers = 1) {
    if (seeds.empty()) return;
    int n = seeds[0].n;
    detail::Deadline deadline(budget);
    std::atomic<bool> stop{false};
    std::atomic<u64> emitted{0};

    std::vector<QuadSpace> current = seeds;
    size_t level_idx = 0;
    for (int d = seeds[0].dim(); d < n - 2 && !stop; ++d, ++level_idx) {
        std::optional<ExtensionTarget> target;
        if (level_idx < level_targets.size()) target = level_targets[level_idx];
        std::vector<QuadSpace> next;
        std::mutex mtx;
        detail::parallel_for_each(current, workers, [&](const QuadSpace& v) {
            if (stop || deadline.expired()) { stop = true; return; }
            std::vector<QuadSpace> exts = coordinate_extensions(v, target, true, &deadline);
            std::lock_guard<std::mutex> lock(mtx);
            for (QuadSpace& w : exts) next.push_back(std::move(w));
        });
        current = j2_dedup(next, 1, workers);
    }

    std::mutex emit_mtx;
    detail::parallel_for_each(current, workers, [&](const QuadSpace& v) {
        if (stop || deadline.expired()) { stop = true; return; }
        for (QuadSpace& ext : fourier_apn_extensions(v)) {
            if (stop) return;
            VectorialFunction f = function_from_space(ext);
            if (!differential_uniformity_at_most(f, 2) || !is_apn_flat(ext) ||
                !is_apn_alpha(f))
                throw std::logic_error("bent_pipeline: emitted candidate fails APN checks");
            std::lock_guard<std::mutex> lock(emit_mtx);
            if (stop) return;
            if (!emit(f)) { stop = true; return; }
            if (budget.max_results && ++emitted >= *budget.max_results) {
                stop = true;
                return;
            }
        }
    });
}

// ---------------------------------------------------------------------
// Input-dimension extension (lifting through G(x, x_n) = F(x) + x_n L(x))
// ---------------------------------------------------------------------

// Derivative value sets D_alpha = { F(x+a)+F(x)+F(a)+F(0) : x } for all
// a, packed as bitsets over F_2^m.
class DerivativeSets {
public:
    explicit DerivativeSets(const VectorialFunction& f)
        : m_(f.m), words_per_(((size_t(1) << f.m) + 63) / 64),
          bits_(words_per_ << f.n, 0) {
        u32 f0 = f.values[0];
        for (u32 a = 1; a < (u32(1) << f.n); ++a) {
            u64* w = &bits_[a * words_per_];
            for (u32 x = 0; x < (u32(1) << f.n); ++x) {
                u32 v = f.values[x ^ a] ^ f.values[x] ^ f.values[a] ^ f0;
                w[v >> 6] |= u64(1) << (v & 63);
            }
        }
    }
    bool contains(u32 a, u32 v) const {
        return (bits_[a * words_per_ + (v >> 6)] >> (v & 63)) & 1;
    }

private:
    int m_;
    size_t words_per_;
    std::vector<u64> bits_;
};

// Linear (n,m)-map given by its images on the unit vectors.
struct LinearMap {
    std::vector<u32> basis_images;  // size n

    u32 operator()(u32 a) const {
        u32 v = 0;
        for (size_t i = 0; i < basis_images.size(); ++i)
            if ((a >> i) & 1) v ^= basis_images[i];
        return v;
    }
};

// The lift admissibility condition: L(a) must avoid D_a for every a != 0.
inline bool input_extension_check(const VectorialFunction& f, const LinearMap& l) {
    if (!differential_uniformity_at_most(f, 2))
        throw std::invalid_argument("input_extension_check: F must have delta = 2");
    DerivativeSets ds(f);
    for (u32 a = 1; a < (u32(1) << f.n); ++a)
        if (ds.contains(a, l(a))) return false;
    return true;
}

inline VectorialFunction lift(const VectorialFunction& f, const LinearMap& l) {
    VectorialFunction g(f.n + 1, f.m);
    u32 half = u32(1) << f.n;
    for (u32 x = 0; x < half; ++x) {
        g.values[x] = f.values[x];
        g.values[x | half] = f.values[x] ^ l(x);
    }
    return g;
}

namespace detail {

// Shared incremental L construction: given images for e_0..e_{i-1}
// (with L values tabulated over the 2^i span), find the admissible
// images c for e_i, i.e. those with L(e_i + s) outside D_{e_i + s} for
// every s in the current span.
inline std::vector<u32> admissible_images(const DerivativeSets& ds,
                                          const std::vector<u32>& l_tab, int i, int m) {
    u32 span = u32(1) << i;
    std::vector<u32> ok;
    for (u32 c = 0; c < (u32(1) << m); ++c) {
        bool good = true;
        for (u32 s = 0; s < span; ++s)
            if (ds.contains(span | s, c ^ l_tab[s])) { good = false; break; }
        if (good) ok.push_back(c);
    }
    return ok;
}

inline void extend_l_tab(std::vector<u32>& l_tab, u32 c) {
    size_t sz = l_tab.size();
    l_tab.resize(sz * 2);
    for (size_t s = 0; s < sz; ++s) l_tab[sz + s] = l_tab[s] ^ c;
}

}  // namespace detail

// Randomized incremental construction of an admissible L, as in the
// random-search method: choose L(e_0) uniformly among admissible values,
// then L(e_1), and so on; up to budget.attempts tries.  Deterministic
// for a fixed budget.seed.
inline std::optional<VectorialFunction> extend_input_random(const VectorialFunction& f,
                                                            const SearchBudget& budget) {
    if (!differential_uniformity_at_most(f, 2))
        throw std::invalid_argument("extend_input_random: F must have delta = 2");
    DerivativeSets ds(f);
    detail::Deadline deadline(budget);
    for (int attempt = 0; attempt < budget.attempts; ++attempt) {
        if (deadline.expired()) break;
        std::mt19937_64 rng = detail::stream_rng(budget.seed, u64(attempt));
        std::vector<u32> l_tab{0};
        LinearMap l;
        bool ok = true;
        for (int i = 0; i < f.n && ok; ++i) {
            std::vector<u32> choices = detail::admissible_images(ds, l_tab, i, f.m);
            if (choices.empty()) { ok = false; break; }
            u32 c = choices[std::uniform_int_distribution<size_t>(
                0, choices.size() - 1)(rng)];
            l.basis_images.push_back(c);
            detail::extend_l_tab(l_tab, c);
        }
        if (!ok) continue;
        VectorialFunction g = lift(f, l);
        if (!differential_uniformity_at_most(g, 2))
            throw std::logic_error("extend_input_random: lift fails delta = 2");
        return g;
    }
    return std::nullopt;
}

// Depth-first enumeration of every admissible L, with constraint
// propagation (a branch dies as soon as some alpha in the current span
// is violated).  Square lifts (n+1 = m) are deduplicated by
// ortho-derivative signature.
inline std::vector<VectorialFunction> extend_input_exhaustive(
    const VectorialFunction& f, const SearchBudget* budget = nullptr) {
    if (!differential_uniformity_at_most(f, 2))
        throw std::invalid_argument("extend_input_exhaustive: F must have delta = 2");
    DerivativeSets ds(f);
    std::optional<detail::Deadline> deadline;
    if (budget) deadline.emplace(*budget);

    std::vector<VectorialFunction> out;
    std::set<ODSignature> seen;
    bool dedup_square = (f.n + 1 == f.m);

    std::vector<u32> l_tab{0};
    LinearMap l;
    std::function<bool()> rec = [&]() -> bool {
        if (deadline && deadline->expired()) return false;
        int i = int(l.basis_images.size());
        if (i == f.n) {
            VectorialFunction g = lift(f, l);
            if (!differential_uniformity_at_most(g, 2))
                throw std::logic_error("extend_input_exhaustive: lift fails delta = 2");
            if (dedup_square) {
                ODSignature sig = od_signature(g);
                if (!seen.insert(sig).second) return true;
            }
            out.push_back(std::move(g));
            if (budget && budget->max_results && out.size() >= *budget->max_results)
                return false;
            return true;
        }
        for (u32 c : detail::admissible_images(ds, l_tab, i, f.m)) {
            l.basis_images.push_back(c);
            detail::extend_l_tab(l_tab, c);
            bool cont = rec();
            l_tab.resize(l_tab.size() / 2);
            l.basis_images.pop_back();
            if (!cont) return false;
        }
        return true;
    };
    rec();
    return out;
}

// EA-invariant label for rectangular quadratic functions: differential
// spectrum plus absolute Walsh spectrum, serialized.
inline std::string rect_signature(const VectorialFunction& f) {
    std::map<u32, u64> diff;
    std::vector<u32> cnt(size_t(1) << f.m);
    for (u32 a = 1; a < (u32(1) << f.n); ++a) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (u32 x = 0; x < (u32(1) << f.n); ++x) ++cnt[f.values[x ^ a] ^ f.values[x]];
        for (u32 b = 0; b < (u32(1) << f.m); ++b) ++diff[cnt[b]];
    }
    std::map<u32, u64> walsh;
    for (u32 b = 1; b < (u32(1) << f.m); ++b) {
        WalshSpectrum ws = walsh_spectrum(component_tt(f, b));
        for (std::int32_t v : ws.values) ++walsh[u32(v < 0 ? -v : v)];
    }
    std::ostringstream os;
    os << f.n << 'x' << f.m;
    for (auto& [v, c] : diff) os << ',' << v << ',' << c;
    os << ';';
    for (auto& [v, c] : walsh) os << ',' << v << ',' << c;
    return os.str();
}

inline u64 rect_hash(const VectorialFunction& f) {
    // FNV-1a over the value table; stable across runs and platforms
    u64 h = 0xcbf29ce484222325ull;
    auto mix = [&](u64 v) { h = (h ^ v) * 0x100000001b3ull; };
    mix(u64(f.n));
    mix(u64(f.m));
    for (u32 v : f.values) mix(v);
    return h;
}

// Classify quadratic (k,m)-functions with delta = 2 by successive
// exhaustive lifting from the zero (1,m)-function, label-deduplicated
// per level; then lift representatives randomly to (m-1,m) and finish
// exhaustively to (m,m), emitting verified APN functions.
inline void input_pipeline(int n_start, int m, const SearchBudget& budget,
                           const std::function<bool(const VectorialFunction&)>& emit,
                           int workers = 1) {
    if (n_start < 1 || n_start >= m)
        throw std::invalid_argument("input_pipeline: need 1 <= n_start < m");
    detail::Deadline deadline(budget);

    // exhaustive classification levels: (1,m) -> ... -> (n_start, m)
    std::vector<VectorialFunction> reps{VectorialFunction(1, m)};
    for (int k = 1; k < n_start; ++k) {
        std::map<std::string, VectorialFunction> next;
        std::mutex mtx;
        std::atomic<bool> level_stop{false};
        detail::parallel_for_each(reps, workers, [&](const VectorialFunction& f) {
            if (level_stop || deadline.expired()) { level_stop = true; return; }
            SearchBudget lvl = budget;
            for (VectorialFunction& g : extend_input_exhaustive(f, &lvl)) {
                std::string label = rect_signature(g);
                std::lock_guard<std::mutex> lock(mtx);
                next.emplace(std::move(label), std::move(g));
            }
        });
        reps.clear();
        for (auto& [label, g] : next) reps.push_back(std::move(g));
        if (level_stop) return;
    }

    // random lifts up to (m-1, m), then exhaustive finish to (m, m)
    std::atomic<bool> stop{false};
    std::atomic<u64> emitted{0};
    std::mutex emit_mtx;
    std::set<std::string> mid_seen;
    detail::parallel_for_each(reps, workers, [&](const VectorialFunction& f) {
        if (stop || deadline.expired()) { stop = true; return; }
        SearchBudget b = budget;
        b.seed = detail::splitmix64(budget.seed) ^ rect_hash(f);
        std::optional<VectorialFunction> g = f;
        for (int k = n_start; k < m - 1 && g; ++k) {
            b.seed = detail::splitmix64(b.seed);
            g = extend_input_random(*g, b);
        }
        if (!g) return;
        {
            std::lock_guard<std::mutex> lock(emit_mtx);
            if (!mid_seen.insert(rect_signature(*g)).second) return;
        }
        SearchBudget fin = budget;
        for (VectorialFunction& h : extend_input_exhaustive(*g, &fin)) {
            if (stop) return;
            if (!is_apn_alpha(h) || !is_apn_flat(comp_space(h)))
                throw std::logic_error("input_pipeline: emitted candidate fails APN checks");
            std::lock_guard<std::mutex> lock(emit_mtx);
            if (stop) return;
            if (!emit(h)) { stop = true; return; }
            if (budget.max_results && ++emitted >= *budget.max_results) {
                stop = true;
                return;
            }
        }
    });
}

}  // namespace apn
