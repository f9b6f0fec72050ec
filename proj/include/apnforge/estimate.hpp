// estimate.hpp -- class-count estimators: the inverse coupon-collector
// maximum-likelihood estimate and the overlap-based estimate.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace apn {

struct SampleStats {
    std::uint64_t t = 0;                        // sample size, with replacement
    std::uint64_t l = 0;                        // distinct labels observed
    std::optional<std::uint64_t> t_new;         // samples outside the known set
    std::optional<std::uint64_t> m_known;       // size of the known class set
};

namespace detail {

// sign of log f(N+1) - log f(N) for f(N) = C(N,l) / N^t, i.e. whether
// the likelihood still increases at N.  The increment is
//   log((N+1)/(N+1-l)) - t log((N+1)/N)
// evaluated with log1p in long double; both terms are O(l/N) while the
// increment changes by ~(t-l)/N^2 per step, far above rounding error.
inline bool likelihood_increasing(std::uint64_t n, std::uint64_t t, std::uint64_t l) {
    long double up = -std::log1p(-(long double)l / (long double)(n + 1));
    long double down = (long double)t * std::log1p(1.0L / (long double)n);
    return up > down;
}

}  // namespace detail

// argmax_{N > l-1} C(N,l)/N^t, via exponential bracketing plus binary
// search on the sign change of the likelihood ratio (the target is
// unimodal for N > l-1).
inline std::uint64_t mle_class_count(const SampleStats& stats) {
    const std::uint64_t t = stats.t, l = stats.l;
    if (l < 1 || l > t) throw std::invalid_argument("mle_class_count: need 1 <= l <= t");
    if (l == t)
        throw std::invalid_argument(
            "mle_class_count: sample shows no repeats (l = t), estimator diverges");
    // bracket: find hi with ratio decreasing at hi
    std::uint64_t lo = l, hi = l;
    while (detail::likelihood_increasing(hi, t, l)) {
        lo = hi;
        hi *= 2;
    }
    // invariant: increasing at lo (or lo == l), not increasing at hi
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (detail::likelihood_increasing(mid, t, l)) lo = mid;
        else hi = mid;
    }
    // f(hi) >= f(lo) iff still increasing at lo
    return detail::likelihood_increasing(lo, t, l) ? hi : lo;
}

struct OverlapEstimate {
    std::uint64_t numerator = 0;    // t * M
    std::uint64_t denominator = 0;  // t - t'
    std::uint64_t nearest = 0;      // rounded to nearest integer
};

// N = t M / (t - t'), exact rational plus nearest integer.
inline OverlapEstimate overlap_class_count(const SampleStats& stats) {
    if (!stats.t_new || !stats.m_known)
        throw std::invalid_argument("overlap_class_count: t' and M are required");
    const std::uint64_t t = stats.t, tp = *stats.t_new, m = *stats.m_known;
    if (tp >= t)
        throw std::invalid_argument(
            "overlap_class_count: t' must be < t (no overlap information)");
    OverlapEstimate est;
    est.numerator = t * m;
    est.denominator = t - tp;
    est.nearest = (est.numerator + est.denominator / 2) / est.denominator;
    return est;
}

}  // namespace apn
