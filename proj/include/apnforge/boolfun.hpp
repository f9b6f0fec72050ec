// boolfun.hpp -- Boolean function analytics: truth tables, ANF (Moebius),
// Walsh spectra via the fast Walsh-Hadamard butterfly, and the normalized
// fourth power moment alpha as an exact dyadic rational.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "f2.hpp"

namespace apn {

struct TruthTable {
    int n = 0;
    std::vector<std::uint8_t> values;  // 2^n entries, 0/1

    TruthTable() = default;
    explicit TruthTable(int n_) : n(n_), values(size_t(1) << n_, 0) {}
    TruthTable(int n_, std::vector<std::uint8_t> v) : n(n_), values(std::move(v)) {
        if (values.size() != (size_t(1) << n))
            throw std::invalid_argument("TruthTable: length must be 2^n");
    }
    size_t size() const { return values.size(); }
    friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

struct WalshSpectrum {
    int n = 0;
    std::vector<std::int32_t> values;  // indexed by a
};

// Moebius transform over GF(2); involution mapping truth table <-> ANF.
inline TruthTable moebius(const TruthTable& tt) {
    TruthTable out = tt;
    size_t sz = out.size();
    for (size_t step = 1; step < sz; step <<= 1)
        for (size_t block = 0; block < sz; block += step << 1)
            for (size_t i = block; i < block + step; ++i)
                out.values[i + step] ^= out.values[i];
    return out;
}

inline int anf_degree(const TruthTable& anf) {
    int deg = -1;  // degree of the zero function, by convention -infinity
    for (size_t s = 0; s < anf.size(); ++s)
        if (anf.values[s]) deg = std::max(deg, std::popcount(u64(s)));
    return deg;
}

inline void fwht(std::vector<std::int32_t>& v) {
    size_t sz = v.size();
    for (size_t step = 1; step < sz; step <<= 1)
        for (size_t block = 0; block < sz; block += step << 1)
            for (size_t i = block; i < block + step; ++i) {
                std::int32_t a = v[i], b = v[i + step];
                v[i] = a + b;
                v[i + step] = a - b;
            }
}

inline WalshSpectrum walsh_spectrum(const TruthTable& tt) {
    WalshSpectrum ws;
    ws.n = tt.n;
    ws.values.resize(tt.size());
    for (size_t x = 0; x < tt.size(); ++x)
        ws.values[x] = tt.values[x] ? -1 : 1;
    fwht(ws.values);
    return ws;
}

// Exact dyadic rational num / 2^exp, kept in lowest terms.
struct Dyadic {
    u64 num = 0;
    int exp = 0;  // denominator 2^exp, exp >= 0

    Dyadic() = default;
    Dyadic(u64 n_, int e_) : num(n_), exp(e_) { normalize(); }

    void normalize() {
        if (num == 0) { exp = 0; return; }
        while (exp > 0 && (num & 1) == 0) { num >>= 1; --exp; }
    }
    bool is_integer() const { return exp == 0; }
    friend bool operator==(const Dyadic&, const Dyadic&) = default;
    friend bool operator==(const Dyadic& d, u64 k) { return d.exp == 0 && d.num == k; }
};

inline Dyadic dyadic_add(Dyadic a, Dyadic b) {
    int e = std::max(a.exp, b.exp);
    return Dyadic((a.num << (e - a.exp)) + (b.num << (e - b.exp)), e);
}

// alpha(f) = 2^{-3n} sum_u walsh(u)^4
inline Dyadic alpha(const TruthTable& tt) {
    WalshSpectrum ws = walsh_spectrum(tt);
    u64 sum = 0;
    for (std::int32_t v : ws.values) {
        u64 sq = u64(std::int64_t(v) * v);
        sum += sq * sq;  // < 2^n * 2^{4n}, fits for n <= 12
    }
    return Dyadic(sum, 3 * tt.n);
}

}  // namespace apn
