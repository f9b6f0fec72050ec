// orthoderiv.hpp -- ortho-derivatives of quadratic APN functions and the
// spectra signatures used as EA-class labels.
#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolfun.hpp"
#include "f2.hpp"
#include "vecfun.hpp"

namespace apn {

struct OrthoDerivative {
    int n = 0;
    std::vector<u32> values;  // pi_F table, 2^n entries
};

// For each a != 0 the derivative x -> F(x+a)+F(x)+F(0)+F(a) is linear
// with hyperplane image; pi_F(a) is the unique nonzero vector orthogonal
// to that image.  The image is spanned by the values at basis points.
inline OrthoDerivative ortho_derivative(const VectorialFunction& f) {
    if (f.n != f.m) throw std::invalid_argument("ortho_derivative: requires n = m");
    OrthoDerivative od;
    od.n = f.n;
    od.values.assign(size_t(1) << f.n, 0);
    u32 f0 = f.values[0];
    for (u32 a = 1; a < (u32(1) << f.n); ++a) {
        BitMat m(f.n, f.n);
        for (int i = 0; i < f.n; ++i) {
            u32 e = u32(1) << i;
            m.row_data[i] = f.values[e ^ a] ^ f.values[e] ^ f.values[a] ^ f0;
        }
        std::vector<BitVec> ker = kernel_basis(m);
        if (ker.size() != 1)
            throw std::runtime_error(
                "ortho_derivative: solution space is not 1-dimensional; "
                "input is not a quadratic APN function");
        od.values[a] = u32(ker[0].bits);
    }
    return od;
}

struct ODSignature {
    int n = 0;
    std::vector<std::pair<u32, u64>> diff_spectrum;       // value -> count
    std::vector<std::pair<u32, u64>> walsh_spectrum_abs;  // |value| -> count
    friend bool operator==(const ODSignature&, const ODSignature&) = default;
    friend bool operator<(const ODSignature& a, const ODSignature& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.diff_spectrum != b.diff_spectrum) return a.diff_spectrum < b.diff_spectrum;
        return a.walsh_spectrum_abs < b.walsh_spectrum_abs;
    }
};

inline ODSignature od_signature(const VectorialFunction& f) {
    OrthoDerivative od = ortho_derivative(f);
    u32 sz = u32(1) << od.n;
    ODSignature sig;
    sig.n = od.n;

    std::map<u32, u64> diff;
    std::vector<u32> cnt(sz);
    for (u32 a = 1; a < sz; ++a) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (u32 x = 0; x < sz; ++x) ++cnt[od.values[x ^ a] ^ od.values[x]];
        for (u32 b = 0; b < sz; ++b) ++diff[cnt[b]];
    }
    for (auto& [v, c] : diff) sig.diff_spectrum.emplace_back(v, c);

    std::map<u32, u64> walsh;
    for (u32 b = 1; b < sz; ++b) {
        TruthTable tt(od.n);
        for (u32 x = 0; x < sz; ++x)
            tt.values[x] = std::uint8_t(parity64(od.values[x] & b));
        WalshSpectrum ws = walsh_spectrum(tt);
        for (std::int32_t v : ws.values) ++walsh[u32(v < 0 ? -v : v)];
    }
    for (auto& [v, c] : walsh) sig.walsh_spectrum_abs.emplace_back(v, c);
    return sig;
}

// Canonical serialization: n, then sorted diff pairs, then sorted Walsh
// pairs, decimal, comma-separated.  This exact string feeds the dedup key.
inline std::string od_signature_serialize(const ODSignature& sig) {
    std::ostringstream os;
    os << sig.n;
    for (auto& [v, c] : sig.diff_spectrum) os << ',' << v << ',' << c;
    for (auto& [v, c] : sig.walsh_spectrum_abs) os << ',' << v << ',' << c;
    return os.str();
}

}  // namespace apn
