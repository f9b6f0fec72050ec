// gf2e.hpp -- minimal GF(2^n) arithmetic, used to build reference
// functions such as x -> x^3.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "f2.hpp"

namespace apn {

struct GF2e {
    int n;
    u32 poly;  // irreducible polynomial, bit n set

    explicit GF2e(int n_) : n(n_), poly(default_poly(n_)) {}
    GF2e(int n_, u32 p) : n(n_), poly(p) {}

    static u32 default_poly(int n) {
        switch (n) {
            case 2: return 0x7;    // x^2+x+1
            case 3: return 0xb;    // x^3+x+1
            case 4: return 0x13;   // x^4+x+1
            case 5: return 0x25;   // x^5+x^2+1
            case 6: return 0x43;   // x^6+x+1
            case 7: return 0x83;   // x^7+x+1
            case 8: return 0x11b;  // x^8+x^4+x^3+x+1
            default: throw std::invalid_argument("GF2e: no default polynomial");
        }
    }

    u32 mul(u32 a, u32 b) const {
        u32 r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if (a & (u32(1) << n)) a ^= poly;
        }
        return r;
    }

    u32 cube(u32 a) const { return mul(a, mul(a, a)); }
};

}  // namespace apn
