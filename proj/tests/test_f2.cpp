#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "apnforge/f2.hpp"

using namespace apn;

namespace {

// independent oracle: rank by counting the row span, |span| = 2^rank
int rank_by_span_counting(const BitMat& m) {
    std::set<u64> span{0};
    for (u64 row : m.row_data) {
        std::set<u64> next = span;
        for (u64 s : span) next.insert(s ^ row);
        span = next;
    }
    int r = 0;
    while ((size_t(1) << r) < span.size()) ++r;
    return r;
}

BitMat random_mat(int rows, int cols, std::mt19937_64& rng) {
    BitMat m(rows, cols);
    for (int r = 0; r < rows; ++r)
        m.row_data[r] = rng() & ((u64(1) << cols) - 1);
    return m;
}

}  // namespace

TEST_CASE("gf2_rank on identity and zero") {
    for (int n : {1, 4, 8, 16}) {
        CHECK(gf2_rank(BitMat::identity(n)) == n);
        CHECK(gf2_rank(BitMat(n, n)) == 0);
    }
}

TEST_CASE("gf2_rank agrees with span-counting oracle on random 6x6") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        BitMat m = random_mat(6, 6, rng);
        CHECK(gf2_rank(m) == rank_by_span_counting(m));
    }
}

TEST_CASE("gf2_rank equals rank of transpose") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        BitMat m = random_mat(5, 9, rng);
        CHECK(gf2_rank(m) == gf2_rank(m.transposed()));
    }
}

TEST_CASE("kernel_basis: identity and zero matrix") {
    CHECK(kernel_basis(BitMat::identity(5)).empty());
    CHECK(kernel_basis(BitMat(4, 4)).size() == 4);
}

TEST_CASE("kernel_basis: rank-nullity and membership on random matrices") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 1 + int(rng() % 8), cols = 1 + int(rng() % 10);
        BitMat m = random_mat(rows, cols, rng);
        auto ker = kernel_basis(m);
        CHECK(int(ker.size()) == cols - gf2_rank(m));
        for (const BitVec& v : ker) {
            CHECK(v.bits != 0);
            CHECK(m.apply(v.bits) == 0);
        }
        // basis vectors are independent
        EchelonBasis b;
        for (const BitVec& v : ker) CHECK(b.insert(v.bits));
    }
}

TEST_CASE("orthogonal_complement: trivial cases") {
    // full space -> empty complement
    std::vector<BitVec> full;
    for (int i = 0; i < 5; ++i) full.emplace_back(u64(1) << i, 5);
    CHECK(orthogonal_complement(full, 5).empty());
    // empty basis -> full ambient space
    CHECK(orthogonal_complement(std::vector<BitVec>{}, 7).size() == 7);
}

TEST_CASE("orthogonal_complement: dimensions and double complement") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 3 + int(rng() % 10);
        int k = int(rng() % (d + 1));
        std::vector<u64> gens;
        for (int i = 0; i < k; ++i) gens.push_back(rng() & ((u64(1) << d) - 1));
        EchelonBasis sp = span_of(gens);
        std::vector<u64> basis(sp.rows().begin(), sp.rows().end());
        std::vector<u64> comp = orthogonal_complement(basis, d);
        CHECK(int(basis.size() + comp.size()) == d);
        std::vector<u64> back = orthogonal_complement(comp, d);
        CHECK(span_of(back) == sp);
    }
}

TEST_CASE("EchelonBasis reduce gives the minimal coset representative") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<u64> gens;
        for (int i = 0; i < 4; ++i) gens.push_back(rng() & 0xfff);
        EchelonBasis b = span_of(gens);
        u64 x = rng() & 0xfff;
        u64 r = b.reduce(x);
        for (u64 idx = 0; idx < (u64(1) << b.dim()); ++idx)
            CHECK(r <= (x ^ b.element(idx)));
    }
}

TEST_CASE("for_each_subspace counts match Gaussian binomials") {
    // [5 choose 2]_2 = 155, [4 choose 2]_2 = 35
    int count = 0;
    for_each_subspace(5, 2, nullptr, [&](const std::vector<u64>&) {
        ++count;
        return true;
    });
    CHECK(count == 155);
    count = 0;
    std::set<std::vector<u64>> canon;
    for_each_subspace(4, 2, nullptr, [&](const std::vector<u64>& gens) {
        ++count;
        canon.insert(span_of(gens).rows());
        return true;
    });
    CHECK(count == 35);
    CHECK(canon.size() == 35);  // each subspace visited exactly once
}
