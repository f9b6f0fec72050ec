#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "apnforge/io.hpp"

using namespace apn;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("value tables round-trip") {
    std::vector<VectorialFunction> fs{gold_function(4), gold_function(4),
                                      gold_function(5)};
    std::ostringstream os;
    export_value_tables(os, fs);
    std::istringstream is(os.str());
    std::vector<VectorialFunction> back = import_functions(is);
    CHECK(back == fs);
}

TEST_CASE("quad basis blocks round-trip through import_functions") {
    QuadSpace s = comp_space(gold_function(4));
    std::ostringstream os;
    export_quad_basis(os, s);
    std::istringstream is(os.str());
    std::vector<VectorialFunction> back = import_functions(is);
    REQUIRE(back.size() == 1);
    CHECK(comp_space(back[0]).basis == s.basis);
}

TEST_CASE("parse errors carry the source line number") {
    std::istringstream bad_header("#vt n=4\n0 0 0 0\n");
    CHECK_THROWS_WITH(import_functions(bad_header, "f"),
                      Catch::Matchers::ContainsSubstring("f:1"));

    std::istringstream headerless("1 2 3\n");
    CHECK_THROWS_WITH(import_functions(headerless, "g"),
                      Catch::Matchers::ContainsSubstring("g:1"));

    std::istringstream short_line("#vt n=2 m=2\n1 2 3\n");
    CHECK_THROWS_WITH(import_functions(short_line, "h"),
                      Catch::Matchers::ContainsSubstring("h:2"));

    std::istringstream out_of_range("#vt n=2 m=2\n1 2 3 4\n");
    CHECK_THROWS_WITH(import_functions(out_of_range, "k"),
                      Catch::Matchers::ContainsSubstring("k:2"));

    CHECK_THROWS_AS(import_functions("/nonexistent/path/x.vt"), IoError);
}

TEST_CASE("import_spaces reads qb files") {
    QuadSpace a = comp_space(gold_function(4));
    QuadSpace b = comp_space(gold_function(6));
    TempFile tmp("apnforge_test_spaces.qb");
    {
        std::ofstream os(tmp.path);
        export_quad_basis(os, a);
        export_quad_basis(os, b);
    }
    std::vector<QuadSpace> back = import_spaces(tmp.path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].basis == a.basis);
    CHECK(back[1].basis == b.basis);
    CHECK_THROWS_AS(import_spaces("/nonexistent/path/x.qb"), IoError);
}

TEST_CASE("content id is stable and collision-free across distinct tables") {
    VectorialFunction g4 = gold_function(4);
    CHECK(content_id(g4) == content_id(gold_function(4)));
    CHECK(content_id(g4) != content_id(gold_function(5)));
    CHECK(content_id(g4).size() == 64);
}

TEST_CASE("function records serialize through json") {
    FunctionRecord r = FunctionRecord::from_function(gold_function(4), "bent-pipeline",
                                                     42, "final");
    FunctionRecord back = FunctionRecord::from_json(r.to_json());
    CHECK(back.id == r.id);
    CHECK(back.values == r.values);
    CHECK(back.od_hash == r.od_hash);
    CHECK(back.j2_hash == r.j2_hash);
    CHECK(back.method == "bent-pipeline");
    CHECK(back.seed == 42);
    CHECK(back.function() == gold_function(4));
}

TEST_CASE("dedup store inserts each class once") {
    std::mt19937_64 rng(61);
    DedupStore store;
    VectorialFunction g = gold_function(4);
    CHECK(store.insert(g));
    CHECK_FALSE(store.insert(g));
    // EA transforms share the class
    for (int trial = 0; trial < 10; ++trial) {
        AffineMap a = random_affine_permutation(4, rng);
        AffineMap b = random_affine_permutation(4, rng);
        AffineMap c = random_affine_map(4, 4, rng);
        CHECK_FALSE(store.insert(apply_ea(g, a, b, c)));
    }
    CHECK(store.size() == 1);
    // a different dimension is a different class
    CHECK(store.insert(gold_function(5)));
    CHECK(store.size() == 2);
}

TEST_CASE("dedup store round-trips through its database format") {
    DedupStore store;
    store.insert(gold_function(4), "bent-pipeline", 3, "final");
    store.insert(gold_function(6), "input-pipeline", 4, "final");
    std::ostringstream os;
    store.save(os);

    DedupStore loaded;
    std::istringstream is(os.str());
    loaded.load(is);
    CHECK(loaded.size() == 2);
    // loading the same records twice does not duplicate
    std::istringstream is2(os.str());
    loaded.load(is2);
    CHECK(loaded.size() == 2);
    // known classes are still recognized after the round trip
    CHECK_FALSE(loaded.insert(gold_function(4)));
}

TEST_CASE("checkpoints round-trip stage, pending spaces, and the store") {
    TempFile tmp("apnforge_test_checkpoint.txt");
    BentCheckpoint cp;
    cp.stage = "level-2";
    cp.pending.push_back(comp_space(gold_function(4)));
    cp.pending.push_back(comp_space(gold_function(6)));
    DedupStore store;
    store.insert(gold_function(4));
    save_checkpoint(tmp.path, cp, store);

    DedupStore loaded_store;
    BentCheckpoint back = load_checkpoint(tmp.path, loaded_store);
    CHECK(back.stage == "level-2");
    REQUIRE(back.pending.size() == 2);
    CHECK(back.pending[0].basis == cp.pending[0].basis);
    CHECK(back.pending[1].basis == cp.pending[1].basis);
    CHECK(loaded_store.size() == 1);
    CHECK_FALSE(loaded_store.insert(gold_function(4)));
}
