#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "spectree/families.hpp"
#include "spectree/oracle.hpp"
#include "spectree/tree.hpp"

using namespace spectree;

TEST_CASE("build validates trees") {
    auto p2 = Tree::build(2, {{0, 1}});
    CHECK(p2.size() == 2);
    CHECK(p2.degree(0) == 1);

    CHECK_THROWS_AS(Tree::build(3, {{0, 1}, {1, 2}, {0, 2}}), NotATree);   // cycle
    CHECK_THROWS_AS(Tree::build(4, {{0, 1}, {2, 3}, {0, 1}}), NotATree);   // duplicate
    CHECK_THROWS_AS(Tree::build(4, {{0, 1}, {1, 2}}), NotATree);           // wrong count
    CHECK_THROWS_AS(Tree::build(4, {{0, 1}, {1, 2}, {3, 4}}), BadLabel);
    CHECK_THROWS_AS(Tree::build(2, {{0, 0}}), NotATree);

    auto s4 = Tree::build(4, {{0, 1}, {1, 2}, {1, 3}});
    CHECK(s4.degree(1) == 3);
    CHECK(s4.diameter() == 2);
}

TEST_CASE("family generators and canonical labelings") {
    auto p5 = generate(FamilySpec::path(5));
    CHECK(p5.diameter() == 4);
    CHECK(p5.has_edge(0, 1));
    CHECK(p5.has_edge(3, 4));

    auto s6 = generate(FamilySpec::star(6));
    CHECK(s6.degree(0) == 5);

    auto cat = generate(FamilySpec::caterpillar({0, 3, 2, 0}));
    CHECK(cat.size() == 9);
    CHECK(cat.degree(1) == 5);   // spine neighbor + spine neighbor + 3 leaves
    CHECK(cat.has_edge(1, 4));
    CHECK(cat.has_edge(2, 7));

    SUBCASE("rose facts are derived from the construction") {
        auto rose = generate(FamilySpec::fiedler_rose(3, 3, 4));
        CHECK(rose.size() == 3 + 3 + 4 - 2);
        std::vector<int> degs;
        for (int v = 0; v < rose.size(); ++v) degs.push_back(rose.degree(v));
        std::sort(degs.begin(), degs.end());
        CHECK(degs == std::vector<int>{1, 1, 1, 1, 2, 2, 3, 3});
        // glue carries the two spines plus the star center
        CHECK(rose.degree(2) == 3);
        CHECK(rose.degree(3) == 3);   // center of S_4
    }

    auto rnd = generate(FamilySpec::random_pruefer(7, 1));
    CHECK(rnd.size() == 7);
    CHECK(rnd.edges().size() == 6);

    SUBCASE("s_caterpillar glues pendant-rooted copies") {
        auto s = Tree::build(3, {{0, 1}, {1, 2}});   // P_3, root at 0
        auto t = generate(FamilySpec::s_caterpillar(s, 0, 4));
        CHECK(t.size() == 4 + 4 * 2);
        for (int i = 0; i < 4; ++i) CHECK(t.degree(i) <= 3);
        CHECK_THROWS_AS(generate(FamilySpec::s_caterpillar(s, 1, 4)), BadSpec);   // not pendant
    }

    CHECK_THROWS_AS(generate(FamilySpec::fiedler_rose(1, 3, 3)), BadSpec);
    CHECK_THROWS_AS(generate(FamilySpec::path(0)), BadSpec);
}

TEST_CASE("parse_family") {
    auto f = parse_family("rose:3,4,5");
    CHECK(f.kind == FamilySpec::Kind::fiedler_rose);
    CHECK(f.l == 3);
    CHECK(f.t == 4);
    CHECK(f.r == 5);
    CHECK(parse_family("path:5").n == 5);
    CHECK(parse_family("caterpillar:0,3,2,0").leaf_counts == std::vector<int>{0, 3, 2, 0});
    CHECK_THROWS_AS(parse_family("blob:3"), BadSpec);
    CHECK_THROWS_AS(parse_family("path:x"), BadSpec);
}

TEST_CASE("decompose_along_path") {
    auto p5 = generate(FamilySpec::path(5));
    auto d = decompose_along_path(p5, {0, 1, 2, 3, 4});
    for (int i = 0; i < 5; ++i) {
        CHECK(d.subtrees[i] == std::vector<int>{i});
        CHECK(d.f_vectors[i].empty());
    }

    auto s4 = Tree::build(4, {{1, 0}, {1, 2}, {1, 3}});   // center 1
    auto ds = decompose_along_path(s4, {0, 1});
    CHECK(ds.subtrees[0] == std::vector<int>{0});
    CHECK(ds.subtrees[1] == std::vector<int>{1, 2, 3});
    CHECK(ds.subtree_degree(1) == 2);

    SUBCASE("rose: the glue keeps the whole star") {
        auto rose = generate(FamilySpec::fiedler_rose(3, 3, 4));
        auto lp = rose.path_between(0, rose.size() - 1);
        auto dr = decompose_along_path(rose, lp);
        // disjoint union covers V
        std::set<int> all;
        std::size_t total = 0;
        for (const auto& st : dr.subtrees) {
            total += st.size();
            all.insert(st.begin(), st.end());
        }
        CHECK(total == static_cast<std::size_t>(rose.size()));
        CHECK(all.size() == static_cast<std::size_t>(rose.size()));
        // glue vertex 2 carries center + 2 leaves
        auto glue_it = std::find(lp.begin(), lp.end(), 2);
        REQUIRE(glue_it != lp.end());
        CHECK(dr.subtrees[glue_it - lp.begin()].size() == 4);
    }

    CHECK_THROWS_AS(decompose_along_path(p5, {0, 2}), NotAPath);
    CHECK_THROWS_AS(decompose_along_path(p5, {0, 1, 0}), NotAPath);
    CHECK_THROWS_AS(decompose_along_path(p5, std::vector<int>{}), NotAPath);
}

TEST_CASE("decomposition structural invariant on random trees") {
    Rng rng(99);
    for (int it = 0; it < 200; ++it) {
        auto t = testing::random_tree(rng, 3 + rng.below(20));
        auto path = testing::random_path(rng, t);
        auto d = decompose_along_path(t, path);
        std::set<int> seen;
        for (int i = 0; i < d.k(); ++i) {
            for (int v : d.subtrees[i]) CHECK(seen.insert(v).second);
            // T_i touches the path exactly at v_i
            for (int v : d.subtrees[i])
                for (int j = 0; j < d.k(); ++j)
                    if (v == d.path[j]) CHECK(j == i);
        }
        CHECK(seen.size() == static_cast<std::size_t>(t.size()));
        // no edges between different subtrees except consecutive path edges
        std::vector<int> comp(t.size());
        for (int i = 0; i < d.k(); ++i)
            for (int v : d.subtrees[i]) comp[v] = i;
        for (auto [u, v] : t.edges()) {
            if (comp[u] == comp[v]) continue;
            CHECK(std::abs(comp[u] - comp[v]) == 1);
            // and those are exactly the path edges
            int a = std::min(comp[u], comp[v]);
            CHECK(((u == d.path[a] && v == d.path[a + 1]) ||
                   (v == d.path[a] && u == d.path[a + 1])));
        }
    }
}

TEST_CASE("longest path and pendants") {
    auto p6 = generate(FamilySpec::path(6));
    CHECK(p6.longest_path() == std::vector<int>{0, 1, 2, 3, 4, 5});
    CHECK(p6.diameter() == 5);

    auto s5 = generate(FamilySpec::star(5));
    CHECK(s5.diameter() == 2);
    CHECK(s5.longest_path() == std::vector<int>{1, 0, 2});   // smallest endpoint pair
    CHECK_FALSE(s5.longest_path_unique());

    auto cat = generate(FamilySpec::caterpillar({0, 2, 1, 0}));
    CHECK(cat.longest_path() == std::vector<int>{0, 1, 2, 3});
    CHECK_FALSE(cat.longest_path_unique());

    auto p4 = generate(FamilySpec::path(4));
    CHECK(p4.pendant_vertices() == std::vector<int>{0, 3});
    auto s6 = generate(FamilySpec::star(6));
    CHECK(s6.pendant_vertices() == std::vector<int>{1, 2, 3, 4, 5});
    auto single = Tree::build(1, {});
    CHECK(single.pendant_vertices().empty());
}

TEST_CASE("longest path length equals max eccentricity") {
    Rng rng(5);
    for (int it = 0; it < 100; ++it) {
        auto t = testing::random_tree(rng, 2 + rng.below(24));
        int ecc = 0;
        for (int v = 0; v < t.size(); ++v) {
            auto d = t.bfs_distances(v);
            ecc = std::max(ecc, *std::max_element(d.begin(), d.end()));
        }
        CHECK(static_cast<int>(t.longest_path().size()) == ecc + 1);
    }
}

TEST_CASE("pruefer round trip, exhaustive small") {
    for (int n = 2; n <= 7; ++n) {
        enumerate_labeled_trees(n, [&](const Tree& t) {
            auto seq = pruefer_encode(t);
            auto back = pruefer_decode(n, seq);
            CHECK(back.edges() == t.edges());
        });
    }
}

TEST_CASE("edge list and dot round trips") {
    auto t = generate(FamilySpec::caterpillar({1, 0, 2}));
    auto text = t.to_edge_list();
    auto back = Tree::from_edge_list(text);
    CHECK(back.edges() == t.edges());
    auto dot = t.to_dot();
    CHECK(dot.find("graph tree {") == 0);
    CHECK(dot.find("0 -- 1") != std::string::npos);
}
