#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "spectree/families.hpp"
#include "spectree/oracle.hpp"
#include "spectree/schur.hpp"

using namespace spectree;
namespace st = spectree::testing;

namespace {

// f'(lambda) = || (L - lambda)^{-1} f ||^2, used by the monotonicity checks
double f_prime(const ResolventFn& r, double lambda) {
    if (r.singleton()) return 0.0;
    auto y = solve_shifted(r.block(), lambda, r.f_vector());
    return dot(y, y);
}

} // namespace

TEST_CASE("f_T basics") {
    auto p2 = generate(FamilySpec::path(2));
    ResolventFn singleton(p2, {0}, 0);
    CHECK(f_T(singleton, 0.37) == 0.0);
    CHECK(f_T(singleton, -5.0) == 0.0);

    SUBCASE("star block: f = m/(1-lambda)") {
        for (int m : {1, 2, 5}) {
            auto star = generate(FamilySpec::star(m + 1));
            ResolventFn r(star, 0);
            for (double lam : {0.0, 0.3, 0.9, 2.5}) {
                CHECK(f_T(r, lam) == doctest::Approx(m / (1.0 - lam)).epsilon(1e-12));
            }
            CHECK_THROWS_AS(f_T(r, 1.0 + 1e-10), NearSingularShift);
        }
    }

    SUBCASE("f(0) equals the root degree in the subtree") {
        Rng rng(7);
        for (int it = 0; it < 100; ++it) {
            auto t = st::random_tree(rng, 2 + rng.below(18));
            int root = rng.below(t.size());
            ResolventFn r(t, root);
            CHECK(f_T(r, 0.0) == doctest::Approx(t.degree(root)).epsilon(1e-10));
        }
    }
}

TEST_CASE("f_T derivatives at zero") {
    Rng rng(13);
    SUBCASE("first derivative counts the non-root vertices") {
        for (int it = 0; it < 60; ++it) {
            auto t = st::random_tree(rng, 2 + rng.below(16));
            ResolventFn r(t, rng.below(t.size()));
            CHECK(f_T_derivative_at_zero(r, 1) ==
                  doctest::Approx(t.size() - 1).epsilon(1e-9));
        }
    }
    SUBCASE("star second derivative: 2m from f = m/(1-lambda)") {
        for (int m : {1, 3, 6}) {
            auto star = generate(FamilySpec::star(m + 1));
            ResolventFn r(star, 0);
            CHECK(f_T_derivative_at_zero(r, 2) == doctest::Approx(2.0 * m).epsilon(1e-9));
        }
    }
    SUBCASE("finite difference confirms the first derivative") {
        for (int it = 0; it < 20; ++it) {
            auto t = st::random_tree(rng, 3 + rng.below(12));
            ResolventFn r(t, rng.below(t.size()));
            double exact = f_T_derivative_at_zero(r, 1);
            double fd = finite_difference([&](double x) { return f_T(r, x); }, 0.0, 1);
            CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("schur matrix") {
    SUBCASE("bare path: S(lambda) = L(P_k) - lambda I") {
        auto p6 = generate(FamilySpec::path(6));
        auto d = decompose_along_path(p6, {0, 1, 2, 3, 4, 5});
        auto s = schur_matrix(d, 0.25);
        CHECK(s.diag[0] == doctest::Approx(0.75));
        for (int i = 1; i < 5; ++i) CHECK(s.diag[i] == doctest::Approx(1.75));
        CHECK(s.diag[5] == doctest::Approx(0.75));
    }

    SUBCASE("at lambda = 0 the rows balance like a path Laplacian") {
        Rng rng(17);
        for (int it = 0; it < 40; ++it) {
            auto t = st::random_tree(rng, 4 + rng.below(16));
            auto path = st::random_path(rng, t);
            auto d = decompose_along_path(t, path);
            auto s = schur_matrix(d, 0.0);
            const int k = d.k();
            for (int i = 0; i < k; ++i) {
                int offdiag = (i > 0 ? 1 : 0) + (i + 1 < k ? 1 : 0);
                CHECK(s.diag[i] == doctest::Approx(offdiag).epsilon(1e-9));
            }
        }
    }

    SUBCASE("eigenvalues of L(T) make S(lambda) singular") {
        Rng rng(19);
        for (int it = 0; it < 25; ++it) {
            auto t = st::random_tree(rng, 4 + rng.below(12));
            auto path = t.longest_path();
            auto d = decompose_along_path(t, path);
            auto spec = sym_eigen(laplacian(t));
            for (double lam : spec.values) {
                bool clear = true;
                for (int i = 0; i < d.k(); ++i)
                    clear = clear && ResolventFn::from_decomposition(d, i).clears(lam);
                if (!clear) continue;
                CHECK(schur_sigma_min(schur_matrix(d, lam)) < 1e-7);
            }
        }
    }
}

TEST_CASE("eigenvector reconstruction") {
    SUBCASE("P_3 at lambda = 1") {
        auto p3 = generate(FamilySpec::path(3));
        auto d = decompose_along_path(p3, {0, 1, 2});
        auto x = reconstruct_eigenvector(d, 1.0, {1.0, 0.0, -1.0});
        CHECK(x[0] == doctest::Approx(1.0));
        CHECK(x[1] == doctest::Approx(0.0));
        CHECK(x[2] == doctest::Approx(-1.0));
    }

    SUBCASE("matches the oracle eigenvector up to scale") {
        Rng rng(23);
        int tested = 0;
        for (int it = 0; it < 60 && tested < 30; ++it) {
            auto t = st::random_tree(rng, 5 + rng.below(20));
            auto path = st::random_path(rng, t);
            auto d = decompose_along_path(t, path);
            auto spec = sym_eigen(laplacian(t));
            int e = 1 + rng.below(t.size() - 1);
            double lam = spec.values[e];
            bool clear = true;
            for (int i = 0; i < d.k(); ++i)
                clear = clear && ResolventFn::from_decomposition(d, i).clears(lam);
            if (!clear) continue;
            // non-degenerate eigenvalue only (unique up to sign)
            bool isolated = true;
            for (int j = 0; j < t.size(); ++j)
                if (j != e && std::abs(spec.values[j] - lam) < 1e-7) isolated = false;
            if (!isolated) continue;
            std::vector<double> xp(d.k());
            for (int i = 0; i < d.k(); ++i) xp[i] = spec.vectors[e][d.path[i]];
            if (norm2(xp) < 1e-9) continue;
            auto full = reconstruct_eigenvector(d, lam, xp);
            double nf = norm2(full);
            double sgn = dot(full, spec.vectors[e]) >= 0 ? 1.0 : -1.0;
            for (int v = 0; v < t.size(); ++v)
                CHECK(full[v] / nf == doctest::Approx(sgn * spec.vectors[e][v]).epsilon(1e-7));
            ++tested;
        }
        CHECK(tested >= 10);
    }

    SUBCASE("kernel of S is one dimensional at eigenvalues") {
        Rng rng(29);
        for (int it = 0; it < 20; ++it) {
            auto t = st::random_tree(rng, 5 + rng.below(14));
            auto d = decompose_along_path(t, t.longest_path());
            auto spec = sym_eigen(laplacian(t));
            for (double lam : spec.values) {
                bool clear = true;
                for (int i = 0; i < d.k(); ++i)
                    clear = clear && ResolventFn::from_decomposition(d, i).clears(lam);
                if (!clear) continue;
                auto sm = sym_eigen(schur_matrix(d, lam).to_matrix());
                std::vector<double> mags;
                for (double v : sm.values) mags.push_back(std::abs(v));
                std::sort(mags.begin(), mags.end());
                if (mags.size() >= 2) CHECK(mags[1] > 1e-6);
            }
        }
    }

    SUBCASE("rejects vectors outside the kernel") {
        auto p4 = generate(FamilySpec::path(4));
        auto d = decompose_along_path(p4, {0, 1, 2, 3});
        CHECK_THROWS_AS(reconstruct_eigenvector(d, 0.5, {1.0, 1.0, 1.0, 1.0}), NotInKernel);
    }
}

TEST_CASE("resolvent bounds") {
    SUBCASE("equality for star blocks") {
        auto star = generate(FamilySpec::star(5));
        ResolventFn r(star, 0);
        for (double lam : {0.1, 0.5, 0.9}) {
            auto b = f_T_bounds(r, lam);
            double f = f_T(r, lam);
            CHECK(b.lower == doctest::Approx(f).epsilon(1e-12));
            CHECK(b.upper == doctest::Approx(f).epsilon(1e-12));
        }
    }

    SUBCASE("bounds bracket f on random blocks") {
        Rng rng(37);
        int samples = 0;
        while (samples < 1000) {
            auto t = st::random_tree(rng, 2 + rng.below(14));
            ResolventFn r(t, rng.below(t.size()));
            if (r.singleton()) continue;
            double lam = rng.unit() * 0.999 * r.block_lambda_min();
            if (lam <= 0.0) continue;
            auto b = f_T_bounds(r, lam);
            double f = f_T(r, lam);
            CHECK(b.lower <= f + 1e-9);
            CHECK(f <= b.upper + 1e-9);
            ++samples;
        }
    }

    SUBCASE("both bounds approach the degree as lambda -> 0") {
        auto t = generate(FamilySpec::caterpillar({2, 1, 3}));
        ResolventFn r(t, 0);
        auto b = f_T_bounds(r, 1e-9);
        CHECK(b.lower == doctest::Approx(r.root_degree()).epsilon(1e-6));
        CHECK(b.upper == doctest::Approx(r.root_degree()).epsilon(1e-6));
        CHECK_THROWS_AS(f_T_bounds(r, r.block_lambda_min() * 1.01), ShiftOutOfRange);
    }
}

TEST_CASE("perron bounds") {
    auto p2 = generate(FamilySpec::path(2));
    auto b2 = perron_bounds(p2, 0);
    CHECK(b2.lower == doctest::Approx(1.0));
    CHECK(b2.upper == doctest::Approx(1.0));
    CHECK(1.0 / lambda_min(reduced_laplacian(p2, 0)) == doctest::Approx(1.0));

    for (int n : {4, 7, 11}) {
        auto pn = generate(FamilySpec::path(n));
        CHECK(perron_bounds(pn, 0).upper == doctest::Approx(n * (n - 1) / 2.0));
    }

    SUBCASE("sandwich on all small trees, all roots") {
        for (int n = 2; n <= 6; ++n)
            enumerate_labeled_trees(n, [&](const Tree& t) {
                for (int v = 0; v < n; ++v) {
                    auto b = perron_bounds(t, v);
                    double perron = 1.0 / lambda_min(reduced_laplacian(t, v));
                    CHECK(b.lower <= perron + 1e-9);
                    CHECK(perron <= b.upper + 1e-9);
                }
            });
    }
}

TEST_CASE("g function") {
    SUBCASE("g(0) = 1") {
        Rng rng(43);
        int tested = 0;
        while (tested < 80) {
            auto t = st::random_tree(rng, 4 + rng.below(16));
            auto pend = t.pendant_vertices();
            int w = pend[rng.below(static_cast<int>(pend.size()))];
            int v = rng.below(t.size());
            if (v == w || t.has_edge(w, v)) continue;
            CHECK(g_ratio(t, w, v, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
            ++tested;
        }
    }

    SUBCASE("rose star leaf to glue: lambda^2 - r lambda + 1") {
        for (int r : {4, 6}) {
            auto rose = generate(FamilySpec::fiedler_rose(3, 4, r));
            const int glue = 2, leaf = 4;   // first star leaf
            for (double lam : {0.05, 0.2, 0.4})
                CHECK(g_ratio(rose, leaf, glue, lam) ==
                      doctest::Approx(lam * lam - r * lam + 1.0).epsilon(1e-10));
        }
    }

    SUBCASE("g(a(T)) x_w = x_v against the spectrum") {
        Rng rng(47);
        int tested = 0;
        while (tested < 40) {
            auto t = st::random_tree(rng, 5 + rng.below(14));
            auto spec = sym_eigen(laplacian(t));
            if (t.size() > 2 && spec.values[2] - spec.values[1] < 1e-6) continue;
            double a = spec.values[1];
            auto pend = t.pendant_vertices();
            int w = pend[rng.below(static_cast<int>(pend.size()))];
            int v = rng.below(t.size());
            if (v == w || t.has_edge(w, v)) continue;
            double g;
            try {
                g = g_ratio(t, w, v, a);
            } catch (const NearSingularShift&) {
                continue;
            }
            const auto& x = spec.vectors[1];
            CHECK(std::abs(g * x[w] - x[v]) <= 1e-8);
            ++tested;
        }
    }

    SUBCASE("geometry guards") {
        auto p4 = generate(FamilySpec::path(4));
        CHECK_THROWS_AS(g_ratio(p4, 1, 3, 0.0), BadGeometry);   // w not pendant
        CHECK_THROWS_AS(g_ratio(p4, 0, 1, 0.0), BadGeometry);   // adjacent
    }
}

TEST_CASE("g derivative at zero") {
    SUBCASE("bare path k=3 gives -3") {
        auto p3 = generate(FamilySpec::path(3));
        auto d = decompose_along_path(p3, {0, 1, 2});
        CHECK(g_derivative_at_zero(d) == doctest::Approx(-3.0));
    }

    SUBCASE("bare path with k = l+1 vertices gives -l(l+1)/2") {
        for (int l : {2, 3, 5, 8}) {
            auto p = generate(FamilySpec::path(l + 1));
            std::vector<int> path(l + 1);
            std::iota(path.begin(), path.end(), 0);
            auto d = decompose_along_path(p, path);
            CHECK(g_derivative_at_zero(d) == doctest::Approx(-l * (l + 1) / 2.0));
        }
    }

    SUBCASE("matches the finite difference of g_ratio") {
        Rng rng(53);
        int tested = 0;
        while (tested < 25) {
            auto t = st::random_tree(rng, 5 + rng.below(12));
            auto pend = t.pendant_vertices();
            int w = pend[rng.below(static_cast<int>(pend.size()))];
            int v = rng.below(t.size());
            if (v == w || t.has_edge(w, v)) continue;
            auto hd = st::hat_decomposition(t, w, v);
            double closed = g_derivative_at_zero(hd);
            double fd = finite_difference([&](double x) { return g_ratio(t, w, v, x); }, 0.0, 1);
            CHECK(std::abs(fd - closed) <= 1e-4 * std::max(1.0, std::abs(closed)));
            ++tested;
        }
    }
}

TEST_CASE("entry ratios at distance one and two") {
    SUBCASE("s_{T_1} s_{T_2} = 1 at eigenvalues and the ratio matches") {
        Rng rng(59);
        int tested = 0;
        while (tested < 40) {
            auto t = st::random_tree(rng, 4 + rng.below(12));
            auto spec = sym_eigen(laplacian(t));
            int u = rng.below(t.size());
            if (t.neighbors(u).empty()) continue;
            int v = t.neighbors(u)[rng.below(t.degree(u))];
            auto d = decompose_along_path(t, {u, v});
            int e = 1 + rng.below(t.size() - 1);
            double lam = spec.values[e];
            bool isolated = true;
            for (int j = 0; j < t.size(); ++j)
                if (j != e && std::abs(spec.values[j] - lam) < 1e-7) isolated = false;
            if (!isolated) continue;
            try {
                auto s = schur_matrix(d, lam);
                CHECK(s.diag[0] * s.diag[1] == doctest::Approx(1.0).epsilon(1e-8));
                double ratio = ratio_adjacent(d, lam);
                const auto& x = spec.vectors[e];
                if (std::abs(x[u]) < 1e-9) continue;
                CHECK(ratio == doctest::Approx(x[v] / x[u]).epsilon(1e-8));
                ++tested;
            } catch (const NearSingularShift&) {
                continue;
            }
        }
    }

    SUBCASE("P_3 at lambda = 1: the 0/0 quotient falls back to the kernel") {
        auto p3 = generate(FamilySpec::path(3));
        auto d = decompose_along_path(p3, {0, 1, 2});
        CHECK(ratio_distance_two(d, 1.0) == doctest::Approx(-1.0).epsilon(1e-10));
    }

    SUBCASE("distance-two ratio matches the spectrum") {
        Rng rng(61);
        int tested = 0;
        while (tested < 30) {
            auto t = st::random_tree(rng, 5 + rng.below(12));
            auto spec = sym_eigen(laplacian(t));
            auto path = st::random_path(rng, t);
            if (path.size() < 3) continue;
            std::vector<int> p3(path.begin(), path.begin() + 3);
            auto d = decompose_along_path(t, p3);
            double lam = spec.values[1];
            if (t.size() > 2 && spec.values[2] - lam < 1e-6) continue;
            try {
                double ratio = ratio_distance_two(d, lam);
                const auto& x = spec.vectors[1];
                if (std::abs(x[p3[0]]) < 1e-9) continue;
                CHECK(ratio == doctest::Approx(x[p3[2]] / x[p3[0]]).epsilon(1e-7));
                ++tested;
            } catch (const NearSingularShift&) {
                continue;
            }
        }
    }
}

TEST_CASE("resolvent function properties") {
    Rng rng(67);

    SUBCASE("additivity over a root split") {
        for (int it = 0; it < 40; ++it) {
            auto t = st::random_tree(rng, 4 + rng.below(14));
            int root = rng.below(t.size());
            ResolventFn whole(t, root);
            double lam = 0.9 * whole.block_lambda_min() * rng.unit();
            // branches of the root
            auto d = decompose_along_path(t, {root});
            double sum = 0.0;
            for (int nb : t.neighbors(root)) {
                // branch through nb
                std::vector<int> branch{root};
                std::vector<int> stack{nb};
                std::vector<char> seen(t.size(), 0);
                seen[root] = seen[nb] = 1;
                branch.push_back(nb);
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    for (int w : t.neighbors(u))
                        if (!seen[w]) {
                            seen[w] = 1;
                            branch.push_back(w);
                            stack.push_back(w);
                        }
                }
                sum += f_T(ResolventFn(t, branch, root), lam);
            }
            CHECK(f_T(whole, lam) == doctest::Approx(sum).epsilon(1e-9));
        }
    }

    SUBCASE("strict monotonicity of f and f' on (0, lambda_min)") {
        for (int it = 0; it < 10; ++it) {
            auto t = st::random_tree(rng, 3 + rng.below(10));
            ResolventFn r(t, rng.below(t.size()));
            if (r.singleton()) continue;
            const double top = r.block_lambda_min() * 0.98;
            double prev_f = f_T(r, 0.0), prev_fp = f_prime(r, 0.0);
            for (int g = 1; g <= 100; ++g) {
                double lam = top * g / 100.0;
                double f = f_T(r, lam), fp = f_prime(r, lam);
                CHECK(f > prev_f - 1e-12);
                CHECK(fp > prev_fp - 1e-12);
                prev_f = f;
                prev_fp = fp;
            }
        }
    }

    SUBCASE("pruning a pendant strictly lowers f and raises lambda_min") {
        int tested = 0;
        while (tested < 30) {
            auto t = st::random_tree(rng, 4 + rng.below(12));
            int root = rng.below(t.size());
            auto pend = t.pendant_vertices();
            int drop = -1;
            for (int p : pend)
                if (p != root) drop = p;
            if (drop < 0) continue;
            std::vector<int> rest;
            for (int v = 0; v < t.size(); ++v)
                if (v != drop) rest.push_back(v);
            ResolventFn big(t, root);
            ResolventFn small(t, rest, root);
            CHECK(small.block_lambda_min() >= big.block_lambda_min() - 1e-12);
            const double top = big.block_lambda_min() * 0.95;
            for (int g = 1; g <= 20; ++g) {
                double lam = top * g / 20.0;
                CHECK(f_T(ResolventFn(t, rest, root), lam) < f_T(big, lam) + 1e-12);
            }
            ++tested;
        }
    }

    SUBCASE("g is strictly decreasing on [0, lambda_min(L_{w,v}(hatT)))") {
        int tested = 0;
        while (tested < 15) {
            auto t = st::random_tree(rng, 5 + rng.below(10));
            auto pend = t.pendant_vertices();
            int w = pend[rng.below(static_cast<int>(pend.size()))];
            int v = rng.below(t.size());
            if (v == w || t.has_edge(w, v)) continue;
            auto hd = st::hat_decomposition(t, w, v);
            const double top =
                0.98 * lambda_min(doubly_reduced_laplacian(hd.host, hd.path.front(),
                                                           hd.path.back()));
            double prev = g_ratio(t, w, v, 0.0);
            for (int g = 1; g <= 100; ++g) {
                double cur = g_ratio(t, w, v, top * g / 100.0);
                CHECK(cur < prev + 1e-12);
                prev = cur;
            }
            ++tested;
        }
    }

    SUBCASE("two pendants, one anchor: g_w x_w = g_w' x_w'") {
        int tested = 0;
        while (tested < 25) {
            auto t = st::random_tree(rng, 6 + rng.below(12));
            auto spec = sym_eigen(laplacian(t));
            if (spec.values[2] - spec.values[1] < 1e-6) continue;
            double a = spec.values[1];
            auto pend = t.pendant_vertices();
            if (pend.size() < 2) continue;
            int w = pend[0], w2 = pend[1];
            int v = -1;
            for (int c = 0; c < t.size(); ++c)
                if (c != w && c != w2 && !t.has_edge(w, c) && !t.has_edge(w2, c)) v = c;
            if (v < 0) continue;
            try {
                double gw = g_ratio(t, w, v, a);
                double gw2 = g_ratio(t, w2, v, a);
                const auto& x = spec.vectors[1];
                CHECK(std::abs(gw * x[w] - gw2 * x[w2]) <= 1e-8);
                ++tested;
            } catch (const NearSingularShift&) {
                continue;
            }
        }
    }
}
