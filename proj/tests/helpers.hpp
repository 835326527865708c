#pragma once

#include <cmath>
#include <vector>

#include "spectree/linalg.hpp"
#include "spectree/rng.hpp"
#include "spectree/tree.hpp"

namespace spectree::testing {

// largest eigen-residual ||A v - lambda v|| over all pairs
inline double spectrum_residual(const SymMatrix& a, const Spectrum& s) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        auto av = a.apply(s.vectors[i]);
        for (std::size_t j = 0; j < av.size(); ++j) av[j] -= s.values[i] * s.vectors[i][j];
        worst = std::max(worst, norm2(av));
    }
    return worst;
}

// largest |<v_i, v_j> - delta_ij|
inline double gram_deviation(const Spectrum& s) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.vectors.size(); ++i)
        for (std::size_t j = i; j < s.vectors.size(); ++j) {
            double g = dot(s.vectors[i], s.vectors[j]) - (i == j ? 1.0 : 0.0);
            worst = std::max(worst, std::abs(g));
        }
    return worst;
}

inline bool ascending(const std::vector<double>& v) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] > v[i + 1]) return false;
    return true;
}

inline Tree random_tree(Rng& rng, int n) {
    if (n <= 2) return pruefer_decode(n, {});
    std::vector<int> seq(n - 2);
    for (int& s : seq) s = rng.below(n);
    return pruefer_decode(n, seq);
}

inline std::vector<int> random_path(Rng& rng, const Tree& t) {
    int u = rng.below(t.size());
    int v = rng.below(t.size());
    while (v == u) v = rng.below(t.size());
    return t.path_between(u, v);
}

// hatT of the pendant configuration w -> v (the branch at v containing w),
// rebuilt as a standalone tree and decomposed along the w..v path. Needs
// d(w, v) >= 2 and w pendant.
inline PathDecomposition hat_decomposition(const Tree& t, int w, int v) {
    auto path = t.path_between(w, v);
    auto d = decompose_along_path(t, path);
    std::vector<int> verts;
    for (int i = 0; i + 1 < d.k(); ++i)
        verts.insert(verts.end(), d.subtrees[i].begin(), d.subtrees[i].end());
    verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    std::vector<int> pos(t.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [a, b] : t.edges())
        if (pos[a] >= 0 && pos[b] >= 0) edges.emplace_back(pos[a], pos[b]);
    auto hat = Tree::build(static_cast<int>(verts.size()), edges);
    std::vector<int> hpath;
    hpath.reserve(path.size());
    for (int u : path) hpath.push_back(pos[u]);
    return decompose_along_path(hat, hpath);
}

} // namespace spectree::testing
