#include "spectree/schur.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace spectree {

namespace {

// induced reduced Laplacian of the subtree, grounded at root; diagonal
// entries are degrees within the subtree
SymMatrix subtree_block(const Tree& host, const std::vector<int>& subtree, int root) {
    std::vector<int> verts;
    verts.reserve(subtree.size() - 1);
    for (int v : subtree)
        if (v != root) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    std::vector<int> pos(host.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);
    const int m = static_cast<int>(verts.size());
    SymMatrix out(m);
    std::vector<char> inside(host.size(), 0);
    for (int v : subtree) inside[v] = 1;
    for (int i = 0; i < m; ++i) {
        int degree_in_subtree = 0;
        for (int w : host.neighbors(verts[i]))
            if (inside[w]) ++degree_in_subtree;
        out.set(i, i, static_cast<double>(degree_in_subtree));
    }
    for (auto [u, v] : host.edges())
        if (pos[u] >= 0 && pos[v] >= 0) out.set(pos[u], pos[v], -1.0);
    return out;
}

} // namespace

ResolventFn::ResolventFn(const Tree& host, const std::vector<int>& subtree, int root) {
    if (subtree.empty()) throw BadGeometry("empty subtree");
    if (std::find(subtree.begin(), subtree.end(), root) == subtree.end())
        throw BadGeometry("root must belong to the subtree");
    size_ = static_cast<int>(subtree.size());
    std::vector<char> inside(host.size(), 0);
    for (int v : subtree) inside[v] = 1;
    for (int w : host.neighbors(root))
        if (inside[w]) ++root_degree_;
    if (size_ == 1) return;
    block_ = subtree_block(host, subtree, root);
    std::vector<int> verts;
    for (int v : subtree)
        if (v != root) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    f_.assign(verts.size(), 0.0);
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (host.has_edge(root, verts[i])) f_[i] = -1.0;
    spectrum_ = sym_eigen(block_).values;
}

ResolventFn::ResolventFn(const Tree& rooted_tree, int root) {
    std::vector<int> all(rooted_tree.size());
    std::iota(all.begin(), all.end(), 0);
    *this = ResolventFn(rooted_tree, all, root);
}

ResolventFn ResolventFn::from_decomposition(const PathDecomposition& d, int i) {
    return ResolventFn(d.host, d.subtrees[i], d.path[i]);
}

double ResolventFn::block_lambda_min() const { return singleton() ? kInf : spectrum_.front(); }

double ResolventFn::block_norm() const { return singleton() ? 0.0 : spectrum_.back(); }

double ResolventFn::inverse_norm() const {
    return singleton() ? 0.0 : 1.0 / spectrum_.front();
}

bool ResolventFn::clears(double lambda) const {
    if (singleton()) return true;
    return clears_margin(lambda, spectrum_, spectrum_.back());
}

double f_T(const ResolventFn& r, double lambda) {
    if (r.singleton()) return 0.0;
    if (!r.clears(lambda)) throw NearSingularShift("f_T: shift inside block margin");
    auto y = solve_shifted(r.block(), lambda, r.f_vector());
    return dot(r.f_vector(), y);
}

double f_T_derivative_at_zero(const ResolventFn& r, int order) {
    if (order < 1) throw Error("derivative order must be >= 1");
    if (r.singleton()) return 0.0;
    // k! f^T L^{-(k+1)} f by k+1 successive solves; powers are never formed
    std::vector<double> u = r.f_vector();
    for (int s = 0; s < order + 1; ++s) u = solve_shifted(r.block(), 0.0, u);
    double fact = 1.0;
    for (int s = 2; s <= order; ++s) fact *= s;
    return fact * dot(r.f_vector(), u);
}

Interval f_T_bounds(const ResolventFn& r, double lambda) {
    if (r.singleton()) {
        if (lambda <= 0.0) throw ShiftOutOfRange("f_T_bounds needs 0 < lambda");
        return {0.0, 0.0};
    }
    if (lambda <= 0.0 || lambda >= r.block_lambda_min())
        throw ShiftOutOfRange("f_T_bounds needs 0 < lambda < lambda_min of the block");
    const double deg = r.root_degree();
    const double vol = r.subtree_size() - 1;
    const double lo = deg + lambda * vol / (1.0 - lambda / r.block_norm());
    const double denom = 1.0 - r.inverse_norm() * lambda;
    const double hi = denom > 0.0 ? deg + lambda * vol / denom : kInf;
    return {lo, hi};
}

Interval perron_bounds(const Tree& t, int v) {
    if (t.size() < 2) throw BadVertex("perron_bounds needs n >= 2");
    if (v < 0 || v >= t.size()) throw BadVertex("perron_bounds: bad vertex");
    double best_lo = 0.0, best_hi = 0.0;
    for (int w : t.pendant_vertices()) {
        if (w == v) continue;
        auto path = t.path_between(v, w);
        auto d = decompose_along_path(t, path);
        double lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i < path.size(); ++i) {
            const double size = static_cast<double>(d.subtrees[i].size());
            lo += static_cast<double>(i) * static_cast<double>(i) * size;
            hi += static_cast<double>(i) * size;
        }
        best_lo = std::max(best_lo, std::sqrt(lo));
        best_hi = std::max(best_hi, hi);
    }
    return {best_lo, best_hi};
}

SymMatrix SchurTridiagonal::to_matrix() const {
    const int k = size();
    SymMatrix m(k);
    for (int i = 0; i < k; ++i) {
        m.set(i, i, diag[i]);
        if (i + 1 < k) m.set(i, i + 1, -1.0);
    }
    return m;
}

std::vector<double> SchurTridiagonal::apply(const std::vector<double>& x) const {
    const int k = size();
    std::vector<double> y(k, 0.0);
    for (int i = 0; i < k; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s -= x[i - 1];
        if (i + 1 < k) s -= x[i + 1];
        y[i] = s;
    }
    return y;
}

SchurTridiagonal schur_matrix(const PathDecomposition& d, double lambda) {
    SchurTridiagonal s;
    s.lambda = lambda;
    s.diag.resize(d.k());
    for (int i = 0; i < d.k(); ++i) {
        ResolventFn r = ResolventFn::from_decomposition(d, i);
        if (!r.clears(lambda))
            throw NearSingularShift("schur_matrix: shift inside margin of block " +
                                    std::to_string(i));
        s.diag[i] = d.host.degree(d.path[i]) - lambda - f_T(r, lambda);
    }
    return s;
}

std::vector<double> schur_kernel_vector(const SchurTridiagonal& s) {
    auto spec = sym_eigen(s.to_matrix());
    std::size_t best = 0;
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (std::abs(spec.values[i]) < std::abs(spec.values[best])) best = i;
    return spec.vectors[best];
}

double schur_sigma_min(const SchurTridiagonal& s) {
    auto spec = sym_eigen(s.to_matrix());
    double m = kInf;
    for (double v : spec.values) m = std::min(m, std::abs(v));
    return m;
}

std::vector<double> reconstruct_eigenvector(const PathDecomposition& d, double lambda,
                                            const std::vector<double>& x_path) {
    const int k = d.k();
    if (static_cast<int>(x_path.size()) != k) throw Error("reconstruct: path length mismatch");
    auto s = schur_matrix(d, lambda);
    const double xp_norm = norm2(x_path);
    if (xp_norm == 0.0 || norm2(s.apply(x_path)) > 1e-7 * xp_norm)
        throw NotInKernel("path vector is not in ker S(lambda)");
    if (std::abs(x_path.front()) <= 1e-12 * xp_norm || std::abs(x_path.back()) <= 1e-12 * xp_norm)
        throw NotInKernel("kernel element with vanishing endpoint entry");

    std::vector<double> full(d.host.size(), 0.0);
    for (int i = 0; i < k; ++i) full[d.path[i]] = x_path[i];
    for (int i = 0; i < k; ++i) {
        if (d.subtrees[i].size() < 2) continue;
        ResolventFn r = ResolventFn::from_decomposition(d, i);
        std::vector<double> rhs = r.f_vector();
        for (double& v : rhs) v *= x_path[i];
        auto y = solve_shifted(r.block(), lambda, rhs);
        std::vector<int> verts;
        for (int v : d.subtrees[i])
            if (v != d.path[i]) verts.push_back(v);
        std::sort(verts.begin(), verts.end());
        for (std::size_t j = 0; j < verts.size(); ++j) full[verts[j]] = -y[j];
    }

    auto L = laplacian(d.host);
    auto res = L.apply(full);
    for (int i = 0; i < d.host.size(); ++i) res[i] -= lambda * full[i];
    if (norm2(res) > 1e-7 * norm2(full))
        throw NotInKernel("reconstructed vector fails the eigen-equation");
    return full;
}

double ratio_adjacent(const PathDecomposition& d, double lambda) {
    if (d.k() != 2) throw BadGeometry("ratio_adjacent needs a k=2 decomposition");
    return schur_matrix(d, lambda).diag[0];
}

double ratio_distance_two(const PathDecomposition& d, double lambda) {
    if (d.k() != 3) throw BadGeometry("ratio_distance_two needs a k=3 decomposition");
    auto s = schur_matrix(d, lambda);
    // at an eigenvalue both s-values vanish together; fall back to the kernel
    if (std::abs(s.diag[0]) < 1e-8 || std::abs(s.diag[2]) < 1e-8) {
        auto x = schur_kernel_vector(s);
        if (std::abs(x[0]) < 1e-12) throw NotInKernel("kernel element vanishes at x_1");
        return x[2] / x[0];
    }
    return s.diag[0] / s.diag[2];
}

namespace {

struct HatSetup {
    SymMatrix matrix;          // L_{w,v}(hatT) (doubly reduced)
    int idx_u2 = -1;           // position of the path neighbor of w
    int idx_um1 = -1;          // position of the path neighbor of v
    std::vector<double> spectrum;
};

HatSetup build_hat(const Tree& t, int w, int v) {
    if (w < 0 || w >= t.size() || v < 0 || v >= t.size()) throw BadVertex("g_ratio: bad vertex");
    if (t.degree(w) != 1) throw BadGeometry("g_ratio: w must be a pendant vertex");
    if (w == v || t.has_edge(w, v)) throw BadGeometry("g_ratio needs d(w, v) >= 2");
    auto path = t.path_between(w, v);
    const int m = static_cast<int>(path.size());
    auto d = decompose_along_path(t, path);
    // hatT = path + subtrees at all vertices except v
    std::vector<char> inhat(t.size(), 0);
    for (int i = 0; i + 1 < m; ++i)
        for (int u : d.subtrees[i]) inhat[u] = 1;
    inhat[v] = 1;
    std::vector<int> verts;
    for (int u = 0; u < t.size(); ++u)
        if (inhat[u] && u != w && u != v) verts.push_back(u);
    std::vector<int> pos(t.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = static_cast<int>(i);

    HatSetup h;
    h.matrix = SymMatrix(static_cast<int>(verts.size()));
    // every retained hatT vertex keeps its host degree (only v loses edges)
    for (std::size_t i = 0; i < verts.size(); ++i)
        h.matrix.set(static_cast<int>(i), static_cast<int>(i),
                     static_cast<double>(t.degree(verts[i])));
    for (auto [p, q] : t.edges())
        if (pos[p] >= 0 && pos[q] >= 0) h.matrix.set(pos[p], pos[q], -1.0);
    h.idx_u2 = pos[path[1]];
    h.idx_um1 = pos[path[m - 2]];
    h.spectrum = sym_eigen(h.matrix).values;
    return h;
}

} // namespace

double g_ratio(const Tree& t, int w, int v, double lambda) {
    auto h = build_hat(t, w, v);
    if (!clears_margin(lambda, h.spectrum, h.spectrum.empty() ? 1.0 : h.spectrum.back()))
        throw NearSingularShift("g_ratio: shift inside margin of L_{w,v}(hatT)");
    std::vector<double> e1(h.matrix.dim(), 0.0);
    e1[h.idx_u2] = 1.0;
    auto y = solve_shifted(h.matrix, lambda, e1);
    const double denom = y[h.idx_um1];
    if (std::abs(denom) < 1e-14 * (1.0 + norm2(y)))
        throw NearSingularShift("g_ratio: degenerate denominator");
    return (1.0 - lambda - y[h.idx_u2]) / denom;
}

double g_derivative_at_zero(const PathDecomposition& hat) {
    const int k = hat.k();
    if (k < 3) throw BadGeometry("g_derivative_at_zero needs k >= 3");
    if (hat.subtrees.front().size() != 1 || hat.host.degree(hat.path.front()) != 1)
        throw BadGeometry("g_derivative_at_zero: v_1 must be pendant");
    if (hat.subtrees.back().size() != 1)
        throw BadGeometry("g_derivative_at_zero: T_k must be the bare anchor");
    // each interior block is weighted by its path distance from the anchor
    // v_k (the resolvent row-sum expansion; finite differences confirm this
    // orientation on asymmetric trees)
    double sum = 0.0;
    for (int i = 1; i <= k - 2; ++i)
        sum += static_cast<double>(k - 1 - i) * static_cast<double>(hat.subtrees[i].size());
    return 1.0 - k - sum;
}

double pendant_anchor_ratio(const Tree& t, int w, int v, double lambda) {
    if (w == v) return 1.0;
    if (t.degree(w) != 1) throw BadGeometry("pendant_anchor_ratio: w must be pendant");
    if (t.has_edge(w, v)) return 1.0 - lambda;
    return g_ratio(t, w, v, lambda);
}

} // namespace spectree
