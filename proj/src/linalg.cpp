#include "spectree/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spectree {

SymMatrix SymMatrix::identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

void SymMatrix::set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
}

void SymMatrix::add(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] += v;
    if (i != j) a_[static_cast<std::size_t>(j) * n_ + i] += v;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

std::vector<double> SymMatrix::apply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        const double* row = a_.data() + static_cast<std::size_t>(i) * n_;
        for (int j = 0; j < n_; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

SymMatrix laplacian(const Tree& t) {
    SymMatrix m(t.size());
    for (auto [u, v] : t.edges()) {
        m.add(u, u, 1.0);
        m.add(v, v, 1.0);
        m.set(u, v, -1.0);
    }
    return m;
}

namespace {

// rows/cols of the reduced matrix are the surviving labels in ascending order
std::vector<int> surviving(int n, int v, int w = -1) {
    std::vector<int> keep;
    keep.reserve(n);
    for (int u = 0; u < n; ++u)
        if (u != v && u != w) keep.push_back(u);
    return keep;
}

SymMatrix reduce(const Tree& t, const std::vector<int>& keep) {
    const int m = static_cast<int>(keep.size());
    std::vector<int> pos(t.size(), -1);
    for (int i = 0; i < m; ++i) pos[keep[i]] = i;
    SymMatrix out(m);
    for (int i = 0; i < m; ++i) out.set(i, i, static_cast<double>(t.degree(keep[i])));
    for (auto [u, v] : t.edges())
        if (pos[u] >= 0 && pos[v] >= 0) out.set(pos[u], pos[v], -1.0);
    return out;
}

} // namespace

SymMatrix reduced_laplacian(const Tree& t, int v) {
    if (v < 0 || v >= t.size()) throw BadVertex("reduced_laplacian: bad vertex");
    if (t.size() < 2) throw BadVertex("reduced_laplacian needs n >= 2");
    return reduce(t, surviving(t.size(), v));
}

SymMatrix doubly_reduced_laplacian(const Tree& t, int v, int w) {
    if (v == w) throw BadVertex("doubly_reduced: vertices must differ");
    if (v < 0 || v >= t.size() || w < 0 || w >= t.size())
        throw BadVertex("doubly_reduced: bad vertex");
    return reduce(t, surviving(t.size(), v, w));
}

SymMatrix reduced_inverse_closed_form(const Tree& t, int v) {
    auto keep = surviving(t.size(), v);
    const int m = static_cast<int>(keep.size());
    std::vector<std::vector<int>> dist(t.size());
    for (int u = 0; u < t.size(); ++u) dist[u] = t.bfs_distances(u);
    SymMatrix out(m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            // shared edge count of the two root paths
            int shared = (dist[keep[i]][v] + dist[keep[j]][v] - dist[keep[i]][keep[j]]) / 2;
            out.set(i, j, static_cast<double>(shared));
        }
    return out;
}

namespace {

// Gaussian elimination with Bunch-Kaufman symmetric pivoting, run on an
// augmented copy per solve. Column interchanges are mirrored so the trailing
// submatrix stays symmetric; the solution is un-permuted at the end.
std::vector<double> bunch_kaufman_solve(const SymMatrix& a, double lambda,
                                        const std::vector<double>& rhs) {
    const int n = a.dim();
    const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
    std::vector<double> w(a.data());
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i) * n + i] -= lambda;
    std::vector<double> b(rhs);
    std::vector<int> colperm(n);
    std::iota(colperm.begin(), colperm.end(), 0);

    double scale = 0.0;
    for (double x : w) scale = std::max(scale, std::abs(x));
    scale = std::max(1.0, scale);
    const double tiny = 1e-12 * scale;

    auto at = [&](int i, int j) -> double& { return w[static_cast<std::size_t>(i) * n + j]; };
    auto swap_rc = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < n; ++c) std::swap(at(i, c), at(j, c));
        for (int r = 0; r < n; ++r) std::swap(at(r, i), at(r, j));
        std::swap(b[i], b[j]);
        std::swap(colperm[i], colperm[j]);
    };

    std::vector<int> block(n, 1);   // 1 = 1x1 pivot row, 2/0 = first/second row of 2x2
    int k = 0;
    while (k < n) {
        double absakk = std::abs(at(k, k));
        int imax = k;
        double colmax = 0.0;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(at(i, k)) > colmax) {
                colmax = std::abs(at(i, k));
                imax = i;
            }
        int kstep = 1;
        if (std::max(absakk, colmax) < tiny) throw NearSingularShift("pivot collapsed");
        if (absakk >= alpha * colmax) {
            // 1x1, no interchange
        } else {
            double rowmax = 0.0;
            for (int j = k; j < n; ++j)
                if (j != imax) rowmax = std::max(rowmax, std::abs(at(imax, j)));
            if (absakk * rowmax >= alpha * colmax * colmax) {
                // 1x1, no interchange
            } else if (std::abs(at(imax, imax)) >= alpha * rowmax) {
                swap_rc(k, imax);
            } else {
                swap_rc(k + 1, imax);
                kstep = 2;
            }
        }
        if (kstep == 1) {
            double d = at(k, k);
            if (std::abs(d) < tiny) throw NearSingularShift("pivot collapsed");
            for (int i = k + 1; i < n; ++i) {
                double m0 = at(i, k) / d;
                if (m0 == 0.0) continue;
                for (int j = k; j < n; ++j) at(i, j) -= m0 * at(k, j);
                b[i] -= m0 * b[k];
            }
            block[k] = 1;
            k += 1;
        } else {
            double a11 = at(k, k), a21 = at(k + 1, k), a22 = at(k + 1, k + 1);
            double det = a11 * a22 - a21 * a21;
            if (std::abs(det) < tiny * tiny) throw NearSingularShift("2x2 pivot collapsed");
            for (int i = k + 2; i < n; ++i) {
                double c1 = at(i, k), c2 = at(i, k + 1);
                double m1 = (a22 * c1 - a21 * c2) / det;
                double m2 = (a11 * c2 - a21 * c1) / det;
                if (m1 == 0.0 && m2 == 0.0) continue;
                for (int j = k; j < n; ++j) at(i, j) -= m1 * at(k, j) + m2 * at(k + 1, j);
                b[i] -= m1 * b[k] + m2 * b[k + 1];
            }
            block[k] = 2;
            block[k + 1] = 0;
            k += 2;
        }
    }

    // back substitution on the (block) upper triangular result
    std::vector<double> x(n, 0.0);
    int i = n - 1;
    while (i >= 0) {
        if (block[i] == 1) {
            double s = b[i];
            for (int j = i + 1; j < n; ++j) s -= at(i, j) * x[j];
            x[i] = s / at(i, i);
            --i;
        } else {
            // rows i-1, i form a 2x2 block
            int p = i - 1;
            double s1 = b[p], s2 = b[i];
            for (int j = i + 1; j < n; ++j) {
                s1 -= at(p, j) * x[j];
                s2 -= at(i, j) * x[j];
            }
            double a11 = at(p, p), a12 = at(p, i), a21 = at(i, p), a22 = at(i, i);
            double det = a11 * a22 - a12 * a21;
            x[p] = (a22 * s1 - a12 * s2) / det;
            x[i] = (a11 * s2 - a21 * s1) / det;
            i -= 2;
        }
    }

    std::vector<double> out(n, 0.0);
    for (int c = 0; c < n; ++c) out[colperm[c]] = x[c];
    return out;
}

} // namespace

std::vector<double> solve_shifted(const SymMatrix& a, double lambda,
                                  const std::vector<double>& rhs) {
    if (a.dim() != static_cast<int>(rhs.size())) throw Error("solve_shifted: size mismatch");
    if (a.dim() == 0) return {};
    auto x = bunch_kaufman_solve(a, lambda, rhs);
    auto res = a.apply(x);
    for (int i = 0; i < a.dim(); ++i) res[i] -= lambda * x[i] + rhs[i];
    if (norm2(res) > 1e-9 * (1.0 + norm2(rhs)))
        throw NearSingularShift("shifted solve residual too large");
    return x;
}

Spectrum sym_eigen(const SymMatrix& a) { return sym_eigen(a, JacobiOptions{}); }

Spectrum sym_eigen(const SymMatrix& a, const JacobiOptions& opt) {
    const int n = a.dim();
    if (n < 1) throw Error("sym_eigen needs dim >= 1");
    std::vector<double> m(a.data());
    std::vector<double> vecs(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) vecs[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double fro = a.frobenius_norm();
    const double thresh = opt.tol_factor * fro;
    const double skip = thresh > 0.0 ? 1e-3 * thresh / n : 0.0;

    bool use_par = (opt.threads != 1) && n >= 96;
#ifndef _OPENMP
    use_par = false;
#endif
#ifdef _OPENMP
    const int nthreads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#endif

    auto off_norm = [&]() {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double v = m[static_cast<std::size_t>(p) * n + q];
                s += 2.0 * v * v;
            }
        return std::sqrt(s);
    };

    bool converged = n == 1 || fro == 0.0;
    for (int sweep = 0; sweep < opt.max_sweeps && !converged; ++sweep) {
        if (off_norm() <= thresh) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m[static_cast<std::size_t>(p) * n + q];
                if (std::abs(apq) <= skip) continue;
                const double app = m[static_cast<std::size_t>(p) * n + p];
                const double aqq = m[static_cast<std::size_t>(q) * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // element-wise updates: identical arithmetic on every path
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (use_par) num_threads(nthreads)
#endif
                for (int j = 0; j < n; ++j) {
                    if (j == p || j == q) continue;
                    const double ajp = m[static_cast<std::size_t>(j) * n + p];
                    const double ajq = m[static_cast<std::size_t>(j) * n + q];
                    const double np_ = c * ajp - s * ajq;
                    const double nq_ = s * ajp + c * ajq;
                    m[static_cast<std::size_t>(j) * n + p] = np_;
                    m[static_cast<std::size_t>(p) * n + j] = np_;
                    m[static_cast<std::size_t>(j) * n + q] = nq_;
                    m[static_cast<std::size_t>(q) * n + j] = nq_;
                }
                m[static_cast<std::size_t>(p) * n + p] = app - t * apq;
                m[static_cast<std::size_t>(q) * n + q] = aqq + t * apq;
                m[static_cast<std::size_t>(p) * n + q] = 0.0;
                m[static_cast<std::size_t>(q) * n + p] = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (use_par) num_threads(nthreads)
#endif
                for (int i = 0; i < n; ++i) {
                    const double vip = vecs[static_cast<std::size_t>(i) * n + p];
                    const double viq = vecs[static_cast<std::size_t>(i) * n + q];
                    vecs[static_cast<std::size_t>(i) * n + p] = c * vip - s * viq;
                    vecs[static_cast<std::size_t>(i) * n + q] = s * vip + c * viq;
                }
            }
        }
    }
    if (!converged && off_norm() > thresh)
        throw NoConvergence("jacobi sweep cap exceeded");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return m[static_cast<std::size_t>(i) * n + i] < m[static_cast<std::size_t>(j) * n + j];
    });

    Spectrum out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j) {
        const int col = order[j];
        out.values[j] = m[static_cast<std::size_t>(col) * n + col];
        auto& v = out.vectors[j];
        for (int i = 0; i < n; ++i) v[i] = vecs[static_cast<std::size_t>(i) * n + col];
        int lead = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[lead])) lead = i;
        if (v[lead] < 0.0)
            for (double& x : v) x = -x;
    }
    return out;
}

double lambda_min(const SymMatrix& a) { return sym_eigen(a).values.front(); }

double spectral_norm(const SymMatrix& a) {
    auto s = sym_eigen(a);
    return std::max(std::abs(s.values.front()), std::abs(s.values.back()));
}

bool clears_margin(double lambda, const std::vector<double>& eigenvalues, double scale,
                   double rel) {
    const double margin = rel * std::max(1.0, scale);
    for (double e : eigenvalues)
        if (std::abs(lambda - e) <= margin) return false;
    return true;
}

} // namespace spectree
