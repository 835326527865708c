// Dense symmetric matrices, Laplacian assembly, shifted solves and a
// self-contained cyclic-Jacobi eigensolver. Everything is value-semantic
// and thread-safe; the design envelope is dense desk-scale (n <= ~500).
#pragma once

#include <vector>

#include "spectree/tree.hpp"

namespace spectree {

class SymMatrix {
public:
    SymMatrix() : n_(0) {}
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
    static SymMatrix identity(int n);

    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    void set(int i, int j, double v);   // writes both (i,j) and (j,i)
    void add(int i, int j, double v);

    double frobenius_norm() const;
    double max_abs() const;
    std::vector<double> apply(const std::vector<double>& x) const;
    const std::vector<double>& data() const { return a_; }

private:
    int n_;
    std::vector<double> a_;
};

struct Spectrum {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // vectors[i] pairs with values[i]
};

// small vector helpers
double dot(const std::vector<double>& x, const std::vector<double>& y);
double norm2(const std::vector<double>& x);

SymMatrix laplacian(const Tree& t);
SymMatrix reduced_laplacian(const Tree& t, int v);                 // rows: labels != v, ascending
SymMatrix doubly_reduced_laplacian(const Tree& t, int v, int w);   // v != w

// Entry (u,w) of L_v(T)^{-1} equals the number of edges shared by the
// unique u->v and w->v paths; computed here from distances as
// (d(u,v)+d(w,v)-d(u,w))/2. Used as the closed-form cross-check of the
// numeric solve route.
SymMatrix reduced_inverse_closed_form(const Tree& t, int v);

// x with (A - lambda I) x = rhs, via symmetric-pivoting (Bunch-Kaufman)
// LDL^T elimination. Throws NearSingularShift when a pivot collapses or the
// residual exceeds 1e-9 * (1 + ||rhs||).
std::vector<double> solve_shifted(const SymMatrix& a, double lambda, const std::vector<double>& rhs);

struct JacobiOptions {
    int max_sweeps = 50;
    double tol_factor = 1e-12;   // off-diagonal threshold = tol_factor * ||A||_F
    int threads = 0;             // 0 = auto; 1 forces the serial reference path
};

// Cyclic Jacobi. Eigenvalues ascending, eigenvectors orthonormal with the
// largest-magnitude entry of each made positive. Rotations are applied
// element-wise, so the OpenMP path is bit-identical to the serial one.
// Throws NoConvergence if the sweep cap is exceeded.
Spectrum sym_eigen(const SymMatrix& a);
Spectrum sym_eigen(const SymMatrix& a, const JacobiOptions& opt);

double lambda_min(const SymMatrix& a);      // smallest eigenvalue
double spectral_norm(const SymMatrix& a);   // largest |eigenvalue|

// Shift admissibility used uniformly by production code and the oracle:
// lambda clears sigma when min_i |lambda - sigma_i| > rel * max(1, scale).
bool clears_margin(double lambda, const std::vector<double>& eigenvalues, double scale,
                   double rel = 1e-8);

} // namespace spectree
