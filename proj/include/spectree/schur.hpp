// The tridiagonal reduction of L(T) - lambda along a path and everything
// built on it: the resolvent functions f_{T_i}, eigenvector reconstruction,
// resolvent bounds, Perron-value bounds and the pendant ratio function g.
#pragma once

#include <limits>
#include <vector>

#include "spectree/linalg.hpp"
#include "spectree/tree.hpp"

namespace spectree {

// One rooted block (T_i, v_i): the reduced Laplacian L_{v_i}(T_i) over
// V(T_i)\{v_i} in ascending label order, its incidence vector f_i and its
// cached spectrum. Immutable after construction.
class ResolventFn {
public:
    ResolventFn(const Tree& host, const std::vector<int>& subtree, int root);
    ResolventFn(const Tree& rooted_tree, int root);   // subtree = whole tree
    static ResolventFn from_decomposition(const PathDecomposition& d, int i);

    int subtree_size() const { return size_; }        // |V(T_i)|
    int root_degree() const { return root_degree_; }  // deg_{T_i}(v_i)
    bool singleton() const { return size_ == 1; }
    const SymMatrix& block() const { return block_; }
    const std::vector<double>& f_vector() const { return f_; }
    const std::vector<double>& block_spectrum() const { return spectrum_; }
    // +inf / 0 / 0 for a singleton block
    double block_lambda_min() const;
    double block_norm() const;
    double inverse_norm() const;
    bool clears(double lambda) const;

private:
    int size_ = 1;
    int root_degree_ = 0;
    SymMatrix block_;
    std::vector<double> f_;
    std::vector<double> spectrum_;
};

// f_{T_i}(lambda) = f_i^T (L_{v_i}(T_i) - lambda)^{-1} f_i. Zero for a
// singleton block. Throws NearSingularShift inside the margin.
double f_T(const ResolventFn& r, double lambda);

// k-th derivative at zero, k! f^T L^{-(k+1)} f, by k+1 successive solves.
double f_T_derivative_at_zero(const ResolventFn& r, int order);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

// Two-sided resolvent bound for 0 < lambda < lambda_min(L_{v_i}(T_i)); the
// upper bound degenerates to +inf when 1 - ||L^{-1}|| lambda <= 0.
Interval f_T_bounds(const ResolventFn& r, double lambda);

// Bounds on the Perron value ||L_v(T)^{-1}||: for every pendant w, the trees
// T_1..T_{d+1} along the v->w path give
//   sqrt(sum i^2 |V(T_{i+1})|)  <=  ||L_v^{-1}||  <=  sum i |V(T_{i+1})|
// and we take the max of each side over pendants.
Interval perron_bounds(const Tree& t, int v);

struct SchurTridiagonal {
    double lambda = 0.0;
    std::vector<double> diag;   // s_{T_i}(lambda); off-diagonal is constant -1

    int size() const { return static_cast<int>(diag.size()); }
    SymMatrix to_matrix() const;
    std::vector<double> apply(const std::vector<double>& x) const;
};

// diag_i = deg_T(v_i) - lambda - f_{T_i}(lambda). NearSingularShift names
// the offending block index when the margin is violated.
SchurTridiagonal schur_matrix(const PathDecomposition& d, double lambda);

// Least-|eigenvalue| eigenvector of S(lambda), and its |eigenvalue| (the
// numeric sigma_min since S is symmetric).
std::vector<double> schur_kernel_vector(const SchurTridiagonal& s);
double schur_sigma_min(const SchurTridiagonal& s);

// Extends a kernel element of S(lambda) to a full eigenvector of L(T) via
// y_i = -(L_{v_i}(T_i) - lambda)^{-1} f_i x_i. Requires ||S x|| <= 1e-7 ||x||
// (NotInKernel otherwise) and checks the full residual afterwards.
std::vector<double> reconstruct_eigenvector(const PathDecomposition& d, double lambda,
                                            const std::vector<double>& x_path);

// x_2/x_1 for a k=2 decomposition (equals s_{T_1}(lambda) = 1/s_{T_2}(lambda)).
double ratio_adjacent(const PathDecomposition& d, double lambda);
// x_3/x_1 for k=3 (s_{T_1}/s_{T_3}); falls back to the kernel of the
// tridiagonal when both s-values vanish (0/0 at an eigenvalue).
double ratio_distance_two(const PathDecomposition& d, double lambda);

// g_{w,v}(lambda): w pendant, d(w,v) >= 2. Equals x_v/x_w for any eigenpair
// whose lambda clears the margin from sigma(L_{w,v}(hatT)), where hatT is
// the branch of the tree at v containing w.
double g_ratio(const Tree& t, int w, int v, double lambda);

// g'(0) in closed form for a decomposition of hatT along its full path with
// T_1 = {v_1} pendant and T_k = {v_k}: 1 - k - sum over the interior blocks
// of (distance from v_k) * |V(T_i)|.
double g_derivative_at_zero(const PathDecomposition& hat);

// x_v/x_w for eigenpairs, valid for any pendant w and anchor v:
// 1 at distance 0, 1 - lambda at distance 1, g_ratio beyond.
double pendant_anchor_ratio(const Tree& t, int w, int v, double lambda);

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace spectree
