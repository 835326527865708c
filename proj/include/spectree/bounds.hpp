// Eigenvalue-only sandwich bounds for eigenvector entries along a path:
// the cosine parametrization eps = 2(1 - cos zeta), the perturbed-Toeplitz
// kernel closed form, the continued-fraction ratio recursion, and the
// resulting per-index envelopes.
#pragma once

#include <vector>

#include "spectree/schur.hpp"
#include "spectree/tree.hpp"

namespace spectree {

// zeta = arccos(1 - eps/2); OutOfRange unless 0 <= eps <= 2.
double zeta_from_eps(double eps);

struct EpsBounds {
    double min_eps = 0.0;
    double max_eps = 0.0;
};

// eps_i = lambda + f_{T_i}(lambda) - deg_{T_i}(v_i) over the first `count`
// path indices (count = 0 means all k). These are the exact diagonal
// perturbations that turn S(lambda) into the perturbed path Laplacian.
EpsBounds eps_bounds_exact(const PathDecomposition& d, double lambda, int count = 0);

// Eigenvalue-only version: replaces f by its two-sided resolvent bound,
//   (|V(T_i)| lambda - c lambda^2) / (1 - c lambda)
// with c = ||L_{v_i}(T_i)||^{-1} (lower) or ||L_{v_i}(T_i)^{-1}|| (upper).
// Requires lambda < min_i lambda_min(L_{v_i}(T_i)) over the counted range.
EpsBounds eps_bounds_norm(const PathDecomposition& d, double lambda, int count = 0);

// x_j = x1 sqrt(2) cos((j - 1/2) zeta) / sqrt(1 + cos zeta), the unique
// kernel profile of the constant-perturbation path system.
double toeplitz_kernel_entry(double x1, double zeta, int j);

struct PerturbedTridiagonal {
    std::vector<double> eps;   // eps_i >= 0, diagonal (1-e_1, 2-e_2, .., 2-e_{n-1}, 1-e_n)
    int size() const { return static_cast<int>(eps.size()); }
};

// F_1 = 1 - eps_1, F_i = 2 - eps_i - 1/F_{i-1}; F_i = x_{i+1}/x_i for the
// kernel element of the first n-1 rows. ZeroPivot (naming the index) when
// |F_{i-1}| <= 1e-12.
std::vector<double> kernel_ratio_recursion(const PerturbedTridiagonal& p);

enum class EpsMode { exact, norm };

struct RatioEnvelope {
    double eps_min = 0.0, eps_max = 0.0;
    double zeta_lower = 0.0, zeta_upper = 0.0;   // zeta_lower from eps_max, >= zeta_upper
    double horizon = 0.0;                        // min(pi/(2 zeta_lower) + 1/2, k)
    std::vector<int> indices;                    // i with 0 < i < horizon (boundary excluded)
    std::vector<double> ratio_lower, ratio_upper;  // bounds on x_{i+1}/x_i
    std::vector<double> cum_lower, cum_upper;      // bounds on x_{i+1}/x_1
};

// The sandwich along d.path at an eigenvalue lambda with x_1 > 0. eps ranges
// over i = 1..k-1 (the recursion never reads the last diagonal). Indices at
// the horizon boundary are excluded (strict hypothesis); the working slack
// is 1e-9 in index units. Throws NoValidZeta / HorizonEmpty.
RatioEnvelope ratio_sandwich(const PathDecomposition& d, double lambda, EpsMode mode);

// 2 - 2cos(pi/(n+1)) <= a(T) <= 2 - 2cos(pi/(d(T)+1)), n >= 2.
Interval a_T_universal_bounds(const Tree& t);

} // namespace spectree
