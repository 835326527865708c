// Brute-force ground truth: exhaustive labeled-tree enumeration, dense
// eigendecomposition cross-checks of the tridiagonal reduction, and
// finite-difference derivative checks. Depends only on tree + linalg plus
// the specific quantities under test.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spectree/tree.hpp"

namespace spectree {

std::uint64_t labeled_tree_count(int n);               // n^(n-2); TooLarge beyond 9
Tree labeled_tree_by_index(int n, std::uint64_t idx);  // Pruefer sequence in mixed radix
void enumerate_labeled_trees(int n, const std::function<void(const Tree&)>& fn);

struct VerificationRecord {
    std::string claim;
    std::string instance;     // minimal reproducer for failures
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    std::string to_json() const;   // one JSON object per line
};

// For every eigenvalue of L(T) clearing the margin on this path: the
// tridiagonal is near-singular (sigma_min < 1e-7), the path-restricted
// eigenvector lies in its kernel, the reconstruction matches up to scale,
// and midpoints between well-separated eigenvalues keep sigma_min > 1e-6.
VerificationRecord verify_schur_identity(const Tree& t, const std::vector<int>& path);

// Central differences, Richardson-extrapolated once. Steps: 1e-5 for
// order 1, 1e-4 for order 2.
double finite_difference(const std::function<double(double)>& fn, double x0, int order);

struct VerifyOptions {
    int max_n = 8;
    std::uint64_t seed = 20240801;
    int jobs = 1;
};

std::vector<VerificationRecord> verify_suite_schur(const VerifyOptions& opt);
std::vector<VerificationRecord> verify_suite_bounds(const VerifyOptions& opt);
std::vector<VerificationRecord> verify_suite_fiedler(const VerifyOptions& opt);

} // namespace spectree
