#include "spectree/bounds.hpp"

#include <cmath>
#include <string>

namespace spectree {

double zeta_from_eps(double eps) {
    if (eps < 0.0 || eps > 2.0)
        throw OutOfRange("zeta_from_eps: eps must lie in [0, 2]");
    return std::acos(1.0 - eps / 2.0);
}

EpsBounds eps_bounds_exact(const PathDecomposition& d, double lambda, int count) {
    const int k = count == 0 ? d.k() : count;
    if (k < 1 || k > d.k()) throw Error("eps_bounds_exact: bad count");
    EpsBounds out{kInf, -kInf};
    for (int i = 0; i < k; ++i) {
        ResolventFn r = ResolventFn::from_decomposition(d, i);
        if (!r.clears(lambda))
            throw NearSingularShift("eps_bounds_exact: margin violated at block " +
                                    std::to_string(i));
        const double eps = lambda + f_T(r, lambda) - r.root_degree();
        out.min_eps = std::min(out.min_eps, eps);
        out.max_eps = std::max(out.max_eps, eps);
    }
    if (out.min_eps < 0.0 || out.max_eps > 2.0)
        throw NoValidZeta("eps_bounds_exact: eps outside [0, 2]");
    return out;
}

EpsBounds eps_bounds_norm(const PathDecomposition& d, double lambda, int count) {
    const int k = count == 0 ? d.k() : count;
    if (k < 1 || k > d.k()) throw Error("eps_bounds_norm: bad count");
    EpsBounds out{kInf, -kInf};
    for (int i = 0; i < k; ++i) {
        ResolventFn r = ResolventFn::from_decomposition(d, i);
        if (lambda >= r.block_lambda_min())
            throw ShiftOutOfRange("eps_bounds_norm: lambda >= lambda_min of block " +
                                  std::to_string(i));
        const double vol = static_cast<double>(r.subtree_size());
        // singleton blocks contribute exactly lambda (any c cancels)
        const double beta = r.singleton() ? 0.0 : 1.0 / r.block_norm();
        const double gamma = r.singleton() ? 0.0 : r.inverse_norm();
        const double lo = (vol * lambda - beta * lambda * lambda) / (1.0 - beta * lambda);
        const double denom = 1.0 - gamma * lambda;
        if (denom <= 0.0)
            throw ShiftOutOfRange("eps_bounds_norm: 1 - ||L^{-1}|| lambda <= 0 at block " +
                                  std::to_string(i));
        const double hi = (vol * lambda - gamma * lambda * lambda) / denom;
        out.min_eps = std::min(out.min_eps, lo);
        out.max_eps = std::max(out.max_eps, hi);
    }
    return out;
}

double toeplitz_kernel_entry(double x1, double zeta, int j) {
    if (zeta < 0.0 || zeta >= M_PI_2) throw OutOfRange("toeplitz_kernel_entry: zeta in [0, pi/2)");
    return x1 * std::sqrt(2.0) * std::cos((j - 0.5) * zeta) / std::sqrt(1.0 + std::cos(zeta));
}

std::vector<double> kernel_ratio_recursion(const PerturbedTridiagonal& p) {
    const int n = p.size();
    if (n < 2) throw Error("kernel_ratio_recursion needs n >= 2");
    std::vector<double> f(n - 1);
    f[0] = 1.0 - p.eps[0];
    for (int i = 1; i < n - 1; ++i) {
        if (std::abs(f[i - 1]) <= 1e-12)
            throw ZeroPivot("kernel_ratio_recursion: F_" + std::to_string(i) +
                            " undefined, previous ratio vanished");
        f[i] = 2.0 - p.eps[i] - 1.0 / f[i - 1];
    }
    return f;
}

RatioEnvelope ratio_sandwich(const PathDecomposition& d, double lambda, EpsMode mode) {
    const int k = d.k();
    if (k < 2) throw HorizonEmpty("ratio_sandwich needs k >= 2");
    EpsBounds eb = mode == EpsMode::exact ? eps_bounds_exact(d, lambda, k - 1)
                                          : eps_bounds_norm(d, lambda, k - 1);
    if (!(eb.min_eps > 0.0 && eb.max_eps < 2.0))
        throw NoValidZeta("ratio_sandwich: eps bounds must lie strictly inside (0, 2)");
    RatioEnvelope env;
    env.eps_min = eb.min_eps;
    env.eps_max = eb.max_eps;
    env.zeta_lower = zeta_from_eps(eb.max_eps);
    env.zeta_upper = zeta_from_eps(eb.min_eps);
    env.horizon = std::min(M_PI / (2.0 * env.zeta_lower) + 0.5, static_cast<double>(k));
    // the theorem's hypothesis is strict; indices at the boundary are
    // excluded, with 1e-9 slack in index units against roundoff
    for (int i = 1; i + 1e-9 < env.horizon && i <= k - 1; ++i) {
        env.indices.push_back(i);
        const double dlo = std::cos((i - 0.5) * env.zeta_lower);
        const double dhi = std::cos((i - 0.5) * env.zeta_upper);
        env.ratio_lower.push_back(std::cos((i + 0.5) * env.zeta_lower) / dlo);
        env.ratio_upper.push_back(std::cos((i + 0.5) * env.zeta_upper) / dhi);
        env.cum_lower.push_back(std::cos((i + 0.5) * env.zeta_lower) /
                                std::cos(0.5 * env.zeta_lower));
        env.cum_upper.push_back(std::cos((i + 0.5) * env.zeta_upper) /
                                std::cos(0.5 * env.zeta_upper));
    }
    if (env.indices.empty()) throw HorizonEmpty("ratio_sandwich: no index inside the horizon");
    return env;
}

Interval a_T_universal_bounds(const Tree& t) {
    if (t.size() < 2) throw BadVertex("a_T_universal_bounds needs n >= 2");
    const double n = static_cast<double>(t.size());
    const double d = static_cast<double>(t.diameter());
    return {2.0 - 2.0 * std::cos(M_PI / (n + 1.0)), 2.0 - 2.0 * std::cos(M_PI / (d + 1.0))};
}

} // namespace spectree
