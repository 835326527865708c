#include "spectree/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectree/bounds.hpp"
#include "spectree/fiedler.hpp"
#include "spectree/linalg.hpp"
#include "spectree/rng.hpp"
#include "spectree/schur.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spectree {

std::uint64_t labeled_tree_count(int n) {
    if (n < 1 || n > 9) throw TooLarge("labeled tree enumeration supports 1 <= n <= 9");
    if (n <= 2) return 1;
    std::uint64_t c = 1;
    for (int i = 0; i < n - 2; ++i) c *= static_cast<std::uint64_t>(n);
    return c;
}

Tree labeled_tree_by_index(int n, std::uint64_t idx) {
    if (idx >= labeled_tree_count(n)) throw TooLarge("tree index out of range");
    if (n == 1) return Tree::build(1, {});
    if (n == 2) return Tree::build(2, {{0, 1}});
    // idx in mixed radix base n spells the Pruefer sequence
    std::vector<int> seq(n - 2);
    for (int pos = n - 3; pos >= 0; --pos) {
        seq[pos] = static_cast<int>(idx % n);
        idx /= n;
    }
    return pruefer_decode(n, seq);
}

void enumerate_labeled_trees(int n, const std::function<void(const Tree&)>& fn) {
    const std::uint64_t c = labeled_tree_count(n);
    for (std::uint64_t i = 0; i < c; ++i) fn(labeled_tree_by_index(n, i));
}

std::string VerificationRecord::to_json() const {
    std::ostringstream os;
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out.push_back('\\');
            out.push_back(c);
        }
        return out;
    };
    char num[64];
    os << "{\"claim\":\"" << escape(claim) << "\",\"instance\":\"" << escape(instance) << "\"";
    std::snprintf(num, sizeof(num), "%.12g", observed);
    os << ",\"observed\":" << num;
    std::snprintf(num, sizeof(num), "%.12g", tolerance);
    os << ",\"tolerance\":" << num;
    os << ",\"pass\":" << (pass ? "true" : "false") << "}";
    return os.str();
}

VerificationRecord verify_schur_identity(const Tree& t, const std::vector<int>& path) {
    VerificationRecord rec;
    rec.claim = "schur_identity";
    {
        std::ostringstream is;
        is << "tree=" << t.to_edge_list() << " path=";
        for (std::size_t i = 0; i < path.size(); ++i) is << (i ? "," : "") << path[i];
        rec.instance = is.str();
        for (char& c : rec.instance)
            if (c == '\n') c = ' ';
    }
    rec.tolerance = 1e-7;
    rec.pass = true;

    auto d = decompose_along_path(t, path);
    auto spec = sym_eigen(laplacian(t));
    const double scale = std::max(1.0, spec.values.back());
    double worst = 0.0;

    std::vector<std::vector<double>> block_spectra(d.k());
    for (int i = 0; i < d.k(); ++i) {
        ResolventFn r = ResolventFn::from_decomposition(d, i);
        block_spectra[i] = r.block_spectrum();
    }
    auto clears_all = [&](double lam) {
        for (const auto& bs : block_spectra)
            if (!bs.empty() && !clears_margin(lam, bs, bs.back())) return false;
        return true;
    };

    for (int e = 0; e < t.size(); ++e) {
        const double lam = spec.values[e];
        if (!clears_all(lam)) continue;
        auto s = schur_matrix(d, lam);
        const double smin = schur_sigma_min(s);
        worst = std::max(worst, smin);
        if (smin >= 1e-7) rec.pass = false;
        // path restriction of the oracle eigenvector lies in ker S
        std::vector<double> xp(d.k());
        for (int i = 0; i < d.k(); ++i) xp[i] = spec.vectors[e][d.path[i]];
        const double xpn = norm2(xp);
        if (xpn < 1e-12) {
            rec.pass = false;
            continue;
        }
        const double res = norm2(s.apply(xp)) / xpn;
        worst = std::max(worst, res);
        if (res >= 1e-7) rec.pass = false;
        // reconstruction matches the oracle eigenvector up to scale
        auto full = reconstruct_eigenvector(d, lam, xp);
        const double fn = norm2(full);
        double dot_sign = dot(full, spec.vectors[e]) >= 0.0 ? 1.0 : -1.0;
        double diff = 0.0;
        for (int i = 0; i < t.size(); ++i)
            diff += std::pow(full[i] / fn - dot_sign * spec.vectors[e][i], 2);
        diff = std::sqrt(diff);
        worst = std::max(worst, diff);
        if (diff >= 1e-7) rec.pass = false;
    }

    // away from the spectrum the reduction must stay regular
    for (int e = 0; e + 1 < t.size(); ++e) {
        const double gap = spec.values[e + 1] - spec.values[e];
        if (gap < 1e-4 * scale) continue;
        const double mid = 0.5 * (spec.values[e] + spec.values[e + 1]);
        if (!clears_all(mid)) continue;
        auto s = schur_matrix(d, mid);
        if (schur_sigma_min(s) <= 1e-6) rec.pass = false;
    }

    rec.observed = worst;
    return rec;
}

double finite_difference(const std::function<double(double)>& fn, double x0, int order) {
    if (order == 1) {
        auto d = [&](double h) { return (fn(x0 + h) - fn(x0 - h)) / (2.0 * h); };
        const double h = 1e-5;
        return (4.0 * d(h / 2.0) - d(h)) / 3.0;
    }
    if (order == 2) {
        auto d = [&](double h) { return (fn(x0 + h) - 2.0 * fn(x0) + fn(x0 - h)) / (h * h); };
        const double h = 1e-4;
        return (4.0 * d(h / 2.0) - d(h)) / 3.0;
    }
    throw Error("finite_difference supports orders 1 and 2");
}

namespace {

Tree random_tree(Rng& rng, int n) {
    if (n <= 2) return pruefer_decode(n, {});
    std::vector<int> seq(n - 2);
    for (int& s : seq) s = rng.below(n);
    return pruefer_decode(n, seq);
}

std::vector<int> random_path(Rng& rng, const Tree& t) {
    const int n = t.size();
    int u = rng.below(n);
    int v = rng.below(n);
    while (v == u) v = rng.below(n);
    return t.path_between(u, v);
}

} // namespace

std::vector<VerificationRecord> verify_suite_schur(const VerifyOptions& opt) {
    std::vector<VerificationRecord> out;
    for (int n = 2; n <= opt.max_n; ++n) {
        const std::uint64_t count = labeled_tree_count(n);
        std::vector<char> ok(count, 1);
        std::vector<std::string> fail_detail(count);
        double worst = 0.0;
        const std::int64_t total = static_cast<std::int64_t>(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, opt.jobs)) \
    reduction(max : worst) if (opt.jobs > 1)
#endif
        for (std::int64_t i = 0; i < total; ++i) {
            Tree t = labeled_tree_by_index(n, static_cast<std::uint64_t>(i));
            Rng rng(opt.seed ^ (static_cast<std::uint64_t>(n) << 32) ^
                    static_cast<std::uint64_t>(i));
            auto spine = t.longest_path();
            auto rec1 = verify_schur_identity(t, spine);
            VerificationRecord rec2 = rec1;
            if (n >= 3) rec2 = verify_schur_identity(t, random_path(rng, t));
            worst = std::max(worst, std::max(rec1.observed, rec2.observed));
            if (!rec1.pass || !rec2.pass) {
                ok[static_cast<std::size_t>(i)] = 0;
                fail_detail[static_cast<std::size_t>(i)] =
                    (!rec1.pass ? rec1 : rec2).instance;
            }
        }
        VerificationRecord agg;
        agg.claim = "schur_identity_exhaustive";
        agg.instance = "n=" + std::to_string(n) + " trees=" + std::to_string(count) +
                       " paths=spine+random seed=" + std::to_string(opt.seed);
        agg.tolerance = 1e-7;
        agg.observed = worst;
        agg.pass = true;
        for (std::uint64_t i = 0; i < count; ++i)
            if (!ok[i]) {
                agg.pass = false;
                VerificationRecord fr;
                fr.claim = "schur_identity_failure";
                fr.instance = fail_detail[i];
                fr.tolerance = 1e-7;
                fr.observed = worst;
                fr.pass = false;
                out.push_back(fr);
            }
        out.push_back(agg);
    }
    return out;
}

std::vector<VerificationRecord> verify_suite_bounds(const VerifyOptions& opt) {
    std::vector<VerificationRecord> out;
    Rng rng(opt.seed);
    // sandwich soundness on random admissible instances at lambda = a(T)
    VerificationRecord sandwich;
    sandwich.claim = "ratio_sandwich_soundness";
    sandwich.tolerance = 1e-9;
    sandwich.pass = true;
    int tested = 0, attempts = 0;
    double worst = -kInf;
    const int want = 500 * std::max(1, opt.max_n - 3);
    while (tested < want && attempts < 100 * want) {
        ++attempts;
        Tree t = random_tree(rng, 4 + rng.below(25));
        auto rep = fiedler_report(t);
        if (!rep.simple) continue;
        auto path = random_path(rng, t);
        if (path.size() < 3) continue;
        try {
            auto d = decompose_along_path(t, path);
            auto env = ratio_sandwich(d, rep.a, EpsMode::exact);
            const auto& x = rep.vector;
            double x1 = x[path[0]];
            if (std::abs(x1) < 1e-12) continue;
            const double sgn = x1 > 0.0 ? 1.0 : -1.0;
            ++tested;
            for (std::size_t j = 0; j < env.indices.size(); ++j) {
                const int i = env.indices[j];
                const double xi = sgn * x[path[i - 1]], xi1 = sgn * x[path[i]];
                if (xi <= 0.0) {
                    sandwich.pass = false;
                    continue;
                }
                const double ratio = xi1 / xi;
                worst = std::max({worst, env.ratio_lower[j] - ratio, ratio - env.ratio_upper[j]});
                const double cum = xi1 / (sgn * x1);
                worst = std::max({worst, env.cum_lower[j] - cum, cum - env.cum_upper[j]});
            }
        } catch (const Error&) {
            continue;
        }
    }
    if (worst > 1e-9) sandwich.pass = false;
    sandwich.observed = worst;
    sandwich.instance = "random admissible instances=" + std::to_string(tested) +
                        " seed=" + std::to_string(opt.seed);
    out.push_back(sandwich);

    // norm-mode envelope contains the exact-mode envelope
    VerificationRecord nest;
    nest.claim = "norm_envelope_contains_exact";
    nest.tolerance = 1e-12;
    nest.pass = true;
    double worst_nest = -kInf;
    int nested = 0;
    Rng rng2(opt.seed + 1);
    while (nested < 200 && worst_nest < 1e9) {
        Tree t = random_tree(rng2, 4 + rng2.below(15));
        auto rep = fiedler_report(t);
        if (!rep.simple) continue;
        auto path = random_path(rng2, t);
        if (path.size() < 3) continue;
        try {
            auto d = decompose_along_path(t, path);
            auto exact = eps_bounds_exact(d, rep.a, d.k() - 1);
            auto norm = eps_bounds_norm(d, rep.a, d.k() - 1);
            ++nested;
            worst_nest = std::max({worst_nest, norm.min_eps - exact.min_eps,
                                   exact.max_eps - norm.max_eps});
        } catch (const Error&) {
            continue;
        }
    }
    if (worst_nest > 1e-12) nest.pass = false;
    nest.observed = worst_nest;
    nest.instance = "random instances=" + std::to_string(nested);
    out.push_back(nest);
    return out;
}

std::vector<VerificationRecord> verify_suite_fiedler(const VerifyOptions& opt) {
    std::vector<VerificationRecord> out;
    for (int n = 2; n <= opt.max_n; ++n) {
        VerificationRecord rec;
        rec.claim = "fiedler_extrema_pendant_exhaustive";
        rec.instance = "n=" + std::to_string(n);
        rec.tolerance = 0.0;
        rec.pass = true;
        const std::int64_t total = static_cast<std::int64_t>(labeled_tree_count(n));
        std::int64_t violations = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, opt.jobs)) \
    reduction(+ : violations) if (opt.jobs > 1)
#endif
        for (std::int64_t i = 0; i < total; ++i) {
            Tree t = labeled_tree_by_index(n, static_cast<std::uint64_t>(i));
            if (t.diameter() < 2) continue;
            auto rep = fiedler_report(t);
            if (!rep.simple) continue;
            if (!check_pendant_extrema(rep, t)) ++violations;
        }
        rec.observed = static_cast<double>(violations);
        rec.pass = violations == 0;
        out.push_back(rec);
    }

    VerificationRecord rnd;
    rnd.claim = "fiedler_extrema_pendant_random";
    rnd.tolerance = 0.0;
    rnd.pass = true;
    Rng rng(opt.seed + 7);
    std::int64_t violations = 0;
    const int samples = 2000;
    for (int i = 0; i < samples; ++i) {
        Tree t = random_tree(rng, 5 + rng.below(36));
        if (t.diameter() < 2) continue;
        auto rep = fiedler_report(t);
        if (!rep.simple) continue;
        if (!check_pendant_extrema(rep, t)) ++violations;
    }
    rnd.instance = "samples=" + std::to_string(samples) + " seed=" + std::to_string(opt.seed + 7);
    rnd.observed = static_cast<double>(violations);
    rnd.pass = violations == 0;
    out.push_back(rnd);
    return out;
}

} // namespace spectree
