#include "spectree/fiedler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "spectree/families.hpp"
#include "spectree/oracle.hpp"
#include "spectree/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spectree {

namespace {

constexpr double kExtremaTol = 1e-9;

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double round12(double x) { return std::strtod(format12(x).c_str(), nullptr); }

} // namespace

std::string FiedlerReport::fed_string() const {
    switch (fed) {
        case FedVerdict::holds:
            return "holds";
        case FedVerdict::fails:
            return "fails(" + std::to_string(fed_witness) + ")";
        case FedVerdict::not_applicable:
            return "not_applicable(" + fed_reason + ")";
    }
    return "?";
}

FiedlerReport fiedler_report(const Tree& t) {
    const int n = t.size();
    if (n < 2) throw BadVertex("fiedler_report needs n >= 2");
    auto spec = sym_eigen(laplacian(t));
    FiedlerReport rep;
    rep.n = n;
    rep.a = spec.values[1];
    rep.lambda_max = spec.values[n - 1];
    rep.spectral_gap = n >= 3 ? spec.values[2] - spec.values[1] : kInf;
    rep.simple = rep.spectral_gap > 1e-8 * rep.lambda_max;
    rep.longest_path = t.longest_path();
    rep.longest_path_unique = t.longest_path_unique();

    if (rep.simple) {
        rep.vector = spec.vectors[1];
        // sign: entry at the smallest-labeled pendant vertex positive,
        // first nonzero entry if that one vanishes
        auto pend = t.pendant_vertices();
        int anchor = pend.empty() ? 0 : pend.front();
        double v = rep.vector[anchor];
        if (std::abs(v) <= 1e-12) {
            for (double x : rep.vector)
                if (std::abs(x) > 1e-12) {
                    v = x;
                    break;
                }
        }
        if (v < 0.0)
            for (double& x : rep.vector) x = -x;
        double nrm = norm2(rep.vector);
        for (double& x : rep.vector) x /= nrm;

        const double mx = *std::max_element(rep.vector.begin(), rep.vector.end());
        const double mn = *std::min_element(rep.vector.begin(), rep.vector.end());
        for (int i = 0; i < n; ++i) {
            if (rep.vector[i] >= mx - kExtremaTol) {
                rep.argmax.push_back(i);
                rep.argmax_pendant.push_back(t.degree(i) == 1);
            }
            if (rep.vector[i] <= mn + kExtremaTol) {
                rep.argmin.push_back(i);
                rep.argmin_pendant.push_back(t.degree(i) == 1);
            }
        }
    }

    if (!rep.simple) {
        rep.fed = FedVerdict::not_applicable;
        rep.fed_reason = "non_simple";
    } else if (!rep.longest_path_unique) {
        rep.fed = FedVerdict::not_applicable;
        rep.fed_reason = "longest_path_tie";
    } else {
        const int u = rep.longest_path.front(), v = rep.longest_path.back();
        std::vector<int> extrema = rep.argmax;
        extrema.insert(extrema.end(), rep.argmin.begin(), rep.argmin.end());
        std::sort(extrema.begin(), extrema.end());
        const bool exact = rep.argmax.size() == 1 && rep.argmin.size() == 1 &&
                           extrema == std::vector<int>{std::min(u, v), std::max(u, v)};
        if (exact) {
            rep.fed = FedVerdict::holds;
        } else {
            rep.fed = FedVerdict::fails;
            for (int w : extrema)
                if (w != u && w != v) {
                    rep.fed_witness = w;
                    break;
                }
        }
    }
    return rep;
}

PathProfile classify_path_profile(const FiedlerReport& rep, const std::vector<int>& path) {
    if (rep.vector.empty()) throw NotSimple("profile needs a Fiedler vector");
    std::vector<double> vals;
    vals.reserve(path.size());
    for (int v : path) vals.push_back(rep.vector[v]);
    const double tol = 1e-12;
    auto noninc = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i + 1 <= to; ++i)
            if (vals[i + 1] > vals[i] + tol) return false;
        return true;
    };
    auto nondec = [&](std::size_t from, std::size_t to) {
        for (std::size_t i = from; i + 1 <= to; ++i)
            if (vals[i + 1] < vals[i] - tol) return false;
        return true;
    };
    const std::size_t last = vals.size() - 1;
    if (noninc(0, last) || nondec(0, last)) return PathProfile::monotone;
    std::size_t pivot = static_cast<std::size_t>(
        std::min_element(vals.begin(), vals.end()) - vals.begin());
    if (vals.front() >= -tol && vals.back() >= -tol && vals[pivot] >= -tol &&
        noninc(0, pivot) && nondec(pivot, last))
        return PathProfile::valley;
    pivot = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    if (vals.front() <= tol && vals.back() <= tol && vals[pivot] <= tol && nondec(0, pivot) &&
        noninc(pivot, last))
        return PathProfile::ridge;
    throw Error("path profile matches none of the three cases");
}

bool check_pendant_extrema(const FiedlerReport& rep, const Tree& t) {
    if (!rep.simple) throw NotSimple("check_pendant_extrema needs a simple a(T)");
    if (t.diameter() < 2) throw PreconditionViolated("check_pendant_extrema needs d(T) >= 2");
    for (int v : rep.argmax)
        if (t.degree(v) != 1) return false;
    for (int v : rep.argmin)
        if (t.degree(v) != 1) return false;
    return true;
}

CaterpillarExtrema caterpillar_extrema(const Tree& t) {
    const int n = t.size();
    if (t.diameter() < 3) throw PreconditionViolated("caterpillar_extrema needs d(T) >= 3");
    // derived graph: drop all pendant vertices; a caterpillar leaves a path
    std::vector<int> core;
    for (int v = 0; v < n; ++v)
        if (t.degree(v) >= 2) core.push_back(v);
    std::vector<char> in_core(n, 0);
    for (int v : core) in_core[v] = 1;
    int ends = 0;
    std::vector<int> core_deg(n, 0);
    for (int v : core) {
        for (int w : t.neighbors(v))
            if (in_core[w]) ++core_deg[v];
        if (core_deg[v] > 2) throw NotCaterpillar("derived graph is not a path");
        if (core_deg[v] <= 1) ++ends;
    }
    if (core.empty() || ends > 2) throw NotCaterpillar("derived graph is not a path");
    // order the core as a path, starting at the smaller end
    std::vector<int> spine;
    int start = -1;
    for (int v : core)
        if (core_deg[v] <= 1) {
            start = v;
            break;
        }
    if (start < 0) throw NotCaterpillar("derived graph has a cycle");
    spine.push_back(start);
    int prev = -1;
    while (true) {
        int cur = spine.back(), next = -1;
        for (int w : t.neighbors(cur))
            if (in_core[w] && w != prev) next = w;
        if (next < 0) break;
        spine.push_back(next);
        prev = cur;
    }
    if (spine.size() != core.size()) throw NotCaterpillar("derived graph is not a path");
    if (spine.back() < spine.front()) std::reverse(spine.begin(), spine.end());
    // every off-spine vertex must be a leaf hanging on the spine
    for (int v = 0; v < n; ++v)
        if (!in_core[v] && (t.degree(v) != 1 || !in_core[t.neighbors(v)[0]]))
            throw NotCaterpillar("vertex at distance > 1 from the central path");

    CaterpillarExtrema out;
    out.spine = spine;
    for (int w : t.neighbors(spine.front()))
        if (!in_core[w]) out.head_leaves.push_back(w);
    for (int w : t.neighbors(spine.back()))
        if (!in_core[w]) out.tail_leaves.push_back(w);
    std::sort(out.head_leaves.begin(), out.head_leaves.end());
    std::sort(out.tail_leaves.begin(), out.tail_leaves.end());

    auto rep = fiedler_report(t);
    if (!rep.simple) throw NotSimple("caterpillar_extrema needs a simple a(T)");
    auto hits = [](const std::vector<int>& set, const std::vector<int>& arg) {
        for (int v : arg)
            if (std::binary_search(set.begin(), set.end(), v)) return true;
        return false;
    };
    out.consistent = (hits(out.head_leaves, rep.argmax) && hits(out.tail_leaves, rep.argmin)) ||
                     (hits(out.head_leaves, rep.argmin) && hits(out.tail_leaves, rep.argmax));
    return out;
}

GencaterResult gencater_check(const Tree& t, const PathDecomposition& d, int w1, int wk) {
    const int k = d.k();
    if (k < 3) throw BadGeometry("gencater_check needs k >= 3");
    auto rep = fiedler_report(t);
    GencaterResult res;
    res.a = rep.a;
    res.simple = rep.simple;

    // assumption (a): a(T) < lambda_min of every attached block, 1e-8 margin
    for (int i = 0; i < k; ++i) {
        ResolventFn r = ResolventFn::from_decomposition(d, i);
        if (r.singleton()) continue;
        const double lm = r.block_lambda_min();
        if (!(rep.a < lm - 1e-8 * std::max(1.0, r.block_norm())))
            throw AssumptionAViolated("a(T) >= lambda_min(L_{v_i}(T_i)) at block " +
                                      std::to_string(i));
    }
    if (!rep.simple) {
        res.verdict = GencaterVerdict::fails;
        res.violated = "simplicity under assumption (a)";
        return res;
    }

    auto in_subtree = [&](int v, int i) {
        const auto& s = d.subtrees[i];
        return std::binary_search(s.begin(), s.end(), v);
    };
    auto candidate_ok = [&](int w, int i) {
        if (!in_subtree(w, i)) return false;
        if (d.subtrees[i].size() == 1) return w == d.path[i];
        return w != d.path[i] && t.degree(w) == 1;
    };
    if (!candidate_ok(w1, 0) || !candidate_ok(wk, k - 1))
        throw BadGeometry("candidates must be pendants of T_1 and T_k");

    try {
        res.g_w1 = pendant_anchor_ratio(t, w1, d.path[0], rep.a);
        res.g_wk = pendant_anchor_ratio(t, wk, d.path[k - 1], rep.a);
        // competing ratios: every pendant of every block, candidates excluded
        res.min_other = kInf;
        double min_for_w1 = kInf, min_for_wk = kInf;
        for (int i = 0; i < k; ++i) {
            for (int v : d.subtrees[i]) {
                if (v == d.path[i] || t.degree(v) != 1) continue;
                const double g = pendant_anchor_ratio(t, v, d.path[i], rep.a);
                if (v != w1) min_for_w1 = std::min(min_for_w1, g);
                if (v != wk) min_for_wk = std::min(min_for_wk, g);
                if (v != w1 && v != wk) res.min_other = std::min(res.min_other, g);
            }
        }
        const double slack = 1e-12;
        if (!(res.g_w1 > 0.0 && res.g_wk > 0.0)) {
            res.verdict = GencaterVerdict::inconclusive;
            res.violated = "g at a candidate is not positive";
            return res;
        }
        if (res.g_w1 > min_for_w1 + slack || res.g_wk > min_for_wk + slack) {
            res.verdict = GencaterVerdict::inconclusive;
            res.violated = "candidate g exceeds a competing pendant ratio";
            return res;
        }
    } catch (const NearSingularShift&) {
        res.verdict = GencaterVerdict::inconclusive;
        res.violated = "ratio evaluation hit a resolvent margin";
        return res;
    }

    // hypothesis met: the candidates must carry opposite signs and the extremes
    const auto& x = rep.vector;
    const double mx = *std::max_element(x.begin(), x.end());
    const double mn = *std::min_element(x.begin(), x.end());
    const bool w1_max = x[w1] >= mx - kExtremaTol, w1_min = x[w1] <= mn + kExtremaTol;
    const bool wk_max = x[wk] >= mx - kExtremaTol, wk_min = x[wk] <= mn + kExtremaTol;
    const bool opposite = x[w1] * x[wk] < 0.0;
    if (opposite && ((w1_max && wk_min) || (w1_min && wk_max))) {
        res.verdict = GencaterVerdict::holds;
        res.fed_follows = rep.argmax.size() == 1 && rep.argmin.size() == 1;
    } else {
        res.verdict = GencaterVerdict::fails;
        res.violated = "candidates are not sign-opposed extrema";
    }
    return res;
}

double rose_g_path_closed_form(int j, double lambda) {
    const double zeta = std::acos(1.0 - lambda / 2.0);
    return 2.0 * std::cos((j - 0.5) * zeta) / std::sqrt(4.0 - lambda);
}

double rose_g_star_closed_form(int r, double lambda) {
    return lambda * lambda - r * lambda + 1.0;
}

RoseAnalysis rose_analysis(int l, int t, int r) {
    if (l < 2 || t < 2 || r < 2) throw BadParams("rose_analysis needs l, t, r >= 2");
    RoseAnalysis out;
    out.l = l;
    out.t = t;
    out.r = r;
    Tree rose = generate(FamilySpec::fiedler_rose(l, t, r));
    auto rep = fiedler_report(rose);
    out.a = rep.a;
    out.simple = rep.simple;
    out.fed = rep.fed;

    const double bound = 2.0 - 2.0 * std::cos(M_PI / (l + t - 1.0));
    out.g_path_at_a = rose_g_path_closed_form(l - 1, rep.a);
    out.g_star_at_a = rose_g_star_closed_form(r, rep.a);
    out.g_path_at_bound = rose_g_path_closed_form(l - 1, bound);
    out.g_star_at_bound = rose_g_star_closed_form(r, bound);

    out.cond_alsosuff = 1.0 - 1.0 / (2.0 * r) <= std::cos(M_PI / (l + t - 1.0));
    out.cond_sufffirst = out.g_path_at_a < out.g_star_at_a;
    const double lam_lo = 2.0 - 2.0 * std::cos(M_PI / (l + t + r - 1.0));
    const double lhs = std::sqrt(2.0) * std::cos((l - 1.5) * M_PI / (l + t - 1.0)) /
                       std::sqrt(1.0 + std::cos(M_PI / (l + t - 1.0)));
    out.cond_suffsnd = lhs < rose_g_star_closed_form(r, lam_lo);

    out.perfect = t == l;
    if (out.perfect) {
        out.perfect_a_predicted = 2.0 - 2.0 * std::cos(M_PI / (2.0 * l - 1.0));
        out.perfect_a_error = std::abs(rep.a - out.perfect_a_predicted);
    }
    if (rep.simple) {
        double sm = 0.0;
        for (int v : rose_star_vertices(l, t, r)) sm = std::max(sm, std::abs(rep.vector[v]));
        out.star_entry_max = sm;
        out.argmax = rep.argmax;
        double amx = 0.0;
        for (double v : rep.vector) amx = std::max(amx, std::abs(v));
        for (int v = 0; v < rose.size(); ++v)
            if (std::abs(rep.vector[v]) >= amx - kExtremaTol) out.abs_argmax.push_back(v);
        auto pendants = rose_star_pendants(l, t, r);
        out.max_on_star =
            !rep.argmax.empty() &&
            std::all_of(rep.argmax.begin(), rep.argmax.end(), [&](int v) {
                return std::find(pendants.begin(), pendants.end(), v) != pendants.end();
            });
    }
    // derivative route: path arm beyond the glue has l-1 vertices
    out.star_dominates_deriv = r > (l - 1) * l / 2;
    return out;
}

RoseSweep rose_sweep(int l, int r, int t_from, int t_to) {
    if (t_from < 2 || t_to < t_from) throw BadParams("rose_sweep: bad t range");
    RoseSweep sweep;
    for (int t = t_from; t <= t_to; ++t) {
        auto an = rose_analysis(l, t, r);
        if (an.simple && an.max_on_star) {
            sweep.failing_t.push_back(t);
            if (sweep.first_max_on_star < 0) sweep.first_max_on_star = t;
        }
    }
    return sweep;
}

StarGraftResult star_graft(const Tree& t, int r) {
    auto lp = t.longest_path();
    const int k = static_cast<int>(lp.size());
    if (k < 7) throw PreconditionViolated("star_graft: longest path must have k = d+1 >= 7");
    if (r < 2) throw BadParams("star_graft needs r >= 2");
    auto d = decompose_along_path(t, lp);
    const int size2 = static_cast<int>(d.subtrees[1].size());
    const int size3 = static_cast<int>(d.subtrees[2].size());
    // g'(0) along v_1..v_4 weights blocks by distance from the anchor v_4
    const double deriv_path = -3.0 - 2.0 * size2 - size3;
    if (!(-(r + 1.0) < deriv_path))
        throw PreconditionViolated("star_graft: -(r+1) must undercut g'(0) of the path side");

    StarGraftResult out{Tree::build(1, {}), lp[3], {}, 0.0, 0.0, 0.0, true};
    const int n = t.size();
    auto edges = t.edges();
    const int center = n;
    edges.emplace_back(lp[3], center);
    for (int j = 0; j < r - 2; ++j) {
        edges.emplace_back(center, n + 1 + j);
        out.star_pendants.push_back(n + 1 + j);
    }
    if (r == 2) out.star_pendants.push_back(center);
    out.grafted = Tree::build(n + r - 1, edges);
    out.deriv_path = deriv_path;
    out.deriv_star = -(r + 1.0);
    auto rep = fiedler_report(out.grafted);
    if (rep.simple && std::abs(rep.vector[lp[0]]) > 1e-12)
        out.oracle_ratio = rep.vector[out.star_pendants.front()] / rep.vector[lp[0]];
    return out;
}

namespace {

// rooted pendant-pruning minor test via recursive bipartite matching
struct EmbedContext {
    std::vector<std::vector<int>> small_children, big_children;
    std::vector<std::vector<signed char>> memo;   // -1 unknown / 0 no / 1 yes

    bool embed(int a, int b) {
        signed char& m = memo[a][b];
        if (m >= 0) return m == 1;
        const auto& ca = small_children[a];
        const auto& cb = big_children[b];
        bool ok = true;
        if (ca.size() > cb.size()) {
            ok = false;
        } else if (!ca.empty()) {
            // Kuhn matching: each child of a needs a distinct embeddable child of b
            std::vector<int> match(cb.size(), -1);
            for (std::size_t i = 0; i < ca.size() && ok; ++i) {
                std::vector<char> used(cb.size(), 0);
                std::function<bool(std::size_t)> tryk = [&](std::size_t ai) -> bool {
                    for (std::size_t j = 0; j < cb.size(); ++j) {
                        if (used[j] || !embed(ca[ai], cb[j])) continue;
                        used[j] = 1;
                        if (match[j] < 0 || tryk(static_cast<std::size_t>(match[j]))) {
                            match[j] = static_cast<int>(ai);
                            return true;
                        }
                    }
                    return false;
                };
                ok = tryk(i);
            }
        }
        m = ok ? 1 : 0;
        return ok;
    }
};

std::vector<std::vector<int>> rooted_children(const Tree& t, int root) {
    std::vector<std::vector<int>> ch(t.size());
    std::vector<int> parent(t.size(), -2);
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : t.neighbors(u))
            if (parent[w] == -2) {
                parent[w] = u;
                ch[u].push_back(w);
                stack.push_back(w);
            }
    }
    return ch;
}

// standalone rooted tree from a host subtree; returns the new root label
std::pair<Tree, int> extract_rooted(const Tree& host, const std::vector<int>& verts, int root) {
    std::vector<int> sorted(verts);
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> pos(host.size(), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) pos[sorted[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : host.edges())
        if (pos[u] >= 0 && pos[v] >= 0) edges.emplace_back(pos[u], pos[v]);
    return {Tree::build(static_cast<int>(sorted.size()), edges), pos[root]};
}

} // namespace

bool rooted_prunable_to(const Tree& big, int broot, const Tree& small, int sroot) {
    if (small.size() > big.size()) return false;
    EmbedContext ctx;
    ctx.small_children = rooted_children(small, sroot);
    ctx.big_children = rooted_children(big, broot);
    ctx.memo.assign(small.size(), std::vector<signed char>(big.size(), -1));
    return ctx.embed(sroot, broot);
}

namespace {

// s_{T_i}(lambda) values along a path prefix, then the ratio recursion
// F_1 = s_1, F_i = s_i - 1/F_{i-1}
std::vector<double> prefix_ratio_recursion(const PathDecomposition& d, double lambda, int count) {
    std::vector<double> f;
    f.reserve(count);
    for (int i = 0; i < count; ++i) {
        ResolventFn r = ResolventFn::from_decomposition(d, i);
        if (!r.clears(lambda)) throw NearSingularShift("margin violated in ratio recursion");
        const double s = d.host.degree(d.path[i]) - lambda - f_T(r, lambda);
        if (i == 0) {
            f.push_back(s);
        } else {
            if (std::abs(f.back()) <= 1e-12) throw ZeroPivot("ratio recursion pivot vanished");
            f.push_back(s - 1.0 / f.back());
        }
    }
    return f;
}

struct VerticalCheck {
    bool hypothesis = true;
    int bad_index = -1;        // 1-based vertical index failing the embedding
    bool recursion_ok = true;
    int strict_from = -1;
    std::vector<double> f_vertical;
};

VerticalCheck check_vertical(const Tree& t, const PathDecomposition& hd,
                             const std::vector<int>& vertical, double lambda,
                             const std::vector<double>& f_horiz) {
    VerticalCheck out;
    auto vd = decompose_along_path(t, vertical);
    const int l = static_cast<int>(vertical.size());
    for (int i = 0; i + 1 < l; ++i) {
        auto [vt, vroot] = extract_rooted(t, vd.subtrees[i], vertical[i]);
        auto [ht, hroot] = extract_rooted(t, hd.subtrees[i], hd.path[i]);
        if (!rooted_prunable_to(ht, hroot, vt, vroot)) {
            out.hypothesis = false;
            out.bad_index = i + 1;
            return out;
        }
        if (out.strict_from < 0 && vt.size() < ht.size()) out.strict_from = i + 1;
    }
    try {
        out.f_vertical = prefix_ratio_recursion(vd, lambda, l - 1);
    } catch (const Error&) {
        out.recursion_ok = false;
        return out;
    }
    for (int i = 0; i + 1 < l; ++i) {
        if (!(out.f_vertical[i] > 0.0) || f_horiz[i] > out.f_vertical[i] + 1e-12) {
            out.recursion_ok = false;
            return out;
        }
    }
    return out;
}

} // namespace

LConfigResult l_configuration_check(const Tree& t, const std::vector<int>& horizontal,
                                    const std::vector<int>& vertical, double lambda) {
    LConfigResult res;
    const int k = static_cast<int>(horizontal.size());
    const int l = static_cast<int>(vertical.size());
    if (k < 2 || l < 2) throw BadGeometry("l_configuration: paths need >= 2 vertices");
    if (vertical.back() != horizontal.back())
        throw BadGeometry("l_configuration: vertical path must end at v_k");
    if (l > k) throw BadGeometry("l_configuration: vertical path longer than horizontal");
    for (int i = 0; i + 1 < l; ++i)
        for (int h : horizontal)
            if (vertical[i] == h)
                throw BadGeometry("l_configuration: paths share more than v_k");

    auto hd = decompose_along_path(t, horizontal);

    // zeta condition from the horizontal prefix
    double zeta_lower = 0.0;
    try {
        auto eb = eps_bounds_exact(hd, lambda, k - 1);
        if (!(eb.min_eps > 0.0 && eb.max_eps < 2.0)) {
            res.detail = "eps outside (0,2)";
            return res;
        }
        zeta_lower = zeta_from_eps(eb.max_eps);
    } catch (const Error& e) {
        res.detail = std::string("eps bounds unavailable: ") + e.what();
        return res;
    }
    if (!(k <= M_PI / zeta_lower + 0.5 + 1e-9)) {
        res.detail = "k exceeds pi/zeta + 1/2";
        return res;
    }

    std::vector<double> f_horiz;
    try {
        f_horiz = prefix_ratio_recursion(hd, lambda, k - 1);
    } catch (const Error& e) {
        res.detail = std::string("horizontal recursion failed: ") + e.what();
        return res;
    }
    for (double f : f_horiz)
        if (!(f > 0.0 && f <= 1.0 + 1e-12)) {
            res.detail = "horizontal ratios leave (0, 1]";
            return res;
        }
    res.f_horizontal = f_horiz;

    auto vc = check_vertical(t, hd, vertical, lambda, f_horiz);
    if (!vc.hypothesis) {
        res.verdict = LConfigVerdict::hypothesis_unmet;
        res.detail = "vertical subtree " + std::to_string(vc.bad_index) +
                     " is not a pruning of its horizontal counterpart";
        return res;
    }
    if (!vc.recursion_ok) {
        res.detail = "vertical recursion not positive or not dominating";
        return res;
    }
    res.f_vertical = vc.f_vertical;
    res.strict = vc.strict_from >= 0;
    res.strict_from = vc.strict_from;
    res.verdict = LConfigVerdict::certified;

    // extension to the whole branch when it is shallow enough
    const auto& tk = hd.subtrees[k - 1];
    std::vector<char> in_tk(t.size(), 0);
    for (int v : tk) in_tk[v] = 1;
    // branch containing the vertical path
    std::vector<int> branch;
    {
        std::vector<int> stack{vertical[l - 2]};
        std::vector<char> seen(t.size(), 0);
        seen[horizontal.back()] = 1;
        seen[vertical[l - 2]] = 1;
        branch.push_back(vertical[l - 2]);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : t.neighbors(u))
                if (in_tk[w] && !seen[w]) {
                    seen[w] = 1;
                    branch.push_back(w);
                    stack.push_back(w);
                }
        }
        branch.push_back(horizontal.back());
    }
    auto [bt, broot] = extract_rooted(t, branch, horizontal.back());
    if (bt.diameter() <= k - 1) {
        bool all_ok = true;
        for (int p = 0; p < bt.size() && all_ok; ++p) {
            if (p == broot || bt.degree(p) != 1) continue;
            // map back to host labels
            std::vector<int> sorted(branch);
            std::sort(sorted.begin(), sorted.end());
            int host_p = sorted[p];
            auto vp = t.path_between(host_p, horizontal.back());
            if (static_cast<int>(vp.size()) > k) {
                all_ok = false;
                break;
            }
            auto sub = check_vertical(t, hd, vp, lambda, f_horiz);
            if (!sub.hypothesis || !sub.recursion_ok) all_ok = false;
        }
        res.extends_to_branch = all_ok;
    }
    return res;
}

namespace {

CensusRow make_row(std::uint64_t index, const Tree& t) {
    auto rep = fiedler_report(t);
    CensusRow row;
    row.index = index;
    row.n = t.size();
    std::ostringstream es;
    for (std::size_t i = 0; i < t.edges().size(); ++i) {
        if (i) es << ';';
        es << t.edges()[i].first << '-' << t.edges()[i].second;
    }
    row.edges = es.str();
    row.a = rep.a;
    row.simple = rep.simple;
    row.fed = rep.fed_string();
    row.witness = rep.fed_witness;
    row.argmax = rep.argmax;
    row.argmin = rep.argmin;
    row.lp_start = rep.longest_path.front();
    row.lp_end = rep.longest_path.back();
    return row;
}

} // namespace

CensusResult fed_census(const CensusSpec& spec) {
    CensusResult out;
    if (spec.exhaustive) {
        if (spec.max_n < 2) return out;
        std::vector<std::pair<int, std::uint64_t>> items;   // (n, index within n)
        for (int n = 2; n <= spec.max_n; ++n) {
            const std::uint64_t c = labeled_tree_count(n);
            for (std::uint64_t i = 0; i < c; ++i) items.emplace_back(n, i);
        }
        out.rows.resize(items.size());
        const std::int64_t total = static_cast<std::int64_t>(items.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, spec.jobs)) \
    if (spec.jobs > 1)
#endif
        for (std::int64_t f = 0; f < total; ++f) {
            auto [n, idx] = items[static_cast<std::size_t>(f)];
            out.rows[static_cast<std::size_t>(f)] =
                make_row(static_cast<std::uint64_t>(f), labeled_tree_by_index(n, idx));
        }
    } else {
        if (spec.size < 2) throw BadSpec("random census needs size >= 2");
        out.rows.resize(spec.count);
        const std::int64_t total = spec.count;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(1, spec.jobs)) \
    if (spec.jobs > 1)
#endif
        for (std::int64_t f = 0; f < total; ++f) {
            // per-index stream so the result is independent of the job count
            Rng rng(spec.seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(f) + 1));
            std::vector<int> seq(spec.size - 2);
            for (int& s : seq) s = rng.below(spec.size);
            out.rows[static_cast<std::size_t>(f)] =
                make_row(static_cast<std::uint64_t>(f), pruefer_decode(spec.size, seq));
        }
    }
    for (const auto& row : out.rows) {
        if (row.fed == "holds")
            ++out.holds;
        else if (row.fed.rfind("fails", 0) == 0)
            ++out.fails;
        else
            ++out.not_applicable;
    }
    return out;
}

std::string census_csv(const CensusResult& result, const std::string& invocation) {
    std::ostringstream os;
    os << "# " << invocation << "\n";
    os << "index,n,edges,a,simple,fed,witness,max_ids,min_ids,lp_start,lp_end\n";
    auto join = [](const std::vector<int>& v) {
        std::ostringstream s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s << ';';
            s << v[i];
        }
        return s.str();
    };
    for (const auto& r : result.rows) {
        os << r.index << ',' << r.n << ',' << r.edges << ',' << format12(r.a) << ','
           << (r.simple ? 1 : 0) << ',' << r.fed << ',';
        if (r.witness >= 0) os << r.witness;
        os << ',' << join(r.argmax) << ',' << join(r.argmin) << ',' << r.lp_start << ','
           << r.lp_end << "\n";
    }
    os << "# summary holds=" << result.holds << " fails=" << result.fails
       << " not_applicable=" << result.not_applicable << "\n";
    return os.str();
}

std::string report_json(const Tree& t, const FiedlerReport& rep, const std::string& invocation) {
    nlohmann::ordered_json j;
    j["invocation"] = invocation;
    j["n"] = rep.n;
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : t.edges()) edges.push_back({u, v});
    j["tree"] = edges;
    j["a"] = round12(rep.a);
    j["simple"] = rep.simple;
    auto vec = nlohmann::ordered_json::array();
    for (double x : rep.vector) vec.push_back(round12(x));
    j["vector"] = vec;
    j["extrema"] = {{"max", rep.argmax}, {"min", rep.argmin}};
    j["longest_path"] = rep.longest_path;
    j["fed"] = rep.fed_string();
    bool all_pendant = rep.simple;
    for (std::size_t i = 0; i < rep.argmax_pendant.size() && all_pendant; ++i)
        all_pendant = rep.argmax_pendant[i];
    for (std::size_t i = 0; i < rep.argmin_pendant.size() && all_pendant; ++i)
        all_pendant = rep.argmin_pendant[i];
    j["conditions"] = {{"extrema_all_pendant", all_pendant}};
    return j.dump(2) + "\n";
}

} // namespace spectree
