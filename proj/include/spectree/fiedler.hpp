// Fiedler vector computation and the structural criteria: extrema location,
// the FED property, caterpillar predictions, the rose family, star grafting
// and L-configuration certificates.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectree/bounds.hpp"
#include "spectree/tree.hpp"

namespace spectree {

enum class FedVerdict { holds, fails, not_applicable };

struct FiedlerReport {
    int n = 0;
    double a = 0.0;               // algebraic connectivity
    double lambda_max = 0.0;
    double spectral_gap = 0.0;    // lambda_3 - lambda_2 (inf for n = 2)
    bool simple = false;          // gap > 1e-8 * lambda_max
    // unit Fiedler vector, sign fixed so the entry at the smallest-labeled
    // pendant vertex is positive (first nonzero entry if that one is zero);
    // empty when not simple
    std::vector<double> vector;
    std::vector<int> argmax, argmin;            // within 1e-9 of the extremes
    std::vector<bool> argmax_pendant, argmin_pendant;
    std::vector<int> longest_path;
    bool longest_path_unique = false;
    FedVerdict fed = FedVerdict::not_applicable;
    int fed_witness = -1;                       // extremal vertex off the endpoints
    std::string fed_reason;                     // "non_simple" | "longest_path_tie" | ""

    std::string fed_string() const;
};

FiedlerReport fiedler_report(const Tree& t);   // n >= 2

// Profile of the Fiedler entries along a path: monotone, or a nonnegative
// valley (ends >= 0), or a nonpositive ridge (ends <= 0).
enum class PathProfile { monotone, valley, ridge };
PathProfile classify_path_profile(const FiedlerReport& rep, const std::vector<int>& path);

// Asserts argmax/argmin are pendant vertices. Requires rep.simple and
// d(T) >= 2 (NotSimple / PreconditionViolated).
bool check_pendant_extrema(const FiedlerReport& rep, const Tree& t);

struct CaterpillarExtrema {
    std::vector<int> spine;          // derived path: the non-pendant vertices
    std::vector<int> head_leaves;    // pendant set of T_1 (host leaves at spine front)
    std::vector<int> tail_leaves;    // pendant set of T_k
    bool consistent;                 // extreme values attained in those sets, one per side
};

// Caterpillar prediction: extreme values are attained at pendant vertices in
// the first and last spine stars. Throws NotCaterpillar / PreconditionViolated
// (needs d(T) >= 3) / NotSimple.
CaterpillarExtrema caterpillar_extrema(const Tree& t);

enum class GencaterVerdict { holds, fails, inconclusive };

struct GencaterResult {
    GencaterVerdict verdict = GencaterVerdict::inconclusive;
    double a = 0.0;
    bool simple = false;
    double g_w1 = 0.0, g_wk = 0.0;   // candidate ratios at a(T)
    double min_other = 0.0;          // min over competing pendants
    bool fed_follows = false;        // candidates unique -> FED
    std::string violated;            // the inequality that failed, if any
};

// Verifies hypothesis (a) (a(T) < lambda_min of every block, margin 1e-8;
// AssumptionAViolated otherwise), then the g-minimality hypothesis for the
// candidates, then cross-checks sign opposition and extremality against the
// spectrum. holds = hypothesis + conclusion verified; fails = hypothesis met
// but conclusion refuted; inconclusive = hypothesis not met.
GencaterResult gencater_check(const Tree& t, const PathDecomposition& d, int w1, int wk);

struct RoseAnalysis {
    int l = 0, t = 0, r = 0;
    double a = 0.0;
    bool simple = false;
    // closed forms evaluated at a(T) and at the diameter bound of a(T)
    double g_path_at_a = 0.0, g_star_at_a = 0.0;
    double g_path_at_bound = 0.0, g_star_at_bound = 0.0;
    bool cond_alsosuff = false;      // 1 - 1/(2r) <= cos(pi/(l+t-1))
    bool cond_sufffirst = false;     // g_path(a) < g_star(a) at the anchor
    bool cond_suffsnd = false;       // parameter-only sufficient condition
    bool perfect = false;            // t == l
    double perfect_a_predicted = 0.0;
    double perfect_a_error = 0.0;
    double star_entry_max = 0.0;     // max |x| over star vertices incl. glue
    bool star_dominates_deriv = false;  // r > (arm)(arm+1)/2 derivative route
    std::vector<int> abs_argmax;     // vertices attaining max |entry|
    std::vector<int> argmax;         // max signed entry (x at smallest pendant > 0)
    bool max_on_star = false;        // argmax inside the star pendants
    FedVerdict fed = FedVerdict::not_applicable;
};

RoseAnalysis rose_analysis(int l, int t, int r);   // l,t >= 2, r >= 2; BadParams

// Closed forms for the rose ratios (j counts path vertices from the pendant
// to the anchor inclusive): path side 2 cos((j-1/2) zeta)/sqrt(4-lambda)
// with zeta = arccos(1-lambda/2); star leaf to glue lambda^2 - r lambda + 1.
double rose_g_path_closed_form(int j, double lambda);
double rose_g_star_closed_form(int r, double lambda);

struct RoseSweep {
    int first_max_on_star = -1;      // smallest t whose signed max sits on a star pendant
    std::vector<int> failing_t;      // all swept t with max on star
};
RoseSweep rose_sweep(int l, int r, int t_from, int t_to);

struct StarGraftResult {
    Tree grafted;
    int glue = -1;                       // v_4 of the longest path
    std::vector<int> star_pendants;      // new pendant labels
    double deriv_path = 0.0;             // g'(0) along v_1..v_4
    double deriv_star = 0.0;             // -(r+1)
    double oracle_ratio = 0.0;           // x_{v_S}/x_{v_1} for the grafted tree
    bool asymptotic_only = true;         // prediction requires a(T) sufficiently small
};

// Glues S_r to the 4th vertex of the longest path (k = d+1 >= 7 required and
// -(r+1) < -3 - |V(T_2)| - 2|V(T_3)| must hold; PreconditionViolated else).
// The prediction x_{v_S}/x_{v_1} >= 1 is reported with its derivative
// evidence, never asserted.
StarGraftResult star_graft(const Tree& t, int r);

enum class LConfigVerdict { certified, hypothesis_unmet, inconclusive };

struct LConfigResult {
    LConfigVerdict verdict = LConfigVerdict::inconclusive;
    bool strict = false;
    int strict_from = -1;            // first vertical index with a proper-subtree witness
    bool extends_to_branch = false;  // d(T_{k,j}) <= k-1 and every vertical path certified
    std::string detail;
    std::vector<double> f_horizontal, f_vertical;   // the two ratio recursions at lambda
};

// Certifies x_1 >= x along the vertical path >= 0 for the eigenvalue lambda
// (x_1 > 0 side). Hypothesis: every vertical subtree embeds into its
// horizontal counterpart as a rooted pendant-pruning minor. Certification
// additionally re-verifies the ratio recursions numerically (positivity and
// domination); if those fail the verdict is inconclusive, never a false
// certificate.
LConfigResult l_configuration_check(const Tree& t, const std::vector<int>& horizontal,
                                    const std::vector<int>& vertical, double lambda);

// Rooted pendant-pruning minor test: can `small` (rooted at sroot) be
// obtained from `big` (rooted at broot) by repeatedly deleting pendant
// vertices other than the root, up to isomorphism.
bool rooted_prunable_to(const Tree& big, int broot, const Tree& small, int sroot);

struct CensusSpec {
    bool exhaustive = true;
    int max_n = 8;            // exhaustive mode: all labeled trees with 2..max_n vertices
    int count = 0;            // random mode: number of trees
    int size = 0;             // random mode: vertices per tree
    std::uint64_t seed = 0;
    int jobs = 1;
};

struct CensusRow {
    std::uint64_t index = 0;
    int n = 0;
    std::string edges;
    double a = 0.0;
    bool simple = false;
    std::string fed;
    int witness = -1;
    std::vector<int> argmax, argmin;
    int lp_start = -1, lp_end = -1;
};

struct CensusResult {
    std::vector<CensusRow> rows;
    std::uint64_t holds = 0, fails = 0, not_applicable = 0;
};

// Deterministic under fixed seed; row order is by input index regardless of
// the job count.
CensusResult fed_census(const CensusSpec& spec);

// Fixed field order, 12 significant digits; byte-identical for identical
// invocation + seed.
std::string census_csv(const CensusResult& result, const std::string& invocation);
std::string report_json(const Tree& t, const FiedlerReport& rep, const std::string& invocation);

} // namespace spectree
