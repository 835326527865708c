#include "spectree/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spectree/bounds.hpp"
#include "spectree/families.hpp"
#include "spectree/fiedler.hpp"
#include "spectree/oracle.hpp"

namespace spectree {

namespace {

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

Tree load_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return Tree::from_edge_list(ss.str());
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

int cmd_gen(const std::string& family, std::uint64_t seed, const std::string& s_tree,
            const std::string& out_path, const std::string& dot_path) {
    FamilySpec spec = parse_family(family);
    spec.seed = seed;
    if (spec.kind == FamilySpec::Kind::s_caterpillar) {
        if (s_tree.empty()) throw BadSpec("scater needs --s-tree");
        spec.s = load_tree(s_tree);
    }
    Tree t = generate(spec);
    std::string invocation = "spectree gen --family " + family + " --seed " +
                             std::to_string(seed) + " --out " + out_path;
    std::cout << "# " << invocation << "\n";
    std::cout << "# n=" << t.size() << " diameter=" << t.diameter() << "\n";
    write_file(out_path, t.to_edge_list());
    if (!dot_path.empty()) write_file(dot_path, t.to_dot());
    return 0;
}

int cmd_analyze(const std::string& in_path, const std::string& json_path) {
    Tree t = load_tree(in_path);
    auto rep = fiedler_report(t);
    std::string invocation = "spectree analyze --in " + in_path;
    std::string json = report_json(t, rep, invocation);
    if (json_path.empty())
        std::cout << json;
    else
        write_file(json_path, json);
    return 0;
}

int cmd_bounds(const std::string& in_path, const std::string& path_arg, const std::string& mode) {
    Tree t = load_tree(in_path);
    auto path = parse_int_list(path_arg);
    auto d = decompose_along_path(t, path);
    auto rep = fiedler_report(t);
    if (!rep.simple) throw NotSimple("bounds: a(T) is not simple");
    auto env = ratio_sandwich(d, rep.a, mode == "norm" ? EpsMode::norm : EpsMode::exact);
    std::cout << "# spectree bounds --in " << in_path << " --path " << path_arg << " --mode "
              << mode << "\n";
    std::cout << "# lambda=" << fmt12(rep.a) << " eps=[" << fmt12(env.eps_min) << ","
              << fmt12(env.eps_max) << "] horizon=" << fmt12(env.horizon) << "\n";
    std::cout << "i,ratio_lower,oracle_ratio,ratio_upper,cum_lower,oracle_cum,cum_upper\n";
    const auto& x = rep.vector;
    double x1 = x[path[0]];
    const double sgn = x1 >= 0.0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < env.indices.size(); ++j) {
        const int i = env.indices[j];
        const double xi = sgn * x[path[i - 1]];
        const double xi1 = sgn * x[path[i]];
        std::cout << i << ',' << fmt12(env.ratio_lower[j]) << ',' << fmt12(xi1 / xi) << ','
                  << fmt12(env.ratio_upper[j]) << ',' << fmt12(env.cum_lower[j]) << ','
                  << fmt12(xi1 / (sgn * x1)) << ',' << fmt12(env.cum_upper[j]) << "\n";
    }
    return 0;
}

int cmd_rose(int l, int t, int r, const std::string& sweep) {
    if (sweep.empty()) {
        auto an = rose_analysis(l, t, r);
        std::cout << "# spectree rose --l " << l << " --t " << t << " --r " << r << "\n";
        std::cout << "a=" << fmt12(an.a) << " simple=" << an.simple << " fed=" << [&] {
            FiedlerReport rep;
            rep.fed = an.fed;
            rep.fed_reason = "see analyze";
            return rep.fed_string();
        }() << "\n";
        std::cout << "g_path(a)=" << fmt12(an.g_path_at_a) << " g_star(a)=" << fmt12(an.g_star_at_a)
                  << "\n";
        std::cout << "alsosuff=" << an.cond_alsosuff << " sufffirst=" << an.cond_sufffirst
                  << " suffsnd=" << an.cond_suffsnd << "\n";
        if (an.perfect)
            std::cout << "perfect_rose a_predicted=" << fmt12(an.perfect_a_predicted)
                      << " error=" << fmt12(an.perfect_a_error)
                      << " star_entry_max=" << fmt12(an.star_entry_max) << "\n";
        std::cout << "max_on_star=" << an.max_on_star << "\n";
        return 0;
    }
    auto dots = sweep.find("..");
    if (dots == std::string::npos) throw BadParams("--sweep-t wants A..B");
    int from = std::stoi(sweep.substr(0, dots));
    int to = std::stoi(sweep.substr(dots + 2));
    auto sw = rose_sweep(l, r, from, to);
    std::cout << "# spectree rose --l " << l << " --r " << r << " --sweep-t " << sweep << "\n";
    if (sw.first_max_on_star < 0) {
        std::cout << "no t in [" << from << "," << to << "] moves the maximum onto the star\n";
    } else {
        std::cout << "first_failing_t=" << sw.first_max_on_star << "\n";
    }
    return 0;
}

int cmd_census(int max_n, int random_count, int size, std::uint64_t seed, int jobs,
               const std::string& csv_path) {
    CensusSpec spec;
    std::string invocation;
    if (random_count > 0) {
        spec.exhaustive = false;
        spec.count = random_count;
        spec.size = size;
        spec.seed = seed;
        invocation = "spectree census --random " + std::to_string(random_count) + " --size " +
                     std::to_string(size) + " --seed " + std::to_string(seed);
    } else {
        if (max_n < 2) throw BadSpec("census needs --max-n or --random");
        spec.exhaustive = true;
        spec.max_n = max_n;
        invocation = "spectree census --max-n " + std::to_string(max_n);
    }
    spec.jobs = jobs;
    auto result = fed_census(spec);
    auto csv = census_csv(result, invocation);
    if (csv_path.empty())
        std::cout << csv;
    else
        write_file(csv_path, csv);
    return 0;
}

int cmd_verify(const std::string& suite, int max_n, std::uint64_t seed, int jobs,
               const std::string& out_path) {
    VerifyOptions opt;
    opt.max_n = max_n;
    opt.seed = seed;
    opt.jobs = jobs;
    std::vector<VerificationRecord> records;
    auto append = [&](std::vector<VerificationRecord> r) {
        records.insert(records.end(), r.begin(), r.end());
    };
    if (suite == "all" || suite == "schur") append(verify_suite_schur(opt));
    if (suite == "all" || suite == "bounds") append(verify_suite_bounds(opt));
    if (suite == "all" || suite == "fiedler") append(verify_suite_fiedler(opt));
    std::ostringstream os;
    bool all_pass = true;
    for (const auto& r : records) {
        os << r.to_json() << "\n";
        all_pass = all_pass && r.pass;
    }
    if (out_path.empty())
        std::cout << os.str();
    else
        write_file(out_path, os.str());
    std::cout << (all_pass ? "# verify: all records pass\n" : "# verify: FAILURES present\n");
    return all_pass ? 0 : 1;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"tree Laplacian spectral analysis toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a tree from a family spec");
    std::string family, s_tree, out_path, dot_path;
    std::uint64_t seed = 0;
    gen->add_option("--family", family, "family spec, e.g. path:5, rose:3,3,4")->required();
    gen->add_option("--seed", seed, "seed for random families");
    gen->add_option("--s-tree", s_tree, "edge-list file with the S tree for scater");
    gen->add_option("--out", out_path, "edge-list output file")->required();
    gen->add_option("--dot", dot_path, "DOT output file");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Fiedler report for a tree");
    std::string in_path, json_path;
    analyze->add_option("--in", in_path, "edge-list input file")->required();
    analyze->add_option("--json", json_path, "write the JSON report here");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "ratio envelope along a path at a(T)");
    std::string bounds_in, path_arg, mode = "exact";
    bounds->add_option("--in", bounds_in, "edge-list input file")->required();
    bounds->add_option("--path", path_arg, "comma separated path vertices")->required();
    bounds->add_option("--mode", mode, "exact|norm")->check(CLI::IsMember({"exact", "norm"}));

    // rose
    auto* rose = app.add_subcommand("rose", "Fiedler rose analysis");
    int rl = 0, rt = 2, rr = 0;
    std::string sweep;
    rose->add_option("--l", rl, "P_l length")->required();
    rose->add_option("--t", rt, "P_t length");
    rose->add_option("--r", rr, "star size")->required();
    rose->add_option("--sweep-t", sweep, "sweep range A..B for t");

    // census
    auto* census = app.add_subcommand("census", "FED census over tree collections");
    int max_n = 0, random_count = 0, size = 0, jobs = 1;
    std::uint64_t census_seed = 0;
    census->add_option("--max-n", max_n, "exhaustive census over all labeled trees up to n");
    census->add_option("--random", random_count, "random census: number of trees");
    census->add_option("--size", size, "random census: vertices per tree");
    census->add_option("--seed", census_seed, "random census seed");
    census->add_option("--jobs", jobs, "worker threads (output independent of this)");
    std::string csv_path;
    census->add_option("--csv", csv_path, "CSV output file");

    // verify
    auto* verify = app.add_subcommand("verify", "oracle verification suites");
    std::string suite = "all";
    int verify_max_n = 8, verify_jobs = 1;
    std::uint64_t verify_seed = 20240801;
    std::string verify_out;
    verify->add_option("--suite", suite, "all|schur|bounds|fiedler")
        ->check(CLI::IsMember({"all", "schur", "bounds", "fiedler"}));
    verify->add_option("--max-n", verify_max_n, "exhaustive cap (<= 9)");
    verify->add_option("--seed", verify_seed, "seed for sampled batteries");
    verify->add_option("--jobs", verify_jobs, "worker threads");
    verify->add_option("--out", verify_out, "JSON-lines output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);   // --help
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(family, seed, s_tree, out_path, dot_path);
        if (analyze->parsed()) return cmd_analyze(in_path, json_path);
        if (bounds->parsed()) return cmd_bounds(bounds_in, path_arg, mode);
        if (rose->parsed()) return cmd_rose(rl, rt, rr, sweep);
        if (census->parsed())
            return cmd_census(max_n, random_count, size, census_seed, jobs, csv_path);
        if (verify->parsed())
            return cmd_verify(suite, verify_max_n, verify_seed, verify_jobs, verify_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.emplace_back("spectree");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    argv.reserve(full.size());
    for (auto& s : full) argv.push_back(s.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace spectree
