#include "spectree/families.hpp"

#include <numeric>
#include <sstream>

#include "spectree/rng.hpp"

namespace spectree {

FamilySpec FamilySpec::path(int n) {
    FamilySpec s;
    s.kind = Kind::path;
    s.n = n;
    return s;
}

FamilySpec FamilySpec::star(int n) {
    FamilySpec s;
    s.kind = Kind::star;
    s.n = n;
    return s;
}

FamilySpec FamilySpec::caterpillar(std::vector<int> leaf_counts) {
    FamilySpec s;
    s.kind = Kind::caterpillar;
    s.k = static_cast<int>(leaf_counts.size());
    s.leaf_counts = std::move(leaf_counts);
    return s;
}

FamilySpec FamilySpec::s_caterpillar(Tree host, int root, int k) {
    FamilySpec s;
    s.kind = Kind::s_caterpillar;
    s.s = std::move(host);
    s.s_root = root;
    s.k = k;
    return s;
}

FamilySpec FamilySpec::fiedler_rose(int l, int t, int r) {
    FamilySpec s;
    s.kind = Kind::fiedler_rose;
    s.l = l;
    s.t = t;
    s.r = r;
    return s;
}

FamilySpec FamilySpec::random_pruefer(int n, std::uint64_t seed) {
    FamilySpec s;
    s.kind = Kind::random_pruefer;
    s.n = n;
    s.seed = seed;
    return s;
}

namespace {

Tree make_path(int n) {
    if (n < 1) throw BadSpec("path needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Tree::build(n, edges);
}

Tree make_star(int n) {
    if (n < 1) throw BadSpec("star needs n >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
    return Tree::build(n, edges);
}

Tree make_caterpillar(const std::vector<int>& m) {
    const int k = static_cast<int>(m.size());
    if (k < 1) throw BadSpec("caterpillar needs k >= 1");
    for (int c : m)
        if (c < 0) throw BadSpec("caterpillar leaf counts must be >= 0");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
    int next = k;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m[i]; ++j) edges.emplace_back(i, next++);
    return Tree::build(next, edges);
}

Tree make_s_caterpillar(const Tree& s, int root, int k) {
    if (k < 1) throw BadSpec("s_caterpillar needs k >= 1");
    if (root < 0 || root >= s.size()) throw BadSpec("s_caterpillar root out of range");
    if (s.size() < 2 || s.degree(root) != 1)
        throw BadSpec("s_caterpillar root must be a pendant vertex of S");
    const int extra = s.size() - 1;   // vertices each copy adds
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
    for (int i = 0; i < k; ++i) {
        // copy i: vertex v of S (v != root) maps to k + i*extra + rank(v)
        auto map = [&](int v) {
            if (v == root) return i;
            int rank = v < root ? v : v - 1;
            return k + i * extra + rank;
        };
        for (auto [u, v] : s.edges()) edges.emplace_back(map(u), map(v));
    }
    return Tree::build(k + k * extra, edges);
}

Tree make_rose(int l, int t, int r) {
    if (l < 2 || t < 2 || r < 2) throw BadSpec("fiedler_rose needs l, t, r >= 2");
    const int glue = l - 1;
    const int center = l;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < l; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(glue, center);
    for (int j = 0; j < r - 2; ++j) edges.emplace_back(center, l + 1 + j);
    int prev = glue;
    for (int j = 0; j < t - 1; ++j) {
        int v = l + r - 1 + j;
        edges.emplace_back(prev, v);
        prev = v;
    }
    return Tree::build(l + t + r - 2, edges);
}

} // namespace

Tree generate(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilySpec::Kind::path:
            return make_path(spec.n);
        case FamilySpec::Kind::star:
            return make_star(spec.n);
        case FamilySpec::Kind::caterpillar:
            return make_caterpillar(spec.leaf_counts);
        case FamilySpec::Kind::s_caterpillar:
            if (!spec.s) throw BadSpec("s_caterpillar needs a host tree");
            return make_s_caterpillar(*spec.s, spec.s_root, spec.k);
        case FamilySpec::Kind::fiedler_rose:
            return make_rose(spec.l, spec.t, spec.r);
        case FamilySpec::Kind::random_pruefer: {
            if (spec.n < 1) throw BadSpec("random tree needs n >= 1");
            if (spec.n <= 2) return make_path(spec.n);
            Rng rng(spec.seed);
            std::vector<int> seq(spec.n - 2);
            for (int& a : seq) a = rng.below(spec.n);
            return pruefer_decode(spec.n, seq);
        }
    }
    throw BadSpec("unknown family");
}

FamilySpec parse_family(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::vector<int> args;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                args.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw BadSpec("bad family parameter '" + tok + "'");
            }
        }
    }
    auto need = [&](std::size_t c) {
        if (args.size() != c)
            throw BadSpec("family '" + kind + "' takes " + std::to_string(c) + " parameters");
    };
    if (kind == "path") {
        need(1);
        return FamilySpec::path(args[0]);
    }
    if (kind == "star") {
        need(1);
        return FamilySpec::star(args[0]);
    }
    if (kind == "caterpillar") {
        if (args.empty()) throw BadSpec("caterpillar needs leaf counts");
        return FamilySpec::caterpillar(args);
    }
    if (kind == "rose") {
        need(3);
        return FamilySpec::fiedler_rose(args[0], args[1], args[2]);
    }
    if (kind == "random") {
        need(1);
        return FamilySpec::random_pruefer(args[0], 0);
    }
    if (kind == "scater") {
        need(2);
        FamilySpec s;
        s.kind = FamilySpec::Kind::s_caterpillar;
        s.k = args[0];
        s.s_root = args[1];
        return s;   // host tree attached by the caller
    }
    throw BadSpec("unknown family '" + kind + "'");
}

std::vector<int> rose_star_vertices(int l, int t, int r) {
    (void)t;
    std::vector<int> out{l - 1, l};   // glue, center
    for (int j = 0; j < r - 2; ++j) out.push_back(l + 1 + j);
    return out;
}

std::vector<int> rose_star_pendants(int l, int t, int r) {
    (void)t;
    std::vector<int> out;
    if (r == 2) out.push_back(l);   // the lone extra vertex is pendant
    for (int j = 0; j < r - 2; ++j) out.push_back(l + 1 + j);
    return out;
}

} // namespace spectree
