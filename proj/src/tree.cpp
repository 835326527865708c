#include "spectree/tree.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace spectree {

Tree Tree::build(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw NotATree("vertex count must be >= 1");
    if (static_cast<int>(edges.size()) != n - 1)
        throw NotATree("a tree on " + std::to_string(n) + " vertices needs " +
                       std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
    std::vector<std::vector<int>> adj(n);
    std::vector<std::vector<bool>> seen;   // only for small n; use sorted pairs otherwise
    std::vector<std::pair<int, int>> canon;
    canon.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw BadLabel("edge endpoint out of [0, n)");
        if (u == v) throw NotATree("self-loop at " + std::to_string(u));
        canon.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(canon.begin(), canon.end());
    if (std::adjacent_find(canon.begin(), canon.end()) != canon.end())
        throw NotATree("duplicate edge");
    for (auto [u, v] : canon) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    // connectivity; edge count already pins the cycle-free part
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u])
            if (!vis[w]) {
                vis[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != n) throw NotATree("graph is not connected");
    return Tree(n, std::move(canon), std::move(adj));
}

const std::vector<int>& Tree::neighbors(int v) const {
    if (v < 0 || v >= n_) throw BadVertex("vertex " + std::to_string(v) + " out of range");
    return adj_[v];
}

int Tree::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool Tree::has_edge(int u, int v) const {
    const auto& a = neighbors(u);
    return std::binary_search(a.begin(), a.end(), v) && v != u;
}

std::vector<int> Tree::bfs_distances(int src) const {
    if (src < 0 || src >= n_) throw BadVertex("bfs source out of range");
    std::vector<int> dist(n_, -1);
    dist[src] = 0;
    std::queue<int> q;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : adj_[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

int Tree::distance(int u, int v) const { return bfs_distances(u)[v]; }

int Tree::diameter() const {
    // double BFS is exact on trees
    auto d0 = bfs_distances(0);
    int u = static_cast<int>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto du = bfs_distances(u);
    return *std::max_element(du.begin(), du.end());
}

std::vector<int> Tree::path_between(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) throw BadVertex("path endpoint out of range");
    std::vector<int> parent(n_, -1), dist(n_, -1);
    dist[u] = 0;
    std::queue<int> q;
    q.push(u);
    while (!q.empty()) {
        int a = q.front();
        q.pop();
        for (int w : adj_[a])
            if (dist[w] < 0) {
                dist[w] = dist[a] + 1;
                parent[w] = a;
                q.push(w);
            }
    }
    std::vector<int> path{v};
    while (path.back() != u) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<int> Tree::longest_path() const {
    if (n_ == 1) return {0};
    int d = diameter();
    // lexicographically smallest (min,max) endpoint pair realizing d
    std::pair<int, int> best{-1, -1};
    for (int u = 0; u < n_; ++u) {
        auto du = bfs_distances(u);
        for (int v = u + 1; v < n_; ++v)
            if (du[v] == d) {
                if (best.first < 0 || std::make_pair(u, v) < best) best = {u, v};
                break;   // v ascending: first hit is smallest for this u
            }
        if (best.first == u) break;   // no smaller first endpoint can appear later
    }
    return path_between(best.first, best.second);
}

bool Tree::longest_path_unique() const {
    if (n_ == 1) return true;
    int d = diameter();
    int count = 0;
    for (int u = 0; u < n_ && count < 2; ++u) {
        auto du = bfs_distances(u);
        for (int v = u + 1; v < n_ && count < 2; ++v)
            if (du[v] == d) ++count;
    }
    return count == 1;
}

std::vector<int> Tree::pendant_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
        if (adj_[v].size() == 1) out.push_back(v);
    return out;
}

std::string Tree::to_edge_list() const {
    std::ostringstream os;
    os << n_ << "\n";
    for (auto [u, v] : edges_) os << u << " " << v << "\n";
    return os.str();
}

Tree Tree::from_edge_list(const std::string& text) {
    std::istringstream is(text);
    int n = 0;
    if (!(is >> n)) throw NotATree("edge list: missing vertex count");
    std::vector<std::pair<int, int>> edges;
    int u, v;
    while (is >> u >> v) edges.emplace_back(u, v);
    return build(n, edges);
}

std::string Tree::to_dot() const {
    std::ostringstream os;
    os << "graph tree {\n";
    for (int v = 0; v < n_; ++v) os << "  " << v << ";\n";
    for (auto [u, v] : edges_) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
    return os.str();
}

int PathDecomposition::subtree_degree(int i) const {
    int d = 0;
    for (double f : f_vectors[i])
        if (f != 0.0) ++d;
    return d;
}

PathDecomposition decompose_along_path(const Tree& t, const std::vector<int>& path) {
    const int n = t.size();
    const int k = static_cast<int>(path.size());
    if (k < 1) throw NotAPath("empty path");
    std::vector<char> onpath(n, 0);
    for (int v : path) {
        if (v < 0 || v >= n) throw BadVertex("path vertex out of range");
        if (onpath[v]) throw NotAPath("repeated path vertex " + std::to_string(v));
        onpath[v] = 1;
    }
    for (int i = 0; i + 1 < k; ++i)
        if (!t.has_edge(path[i], path[i + 1]))
            throw NotAPath("vertices " + std::to_string(path[i]) + " and " +
                           std::to_string(path[i + 1]) + " are not adjacent");

    // cut the k-1 path edges; the component of v_i is T_i
    std::vector<int> comp(n, -1);
    for (int i = 0; i < k; ++i) {
        comp[path[i]] = i;
        std::vector<int> stack{path[i]};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : t.neighbors(u)) {
                if (onpath[w] || comp[w] >= 0) continue;
                comp[w] = i;
                stack.push_back(w);
            }
        }
    }

    PathDecomposition d{t, path, {}, {}};
    d.subtrees.assign(k, {});
    for (int v = 0; v < n; ++v) d.subtrees[comp[v]].push_back(v);
    d.f_vectors.assign(k, {});
    for (int i = 0; i < k; ++i) {
        const int root = path[i];
        for (int v : d.subtrees[i]) {
            if (v == root) continue;
            d.f_vectors[i].push_back(t.has_edge(root, v) ? -1.0 : 0.0);
        }
    }
    return d;
}

std::vector<int> pruefer_encode(const Tree& t) {
    const int n = t.size();
    if (n < 2) throw BadSpec("pruefer encoding needs n >= 2");
    std::vector<int> deg(n);
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : t.edges()) {
        adj[u].push_back(v);
        adj[v].push_back(u);
        ++deg[u];
        ++deg[v];
    }
    std::vector<char> removed(n, 0);
    std::vector<int> seq;
    seq.reserve(n - 2);
    // strip the smallest leaf n-2 times
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.push(v);
    for (int step = 0; step < n - 2; ++step) {
        int leaf = leaves.top();
        leaves.pop();
        removed[leaf] = 1;
        int parent = -1;
        for (int w : adj[leaf])
            if (!removed[w]) parent = w;
        seq.push_back(parent);
        if (--deg[parent] == 1) leaves.push(parent);
    }
    return seq;
}

Tree pruefer_decode(int n, const std::vector<int>& seq) {
    if (n < 1) throw BadSpec("pruefer decode needs n >= 1");
    if (n == 1) return Tree::build(1, {});
    if (static_cast<int>(seq.size()) != n - 2)
        throw BadSpec("pruefer sequence must have length n-2");
    std::vector<int> deg(n, 1);
    for (int a : seq) {
        if (a < 0 || a >= n) throw BadLabel("pruefer entry out of range");
        ++deg[a];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.push(v);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(n - 1);
    for (int a : seq) {
        int leaf = leaves.top();
        leaves.pop();
        edges.emplace_back(leaf, a);
        if (--deg[a] == 1) leaves.push(a);
    }
    int u = leaves.top();
    leaves.pop();
    int v = leaves.top();
    edges.emplace_back(u, v);
    return Tree::build(n, edges);
}

} // namespace spectree
