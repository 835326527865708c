// Immutable labeled trees on dense vertex labels [0, n), plus the path
// decomposition used everywhere else: cutting a tree along a simple path
// v_1..v_k leaves one maximal subtree T_i hanging at each path vertex.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spectree/errors.hpp"

namespace spectree {

class Tree {
public:
    // Validates n >= 1, labels in [0,n), exactly n-1 edges, connectivity,
    // no self-loops or duplicates. Throws NotATree / BadLabel.
    static Tree build(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const;
    bool has_edge(int u, int v) const;

    std::vector<int> bfs_distances(int src) const;
    int distance(int u, int v) const;
    int diameter() const;
    // Unique u-v path, endpoints included.
    std::vector<int> path_between(int u, int v) const;
    // A path realizing the diameter. Ties broken by the lexicographically
    // smallest endpoint pair (the path between two vertices is unique in a
    // tree, so endpoints settle everything). Oriented small label first.
    std::vector<int> longest_path() const;
    // True if exactly one unordered vertex pair realizes the diameter.
    bool longest_path_unique() const;
    std::vector<int> pendant_vertices() const;

    // Edge-list text format: first line "n", then one "u v" line per edge.
    std::string to_edge_list() const;
    static Tree from_edge_list(const std::string& text);
    std::string to_dot() const;

private:
    Tree(int n, std::vector<std::pair<int, int>> edges, std::vector<std::vector<int>> adj)
        : n_(n), edges_(std::move(edges)), adj_(std::move(adj)) {}

    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

// Fixed path v_1..v_k plus, for each i, the vertex set of the maximal
// attached subtree T_i (contains v_i, sorted ascending) and the 0/-1
// incidence vector f_i over V(T_i)\{v_i} (sorted order) marking the
// neighbors of v_i inside T_i.
struct PathDecomposition {
    Tree host;
    std::vector<int> path;
    std::vector<std::vector<int>> subtrees;
    std::vector<std::vector<double>> f_vectors;

    int k() const { return static_cast<int>(path.size()); }
    // deg_{T_i}(v_i)
    int subtree_degree(int i) const;
};

// Throws NotAPath unless `path` is a simple path in t (consecutive vertices
// adjacent, no repeats). k = 1 is allowed; the single subtree is all of t.
PathDecomposition decompose_along_path(const Tree& t, const std::vector<int>& path);

// Pruefer correspondence (canonical: repeatedly strip the smallest leaf).
std::vector<int> pruefer_encode(const Tree& t);        // n >= 2, length n-2
Tree pruefer_decode(int n, const std::vector<int>& seq);

} // namespace spectree
