// Tree family generators with documented canonical labelings, so that any
// report is reproducible from its family string and seed.
//
//   path(n)          spine 0..n-1, edges (i,i+1)
//   star(n)          center 0, leaves 1..n-1
//   caterpillar(k,m) spine 0..k-1, then the m_i leaves of spine vertex i in
//                    spine order: leaf j at i gets label k + m_0+..+m_{i-1} + j
//   s_caterpillar    spine 0..k-1; one copy of S per spine vertex, glued by
//                    identifying the pendant root v0 of S with the spine
//                    vertex; copy i's remaining vertices follow in S-label
//                    order starting at k + i*(|S|-1)
//   fiedler_rose(l,t,r)
//                    two paths and a star sharing one pendant vertex. P_l
//                    spine 0..l-1 with glue = l-1; star center l, star
//                    leaves l+1..l+r-2; P_t continues from the glue through
//                    l+r-1 .. l+r+t-3. Total l+t+r-2 vertices.
//   random_pruefer(n,seed)
//                    uniform labeled tree from a splitmix64-driven Pruefer
//                    sequence
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectree/tree.hpp"

namespace spectree {

struct FamilySpec {
    enum class Kind { path, star, caterpillar, s_caterpillar, fiedler_rose, random_pruefer };

    Kind kind = Kind::path;
    int n = 0;                           // path, star, random_pruefer
    std::vector<int> leaf_counts;        // caterpillar m_1..m_k
    int k = 0;                           // s_caterpillar path length
    std::optional<Tree> s;               // s_caterpillar host
    int s_root = 0;                      // pendant vertex of s
    int l = 0, t = 0, r = 0;             // fiedler_rose
    std::uint64_t seed = 0;              // random_pruefer

    static FamilySpec path(int n);
    static FamilySpec star(int n);
    static FamilySpec caterpillar(std::vector<int> leaf_counts);
    static FamilySpec s_caterpillar(Tree s, int root, int k);
    static FamilySpec fiedler_rose(int l, int t, int r);
    static FamilySpec random_pruefer(int n, std::uint64_t seed);
};

// Throws BadSpec on invalid parameters (rose needs l,t,r >= 2; s_caterpillar
// root must be a pendant vertex of S; counts positive where required).
Tree generate(const FamilySpec& spec);

// Parses "path:5", "star:7", "caterpillar:0,3,2,0", "rose:3,3,4",
// "random:12". s_caterpillar is "scater:<k>,<root>" plus a tree supplied
// separately. The seed for random comes from the spec, not the string.
FamilySpec parse_family(const std::string& text);

// Convenience for the rose: star vertex labels excluding the glue
// (center first, then star leaves).
std::vector<int> rose_star_vertices(int l, int t, int r);
std::vector<int> rose_star_pendants(int l, int t, int r);

} // namespace spectree
