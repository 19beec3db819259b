#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "wreathsim/common.hpp"
#include "wreathsim/wreath_group.hpp"

namespace wreathsim {

// Simple undirected graph on vertices 0..n-1; edges stored as sorted (u,v)
// pairs with u < v.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    bool has_edge(int u, int v) const;
    std::vector<int> degrees() const;
    bool is_connected() const;
    Graph complement() const;

    // File format: '#' comment lines, then "n <int>", then "e <u> <v>" lines.
    // Single spaces between tokens; LF or CRLF; blank lines are skipped.
    static Graph parse(std::istream& in);
    static Graph parse_string(const std::string& text);
    static Graph parse_file(const std::string& path);

    bool operator==(const Graph&) const = default;
};

Graph make_graph(int n, std::vector<std::pair<int, int>> edges);  // validates

// Vertex-disjoint union; b's vertices are shifted by a.n.
Graph disjoint_union(const Graph& a, const Graph& b);

// Vertex relabeling: edge {u,v} becomes {p(u),p(v)}.
Graph relabel(const Graph& g, const Perm& p);

enum class ConnectivityNote { both_connected, complemented, trivially_nonisomorphic };

const char* connectivity_note_name(ConnectivityNote note);

struct GraphPair {
    Graph g1, g2;
    ConnectivityNote note = ConnectivityNote::both_connected;
};

// Connectivity reduction: pass connected pairs through, complement both when
// both are disconnected, and flag the pair decided when connectivity differs.
GraphPair normalize_pair(Graph g1, Graph g2);

// All g in S_n with {g(u),g(v)} in E(b) iff {u,v} in E(a). Backtracking with
// degree pruning; empty result means "not isomorphic".
std::vector<Perm> isomorphisms(const Graph& a, const Graph& b);
std::vector<Perm> automorphisms(const Graph& g);

// H = Aut(G1 ⊔ G2) inside S_n wr S_2, stored extensionally (elements sorted
// by rank).
struct HiddenSubgroup {
    int n = 0;
    std::vector<WreathElement> elements;
    std::vector<uint64_t> ranks;  // parallel to elements, ascending

    uint64_t order() const { return elements.size(); }
    bool contains_rank(uint64_t r) const;
    bool contains(const WreathElement& x) const;

    // Sorts by rank and verifies the subgroup axioms (identity, inverses,
    // closure; closure is sampled above 10^7 candidate products).
    static HiddenSubgroup from_elements(int n, std::vector<WreathElement> elems);
};

HiddenSubgroup build_hidden_subgroup(const GraphPair& pair);
bool contains_involutive_swap(const HiddenSubgroup& h);

}  // namespace wreathsim
