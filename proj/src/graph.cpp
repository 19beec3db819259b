#include "wreathsim/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace wreathsim {

namespace {

bool edge_less(const std::pair<int, int>& a, const std::pair<int, int>& b) { return a < b; }

std::pair<int, int> norm_edge(int u, int v) { return u < v ? std::make_pair(u, v) : std::make_pair(v, u); }

}  // namespace

bool Graph::has_edge(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), norm_edge(u, v), edge_less);
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(static_cast<size_t>(n), 0);
    for (auto [u, v] : edges) {
        ++d[static_cast<size_t>(u)];
        ++d[static_cast<size_t>(v)];
    }
    return d;
}

bool Graph::is_connected() const {
    if (n <= 1) return true;
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [u, v] : edges) {
        adj[static_cast<size_t>(u)].push_back(v);
        adj[static_cast<size_t>(v)].push_back(u);
    }
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<size_t>(u)]) {
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = true;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

Graph Graph::complement() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!has_edge(u, v)) out.emplace_back(u, v);
    return make_graph(n, std::move(out));
}

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw std::invalid_argument("graph: vertex count must be >= 1");
    for (auto& e : edges) {
        if (e.first == e.second) throw std::invalid_argument("graph: loop edge");
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
            throw std::invalid_argument("graph: vertex index out of range");
        e = norm_edge(e.first, e.second);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("graph: duplicate edge");
    return Graph{n, std::move(edges)};
}

Graph Graph::parse(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    auto parse_int = [&](const std::string& tok) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error(lineno, "expected a non-negative integer, got '" + tok + "'");
        long v = std::stol(tok);
        if (v > 1'000'000) throw parse_error(lineno, "integer too large");
        return static_cast<int>(v);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> toks;
        size_t pos = 0;
        while (pos <= line.size()) {
            size_t sp = line.find(' ', pos);
            if (sp == std::string::npos) sp = line.size();
            toks.push_back(line.substr(pos, sp - pos));
            pos = sp + 1;
        }
        for (const auto& t : toks)
            if (t.empty()) throw parse_error(lineno, "tokens must be separated by single spaces");
        if (n < 0) {
            if (toks.size() != 2 || toks[0] != "n")
                throw parse_error(lineno, "expected 'n <count>' as first directive");
            n = parse_int(toks[1]);
            if (n < 1) throw parse_error(lineno, "vertex count must be >= 1");
        } else {
            if (toks.size() != 3 || toks[0] != "e")
                throw parse_error(lineno, "expected 'e <u> <v>'");
            int u = parse_int(toks[1]);
            int v = parse_int(toks[2]);
            if (u >= n || v >= n) throw parse_error(lineno, "vertex index out of range");
            if (u == v) throw parse_error(lineno, "loop edge");
            auto e = norm_edge(u, v);
            if (!seen.insert(e).second) throw parse_error(lineno, "duplicate edge");
            edges.push_back(e);
        }
    }
    if (n < 0) throw parse_error(lineno, "missing 'n <count>' directive");
    std::sort(edges.begin(), edges.end());
    return Graph{n, std::move(edges)};
}

Graph Graph::parse_string(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
}

Graph Graph::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open graph file: " + path);
    return parse(f);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> edges = a.edges;
    for (auto [u, v] : b.edges) edges.emplace_back(u + a.n, v + a.n);
    return make_graph(a.n + b.n, std::move(edges));
}

Graph relabel(const Graph& g, const Perm& p) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.edges.size());
    for (auto [u, v] : g.edges) edges.emplace_back(p(u), p(v));
    return make_graph(g.n, std::move(edges));
}

const char* connectivity_note_name(ConnectivityNote note) {
    switch (note) {
        case ConnectivityNote::both_connected: return "both-connected";
        case ConnectivityNote::complemented: return "complemented";
        case ConnectivityNote::trivially_nonisomorphic: return "trivially-nonisomorphic";
    }
    return "?";
}

GraphPair normalize_pair(Graph g1, Graph g2) {
    if (g1.n != g2.n) throw std::invalid_argument("normalize_pair: vertex counts differ");
    bool c1 = g1.is_connected(), c2 = g2.is_connected();
    if (c1 && c2) return GraphPair{std::move(g1), std::move(g2), ConnectivityNote::both_connected};
    if (c1 != c2)
        return GraphPair{std::move(g1), std::move(g2), ConnectivityNote::trivially_nonisomorphic};
    // Complementation is isomorphism-invariant, and the complement of a
    // disconnected graph is connected.
    Graph h1 = g1.complement(), h2 = g2.complement();
    if (!h1.is_connected() || !h2.is_connected())
        throw std::logic_error("normalize_pair: complement of disconnected graph must be connected");
    return GraphPair{std::move(h1), std::move(h2), ConnectivityNote::complemented};
}

std::vector<Perm> isomorphisms(const Graph& a, const Graph& b) {
    if (a.n != b.n) throw std::invalid_argument("isomorphisms: vertex counts differ");
    std::vector<Perm> found;
    if (a.edges.size() != b.edges.size()) return found;
    auto da = a.degrees(), db = b.degrees();
    {
        auto sa = da, sb = db;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return found;
    }
    int n = a.n;
    std::vector<uint8_t> image(static_cast<size_t>(n), 0);
    std::vector<bool> used(static_cast<size_t>(n), false);
    auto backtrack = [&](auto&& self, int u) -> void {
        if (u == n) {
            found.emplace_back(Perm(image));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[static_cast<size_t>(v)]) continue;
            if (da[static_cast<size_t>(u)] != db[static_cast<size_t>(v)]) continue;
            bool ok = true;
            for (int w = 0; w < u && ok; ++w)
                if (a.has_edge(u, w) != b.has_edge(v, image[static_cast<size_t>(w)])) ok = false;
            if (!ok) continue;
            image[static_cast<size_t>(u)] = static_cast<uint8_t>(v);
            used[static_cast<size_t>(v)] = true;
            self(self, u + 1);
            used[static_cast<size_t>(v)] = false;
        }
    };
    backtrack(backtrack, 0);
    return found;
}

std::vector<Perm> automorphisms(const Graph& g) { return isomorphisms(g, g); }

bool HiddenSubgroup::contains_rank(uint64_t r) const {
    return std::binary_search(ranks.begin(), ranks.end(), r);
}

bool HiddenSubgroup::contains(const WreathElement& x) const {
    return contains_rank(GroupIndexer(n).rank(x));
}

HiddenSubgroup HiddenSubgroup::from_elements(int n, std::vector<WreathElement> elems) {
    GroupIndexer gi(n);
    std::vector<std::pair<uint64_t, size_t>> order;
    order.reserve(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) order.emplace_back(gi.rank(elems[i]), i);
    std::sort(order.begin(), order.end());
    HiddenSubgroup h;
    h.n = n;
    h.elements.reserve(elems.size());
    h.ranks.reserve(elems.size());
    for (auto& [r, i] : order) {
        if (!h.ranks.empty() && h.ranks.back() == r)
            throw std::invalid_argument("HiddenSubgroup: duplicate element");
        h.ranks.push_back(r);
        h.elements.push_back(std::move(elems[i]));
    }
    if (h.elements.empty() || !h.contains(WreathElement::identity(n)))
        throw std::invalid_argument("HiddenSubgroup: missing identity");
    for (const auto& x : h.elements)
        if (!h.contains(inverse(x))) throw std::invalid_argument("HiddenSubgroup: not inverse-closed");
    size_t sz = h.elements.size();
    if (sz * sz <= 10'000'000) {
        for (const auto& x : h.elements)
            for (const auto& y : h.elements)
                if (!h.contains(compose(x, y)))
                    throw std::invalid_argument("HiddenSubgroup: not closed under composition");
    } else {
        std::mt19937_64 rng(0x5eed);
        for (int t = 0; t < 100'000; ++t) {
            const auto& x = h.elements[rng() % sz];
            const auto& y = h.elements[rng() % sz];
            if (!h.contains(compose(x, y)))
                throw std::invalid_argument("HiddenSubgroup: not closed under composition");
        }
    }
    return h;
}

HiddenSubgroup build_hidden_subgroup(const GraphPair& pair) {
    if (pair.note == ConnectivityNote::trivially_nonisomorphic)
        throw std::invalid_argument("build_hidden_subgroup: pair has mismatched connectivity");
    const Graph& g1 = pair.g1;
    const Graph& g2 = pair.g2;
    auto a1 = automorphisms(g1);
    auto a2 = automorphisms(g2);
    auto i12 = isomorphisms(g1, g2);
    auto i21 = isomorphisms(g2, g1);
    std::vector<WreathElement> elems;
    elems.reserve(a1.size() * a2.size() + i12.size() * i21.size());
    for (const auto& s : a1)
        for (const auto& t : a2) elems.push_back(WreathElement{s, t, 0});
    for (const auto& s : i12)
        for (const auto& t : i21) elems.push_back(WreathElement{s, t, 1});

    // Each element's S_{2n} embedding must map E(G1 ⊔ G2) onto itself.
    Graph gu = disjoint_union(g1, g2);
    for (const auto& x : elems) {
        Perm e = embed_s2n(x);
        for (auto [u, v] : gu.edges)
            if (!gu.has_edge(e(u), e(v)))
                throw std::logic_error("build_hidden_subgroup: element does not preserve edges");
    }
    return HiddenSubgroup::from_elements(g1.n, std::move(elems));
}

bool contains_involutive_swap(const HiddenSubgroup& h) {
    return std::any_of(h.elements.begin(), h.elements.end(),
                       [](const WreathElement& x) { return x.is_involutive_swap(); });
}

}  // namespace wreathsim
