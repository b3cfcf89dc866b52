#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qwgi/rng.hpp"

namespace qwgi {

// Undirected simple graph on vertices 1..n. Edges are stored as sorted
// (u < v) pairs in ascending order; the constructor rejects self-loops,
// duplicates and out-of-range endpoints.
class Graph {
public:
    Graph() : n_(0) {}
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const;
    bool connected() const;
    int degree(int v) const;

    // Number of common neighbors of u and v.
    int common_neighbors(int u, int v) const;

    bool operator==(const Graph& other) const
    {
        return n_ == other.n_ && edges_ == other.edges_;
    }

    static Graph complete(int n);
    static Graph path(int n);
    static Graph cycle(int n);
    static Graph empty(int n) { return Graph(n, {}); }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::uint64_t> adj_; // n x n bit matrix, row-major
};

// A bijection of {1..n}; map(i) is the image of vertex i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> mapping); // validates bijection

    int n() const { return static_cast<int>(map_.size()); }
    int operator()(int v) const { return map_[v - 1]; }
    const std::vector<int>& mapping() const { return map_; }

    Permutation inverse() const;

    bool operator==(const Permutation& other) const { return map_ == other.map_; }
    bool operator<(const Permutation& other) const { return map_ < other.map_; }

    static Permutation identity(int n);

private:
    std::vector<int> map_;
};

// (outer . inner)(v) = outer(inner(v))
Permutation compose(const Permutation& outer, const Permutation& inner);

Permutation random_permutation(int n, Rng& rng);

// A pair of same-size graphs, optionally with the permutation used to
// generate the second from the first.
struct GiInstance {
    Graph g1;
    Graph g2;
    std::optional<Permutation> planted;

    GiInstance() = default;
    GiInstance(Graph a, Graph b, std::optional<Permutation> p = std::nullopt);

    int n() const { return g1.n(); }
};

struct SrgFamily {
    int n = 0;
    int k = 0;
    int lambda = 0;
    int mu = 0;
    std::vector<Graph> members;
};

Graph apply_permutation(const Permutation& pi, const Graph& g);

// |E(pi(G1)) symmetric-difference E(G2)|; zero iff pi is an isomorphism.
int cost_f(const Permutation& pi, const GiInstance& inst);

// Exhaustive enumeration of Iso(G1, G2) in lexicographic order. Refuses
// n above the cap (default 9) since the search is n! candidates.
std::vector<Permutation> brute_force_iso(const GiInstance& inst, int cap = 9);

long automorphism_count(const Graph& g, int cap = 9);
bool is_rigid(const Graph& g, int cap = 9);

struct RandomInstanceOptions {
    int max_retries = 10000;
    // Override for the upper edge-count bound; default is floor(n*(n-2)/2).
    std::optional<int> max_edges_override;
};

// Connected uniform G(n, m) graph with m uniform in [2n, floor(n(n-2)/2)],
// plus a uniform planted permutation. Deterministic given the seed.
GiInstance random_instance(int n, std::uint64_t seed,
                           const RandomInstanceOptions& opts = {});

std::vector<GiInstance> srg_instances(const SrgFamily& family, int count,
                                      std::uint64_t seed);

// Checks k-regularity and the lambda/mu common-neighbor counts.
bool check_srg(const Graph& g, int k, int lambda, int mu);

} // namespace qwgi
