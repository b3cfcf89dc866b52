#include "qwgi/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qwgi {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n)
{
    if (n < 0)
        throw std::invalid_argument("Graph: negative vertex count");
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u == v)
            throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(u));
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("Graph: endpoint out of range 1.." + std::to_string(n));
        if (u > v)
            std::swap(u, v);
        edges_.emplace_back(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("Graph: duplicate edge");

    const std::size_t words = (static_cast<std::size_t>(n) * n + 63) / 64;
    adj_.assign(words, 0);
    auto set_bit = [&](int a, int b) {
        const std::size_t pos = static_cast<std::size_t>(a - 1) * n_ + (b - 1);
        adj_[pos / 64] |= (1ULL << (pos % 64));
    };
    for (auto [u, v] : edges_) {
        set_bit(u, v);
        set_bit(v, u);
    }
}

bool Graph::has_edge(int u, int v) const
{
    if (u == v)
        return false;
    const std::size_t pos = static_cast<std::size_t>(u - 1) * n_ + (v - 1);
    return (adj_[pos / 64] >> (pos % 64)) & 1ULL;
}

bool Graph::connected() const
{
    if (n_ <= 1)
        return true;
    std::vector<char> seen(n_ + 1, 0);
    std::vector<int> stack{1};
    seen[1] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w = 1; w <= n_; ++w) {
            if (!seen[w] && has_edge(v, w)) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n_;
}

int Graph::degree(int v) const
{
    int d = 0;
    for (int w = 1; w <= n_; ++w)
        d += has_edge(v, w);
    return d;
}

int Graph::common_neighbors(int u, int v) const
{
    int c = 0;
    for (int w = 1; w <= n_; ++w)
        c += has_edge(u, w) && has_edge(v, w);
    return c;
}

Graph Graph::complete(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            e.emplace_back(u, v);
    return Graph(n, std::move(e));
}

Graph Graph::path(int n)
{
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v)
        e.emplace_back(v, v + 1);
    return Graph(n, std::move(e));
}

Graph Graph::cycle(int n)
{
    auto e = path(n).edges();
    if (n >= 3)
        e.emplace_back(1, n);
    return Graph(n, std::move(e));
}

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping))
{
    std::vector<char> seen(map_.size() + 1, 0);
    for (int v : map_) {
        if (v < 1 || v > static_cast<int>(map_.size()) || seen[v])
            throw std::invalid_argument("Permutation: mapping is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::inverse() const
{
    std::vector<int> inv(map_.size());
    for (int i = 1; i <= n(); ++i)
        inv[map_[i - 1] - 1] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::identity(int n)
{
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 1);
    return Permutation(std::move(m));
}

Permutation compose(const Permutation& outer, const Permutation& inner)
{
    if (outer.n() != inner.n())
        throw std::invalid_argument("compose: size mismatch");
    std::vector<int> m(outer.n());
    for (int v = 1; v <= outer.n(); ++v)
        m[v - 1] = outer(inner(v));
    return Permutation(std::move(m));
}

Permutation random_permutation(int n, Rng& rng)
{
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 1);
    for (int i = n - 1; i > 0; --i)
        std::swap(m[i], m[rng.uniform_int(0, i)]);
    return Permutation(std::move(m));
}

GiInstance::GiInstance(Graph a, Graph b, std::optional<Permutation> p)
    : g1(std::move(a)), g2(std::move(b)), planted(std::move(p))
{
    if (g1.n() != g2.n())
        throw std::invalid_argument("GiInstance: graphs have different sizes");
    if (planted && apply_permutation(*planted, g1) != g2)
        throw std::invalid_argument("GiInstance: planted permutation does not map g1 to g2");
}

Graph apply_permutation(const Permutation& pi, const Graph& g)
{
    if (pi.n() != g.n())
        throw std::invalid_argument("apply_permutation: size mismatch");
    std::vector<std::pair<int, int>> e;
    e.reserve(g.edges().size());
    for (auto [u, v] : g.edges())
        e.emplace_back(pi(u), pi(v));
    return Graph(g.n(), std::move(e));
}

int cost_f(const Permutation& pi, const GiInstance& inst)
{
    if (pi.n() != inst.n())
        throw std::invalid_argument("cost_f: size mismatch");
    const Graph mapped = apply_permutation(pi, inst.g1);
    int cost = 0;
    for (auto [u, v] : mapped.edges())
        cost += !inst.g2.has_edge(u, v);
    for (auto [u, v] : inst.g2.edges())
        cost += !mapped.has_edge(u, v);
    return cost;
}

namespace {

void check_cap(int n, int cap, const char* what)
{
    if (n > cap)
        throw std::invalid_argument(std::string(what) + ": n=" + std::to_string(n) +
                                    " exceeds the brute-force cap " + std::to_string(cap));
}

} // namespace

std::vector<Permutation> brute_force_iso(const GiInstance& inst, int cap)
{
    check_cap(inst.n(), cap, "brute_force_iso");
    std::vector<int> m(inst.n());
    std::iota(m.begin(), m.end(), 1);
    std::vector<Permutation> result;
    do {
        Permutation pi(m);
        if (cost_f(pi, inst) == 0)
            result.push_back(std::move(pi));
    } while (std::next_permutation(m.begin(), m.end()));
    return result;
}

long automorphism_count(const Graph& g, int cap)
{
    check_cap(g.n(), cap, "automorphism_count");
    return static_cast<long>(brute_force_iso(GiInstance(g, g), cap).size());
}

bool is_rigid(const Graph& g, int cap)
{
    return automorphism_count(g, cap) == 1;
}

GiInstance random_instance(int n, std::uint64_t seed, const RandomInstanceOptions& opts)
{
    const int m_lo = 2 * n;
    const int m_hi = opts.max_edges_override.value_or(n * (n - 2) / 2);
    if (m_lo > m_hi)
        throw std::invalid_argument("random_instance: empty edge range [" +
                                    std::to_string(m_lo) + ", " + std::to_string(m_hi) +
                                    "] for n=" + std::to_string(n));
    Rng rng(seed);
    const int m = rng.uniform_int(m_lo, m_hi);

    std::vector<std::pair<int, int>> pairs;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            pairs.emplace_back(u, v);
    if (m > static_cast<int>(pairs.size()))
        throw std::invalid_argument("random_instance: edge bound exceeds C(n,2)");

    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
        // Partial Fisher-Yates: the first m entries are a uniform m-subset.
        for (int i = 0; i < m; ++i) {
            const int j = rng.uniform_int(i, static_cast<int>(pairs.size()) - 1);
            std::swap(pairs[i], pairs[j]);
        }
        Graph g1(n, {pairs.begin(), pairs.begin() + m});
        if (!g1.connected())
            continue;
        Permutation pi = random_permutation(n, rng);
        Graph g2 = apply_permutation(pi, g1);
        return GiInstance(std::move(g1), std::move(g2), std::move(pi));
    }
    throw std::runtime_error("random_instance: no connected graph found after " +
                             std::to_string(opts.max_retries) + " attempts");
}

std::vector<GiInstance> srg_instances(const SrgFamily& family, int count, std::uint64_t seed)
{
    if (family.members.empty())
        throw std::invalid_argument("srg_instances: empty family");
    std::vector<GiInstance> out;
    Rng rng(seed);
    for (const Graph& g : family.members) {
        for (int i = 0; i < count; ++i) {
            Permutation pi = random_permutation(g.n(), rng);
            out.emplace_back(g, apply_permutation(pi, g), pi);
        }
    }
    return out;
}

bool check_srg(const Graph& g, int k, int lambda, int mu)
{
    for (int v = 1; v <= g.n(); ++v)
        if (g.degree(v) != k)
            return false;
    for (int u = 1; u <= g.n(); ++u) {
        for (int v = u + 1; v <= g.n(); ++v) {
            const int c = g.common_neighbors(u, v);
            if (g.has_edge(u, v) ? c != lambda : c != mu)
                return false;
        }
    }
    return true;
}

} // namespace qwgi
