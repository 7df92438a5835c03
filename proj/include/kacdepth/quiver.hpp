#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kacdepth {

struct Arrow {
    int source = 0;
    int target = 0;

    bool is_loop() const { return source == target; }
    friend bool operator==(const Arrow&, const Arrow&) = default;
    friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// Directed multigraph with loops. The arrow list order is the total order on
/// arrows used by the contraction-deletion algorithm.
class Quiver {
public:
    Quiver() = default;
    Quiver(int nvertices, std::vector<Arrow> arrows) : n_(nvertices), arrows_(std::move(arrows))
    {
        if (n_ < 0)
            throw std::invalid_argument("negative vertex count");
        for (const auto& a : arrows_)
            if (a.source < 0 || a.source >= n_ || a.target < 0 || a.target >= n_)
                throw std::out_of_range("arrow endpoint out of range");
        if (arrows_.size() > 64)
            throw std::invalid_argument("at most 64 arrows are supported");
    }

    int nvertices() const { return n_; }
    int narrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int a) const { return arrows_.at(static_cast<std::size_t>(a)); }

    int nloops() const
    {
        return static_cast<int>(std::count_if(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.is_loop(); }));
    }

    std::uint64_t all_arrows_mask() const
    {
        return arrows_.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << arrows_.size()) - 1);
    }

    friend bool operator==(const Quiver&, const Quiver&) = default;

private:
    int n_ = 0;
    std::vector<Arrow> arrows_;
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    int sets;

    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)), sets(n)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[static_cast<std::size_t>(a)] = b;
        --sets;
        return true;
    }
};

} // namespace detail

/// Number of connected components of Q restricted to the arrow subset `mask`
/// (all vertices kept).
inline int component_count(const Quiver& q, std::uint64_t mask)
{
    detail::UnionFind uf(q.nvertices());
    for (int a = 0; a < q.narrows(); ++a)
        if (mask >> a & 1U)
            uf.unite(q.arrow(a).source, q.arrow(a).target);
    return uf.sets;
}

/// Betti number C - V + E of Q restricted to the arrow subset `mask`.
inline int betti(const Quiver& q, std::uint64_t mask)
{
    return component_count(q, mask) - q.nvertices() + std::popcount(mask & q.all_arrows_mask());
}

inline int betti(const Quiver& q)
{
    return betti(q, q.all_arrows_mask());
}

inline int component_count(const Quiver& q)
{
    return component_count(q, q.all_arrows_mask());
}

inline bool is_connected(const Quiver& q)
{
    return component_count(q) == 1;
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
inline std::vector<std::vector<int>> components(const Quiver& q)
{
    detail::UnionFind uf(q.nvertices());
    for (const auto& a : q.arrows())
        uf.unite(a.source, a.target);
    std::vector<std::vector<int>> out;
    std::vector<int> slot(static_cast<std::size_t>(q.nvertices()), -1);
    for (int v = 0; v < q.nvertices(); ++v) {
        int r = uf.find(v);
        if (slot[static_cast<std::size_t>(r)] < 0) {
            slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(v);
    }
    return out;
}

/// Connected and no single arrow disconnects it. The arrowless one-vertex
/// quiver has b = 0 and is not considered 2-connected.
inline bool is_two_connected(const Quiver& q)
{
    if (!is_connected(q) || q.narrows() == 0)
        return false;
    const std::uint64_t all = q.all_arrows_mask();
    for (int a = 0; a < q.narrows(); ++a)
        if (component_count(q, all & ~(std::uint64_t{1} << a)) != 1)
            return false;
    return true;
}

/// <d, e> = sum_i d_i e_i - sum_{a: i -> j} d_i e_j.
inline long euler_form(const Quiver& q, const std::vector<long>& d, const std::vector<long>& e)
{
    if (d.size() != static_cast<std::size_t>(q.nvertices()) || e.size() != static_cast<std::size_t>(q.nvertices()))
        throw std::invalid_argument("euler_form: dimension mismatch");
    long s = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        s += d[i] * e[i];
    for (const auto& a : q.arrows())
        s -= d[static_cast<std::size_t>(a.source)] * e[static_cast<std::size_t>(a.target)];
    return s;
}

struct Contraction {
    Quiver quiver;
    std::vector<int> vertex_map;  // old vertex -> new vertex
    std::vector<int> arrow_map;   // old arrow -> new arrow, -1 for the contracted arrow

    // (lambda/a): entries of merged vertices are summed.
    template <typename T>
    std::vector<T> push_forward(const std::vector<T>& lambda) const
    {
        if (lambda.size() != vertex_map.size())
            throw std::invalid_argument("push_forward: dimension mismatch");
        std::vector<T> out(static_cast<std::size_t>(quiver.nvertices()), T{});
        for (std::size_t v = 0; v < lambda.size(); ++v)
            out[static_cast<std::size_t>(vertex_map[v])] += lambda[v];
        return out;
    }
};

/// Q/a: identify the endpoints of a, drop a, keep the relative order of the rest.
/// The merged vertex takes the smaller of the two indices; the others are renumbered in order.
inline Contraction contract_arrow(const Quiver& q, int a)
{
    if (a < 0 || a >= q.narrows())
        throw std::out_of_range("arrow index out of range");
    const Arrow& arr = q.arrow(a);
    if (arr.is_loop())
        throw std::invalid_argument("cannot contract loop");
    const int keep = std::min(arr.source, arr.target);
    const int drop = std::max(arr.source, arr.target);
    Contraction c;
    c.vertex_map.resize(static_cast<std::size_t>(q.nvertices()));
    for (int v = 0; v < q.nvertices(); ++v) {
        int w = v == drop ? keep : v;
        c.vertex_map[static_cast<std::size_t>(v)] = w > drop ? w - 1 : w;
    }
    std::vector<Arrow> arrows;
    c.arrow_map.assign(static_cast<std::size_t>(q.narrows()), -1);
    for (int b = 0; b < q.narrows(); ++b) {
        if (b == a)
            continue;
        c.arrow_map[static_cast<std::size_t>(b)] = static_cast<int>(arrows.size());
        arrows.push_back({c.vertex_map[static_cast<std::size_t>(q.arrow(b).source)],
                          c.vertex_map[static_cast<std::size_t>(q.arrow(b).target)]});
    }
    c.quiver = Quiver(q.nvertices() - 1, std::move(arrows));
    return c;
}

inline Quiver delete_arrow(const Quiver& q, int a)
{
    if (a < 0 || a >= q.narrows())
        throw std::out_of_range("arrow index out of range");
    std::vector<Arrow> arrows = q.arrows();
    arrows.erase(arrows.begin() + a);
    return Quiver(q.nvertices(), std::move(arrows));
}

/// Q restricted to an arrow subset J: all vertices, arrows of J in their original order.
inline Quiver restrict_arrows(const Quiver& q, const std::vector<int>& arrow_subset)
{
    std::vector<int> sorted = arrow_subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate arrow in subset");
    std::vector<Arrow> arrows;
    for (int a : sorted) {
        if (a < 0 || a >= q.narrows())
            throw std::out_of_range("arrow index out of range");
        arrows.push_back(q.arrow(a));
    }
    return Quiver(q.nvertices(), std::move(arrows));
}

struct VertexRestriction {
    Quiver quiver;
    std::vector<int> vertices;  // new vertex -> old vertex
    std::vector<int> arrows;    // new arrow -> old arrow
};

/// Q restricted to a vertex subset I: arrows with both ends in I, order preserved.
inline VertexRestriction restrict_vertices(const Quiver& q, const std::vector<int>& vertex_subset)
{
    VertexRestriction r;
    r.vertices = vertex_subset;
    std::sort(r.vertices.begin(), r.vertices.end());
    if (std::adjacent_find(r.vertices.begin(), r.vertices.end()) != r.vertices.end())
        throw std::invalid_argument("duplicate vertex in subset");
    std::vector<int> index(static_cast<std::size_t>(q.nvertices()), -1);
    for (std::size_t i = 0; i < r.vertices.size(); ++i) {
        int v = r.vertices[i];
        if (v < 0 || v >= q.nvertices())
            throw std::out_of_range("vertex index out of range");
        index[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    std::vector<Arrow> arrows;
    for (int a = 0; a < q.narrows(); ++a) {
        int s = index[static_cast<std::size_t>(q.arrow(a).source)];
        int t = index[static_cast<std::size_t>(q.arrow(a).target)];
        if (s >= 0 && t >= 0) {
            arrows.push_back({s, t});
            r.arrows.push_back(a);
        }
    }
    r.quiver = Quiver(static_cast<int>(r.vertices.size()), std::move(arrows));
    return r;
}

/// All spanning trees as sorted arrow-index lists, in lexicographic order.
inline std::vector<std::vector<int>> spanning_trees(const Quiver& q)
{
    if (!is_connected(q))
        throw std::invalid_argument("no spanning tree");
    std::vector<int> candidates;
    for (int a = 0; a < q.narrows(); ++a)
        if (!q.arrow(a).is_loop())
            candidates.push_back(a);
    const int need = q.nvertices() - 1;
    std::vector<std::vector<int>> out;
    std::vector<int> chosen;
    // Depth-first over increasing index subsets, pruning any choice that closes a cycle.
    auto rec = [&](auto&& self, std::size_t start, detail::UnionFind uf) -> void {
        if (static_cast<int>(chosen.size()) == need) {
            out.push_back(chosen);
            return;
        }
        const std::size_t remaining = static_cast<std::size_t>(need) - chosen.size();
        for (std::size_t i = start; i + remaining <= candidates.size(); ++i) {
            const Arrow& arr = q.arrow(candidates[i]);
            detail::UnionFind next = uf;
            if (!next.unite(arr.source, arr.target))
                continue;
            chosen.push_back(candidates[i]);
            self(self, i + 1, std::move(next));
            chosen.pop_back();
        }
    };
    rec(rec, 0, detail::UnionFind(q.nvertices()));
    return out;
}

/// Spanning tree with a valuation label on each tree arrow.
struct ValuedTree {
    std::vector<int> arrows;     // sorted arrow indices
    std::vector<int> valuation;  // valuation[k] labels arrows[k]

    int valuation_of(int a) const
    {
        auto it = std::lower_bound(arrows.begin(), arrows.end(), a);
        if (it == arrows.end() || *it != a)
            throw std::out_of_range("arrow not in tree");
        return valuation[static_cast<std::size_t>(it - arrows.begin())];
    }
    bool contains(int a) const { return std::binary_search(arrows.begin(), arrows.end(), a); }

    friend bool operator==(const ValuedTree&, const ValuedTree&) = default;
    friend auto operator<=>(const ValuedTree&, const ValuedTree&) = default;
};

/// Arrows of the unique tree path joining the endpoints of a (sorted).
inline std::vector<int> tree_path(const Quiver& q, const std::vector<int>& tree_arrows, int a)
{
    const Arrow& arr = q.arrow(a);
    // adjacency over tree arrows
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(q.nvertices()));
    for (int b : tree_arrows) {
        adj[static_cast<std::size_t>(q.arrow(b).source)].push_back({q.arrow(b).target, b});
        adj[static_cast<std::size_t>(q.arrow(b).target)].push_back({q.arrow(b).source, b});
    }
    std::vector<int> via(static_cast<std::size_t>(q.nvertices()), -2);
    std::vector<int> from(static_cast<std::size_t>(q.nvertices()), -1);
    std::vector<int> stack{arr.source};
    via[static_cast<std::size_t>(arr.source)] = -1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [w, b] : adj[static_cast<std::size_t>(v)]) {
            if (via[static_cast<std::size_t>(w)] != -2)
                continue;
            via[static_cast<std::size_t>(w)] = b;
            from[static_cast<std::size_t>(w)] = v;
            stack.push_back(w);
        }
    }
    if (via[static_cast<std::size_t>(arr.target)] == -2)
        throw std::invalid_argument("tree does not span the endpoints of the arrow");
    std::vector<int> path;
    for (int v = arr.target; v != arr.source; v = from[static_cast<std::size_t>(v)])
        path.push_back(via[static_cast<std::size_t>(v)]);
    std::sort(path.begin(), path.end());
    return path;
}

struct TreePathData {
    std::vector<int> path;  // T_a
    int max_valuation = 0;  // v_{T_a}
    int critical_arrow = -1;  // e_{T_a}: smallest path arrow attaining v_{T_a}
};

inline TreePathData tree_path_data(const Quiver& q, const ValuedTree& t, int a)
{
    if (a < 0 || a >= q.narrows())
        throw std::out_of_range("arrow index out of range");
    if (q.arrow(a).is_loop())
        throw std::invalid_argument("tree_path_data: arrow is a loop");
    if (t.contains(a))
        throw std::invalid_argument("tree_path_data: arrow belongs to the tree");
    TreePathData d;
    d.path = tree_path(q, t.arrows, a);
    d.max_valuation = -1;
    for (int b : d.path) {  // path is sorted, so the first maximiser is the smallest
        int v = t.valuation_of(b);
        if (v > d.max_valuation) {
            d.max_valuation = v;
            d.critical_arrow = b;
        }
    }
    return d;
}

/// Arrows of Q as an index list.
inline std::vector<int> arrow_indices(std::uint64_t mask)
{
    std::vector<int> out;
    for (int a = 0; mask; ++a, mask >>= 1U)
        if (mask & 1U)
            out.push_back(a);
    return out;
}

/// Calls visit once per set partition of {0, ..., n-1}; blocks are listed by smallest element.
inline void for_each_set_partition(int n, const std::function<void(const std::vector<std::vector<int>>&)>& visit)
{
    std::vector<std::vector<int>> blocks;
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            visit(blocks);
            return;
        }
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            blocks[b].push_back(v);
            self(self, v + 1);
            blocks[b].pop_back();
        }
        blocks.push_back({v});
        self(self, v + 1);
        blocks.pop_back();
    };
    rec(rec, 0);
}

/// Contract every arrow with both ends in one block: a spanning forest of each
/// block merges vertices, and the remaining inner arrows, now loops, are dropped.
inline Quiver contract_blocks(const Quiver& q, const std::vector<std::vector<int>>& blocks)
{
    std::vector<int> block_of(static_cast<std::size_t>(q.nvertices()), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int v : blocks[b]) {
            if (v < 0 || v >= q.nvertices() || block_of[static_cast<std::size_t>(v)] != -1)
                throw std::invalid_argument("blocks must partition the vertex set");
            block_of[static_cast<std::size_t>(v)] = static_cast<int>(b);
        }
    for (int x : block_of)
        if (x == -1)
            throw std::invalid_argument("blocks must partition the vertex set");
    detail::UnionFind uf(q.nvertices());
    std::vector<bool> inner(static_cast<std::size_t>(q.narrows()), false);
    for (int a = 0; a < q.narrows(); ++a) {
        const Arrow& arr = q.arrow(a);
        if (block_of[static_cast<std::size_t>(arr.source)] == block_of[static_cast<std::size_t>(arr.target)]) {
            inner[static_cast<std::size_t>(a)] = true;
            uf.unite(arr.source, arr.target);
        }
    }
    std::vector<int> label(static_cast<std::size_t>(q.nvertices()), -1);
    int next = 0;
    for (int v = 0; v < q.nvertices(); ++v) {
        const int r = uf.find(v);
        if (label[static_cast<std::size_t>(r)] == -1)
            label[static_cast<std::size_t>(r)] = next++;
    }
    std::vector<Arrow> arrows;
    for (int a = 0; a < q.narrows(); ++a)
        if (!inner[static_cast<std::size_t>(a)])
            arrows.push_back({label[static_cast<std::size_t>(uf.find(q.arrow(a).source))],
                              label[static_cast<std::size_t>(uf.find(q.arrow(a).target))]});
    return Quiver(next, std::move(arrows));
}

/// b(Q) > 0 and b(Q) > sum_k b(Q restricted to I_k) for every partition into at least two blocks.
inline bool betti_partition_criterion(const Quiver& q)
{
    const int b = betti(q);
    if (b <= 0)
        return false;
    bool ok = true;
    for_each_set_partition(q.nvertices(), [&](const std::vector<std::vector<int>>& blocks) {
        if (!ok || blocks.size() < 2)
            return;
        int s = 0;
        for (const auto& blk : blocks)
            s += betti(restrict_vertices(q, blk).quiver);
        if (b <= s)
            ok = false;
    });
    return ok;
}

} // namespace kacdepth
