#ifndef KLCELLS_WGRAPH_HPP
#define KLCELLS_WGRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "klcells/kl.hpp"

namespace klcells {

// The W-graph on a vertex set: an undirected edge wherever mu-tilde is
// nonzero, each vertex labeled with its left and right descent sets.
class WGraph {
public:
    struct Edge {
        std::uint32_t u, v;    // vertex positions, u < v
        std::int64_t weight;   // mu-tilde, always >= 1
    };

    WGraph(const KLTable& table, std::vector<Element> vertices)
        : sys_(&table.system()), verts_(std::move(vertices)) {
        std::sort(verts_.begin(), verts_.end());
        verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
        pos_.assign(sys_->size(), kNone);
        for (std::uint32_t i = 0; i < verts_.size(); ++i) {
            if (!table.in_scope(verts_[i])) throw scope_error("vertex outside table scope");
            pos_[verts_[i]] = i;
        }
        left_tau_.reserve(verts_.size());
        right_tau_.reserve(verts_.size());
        for (Element w : verts_) {
            left_tau_.push_back(sys_->left_descents(w));
            right_tau_.push_back(sys_->right_descents(w));
        }
        // The nonzero mu pairs are already indexed per table column.
        for (Element w : verts_) {
            std::uint32_t pw = pos_[w];
            for (const auto& [y, mu] : table.mu_column(w)) {
                if (y >= pos_.size() || pos_[y] == kNone) continue;
                Coeff c = mu;
                edges_.push_back(Edge{std::min(pos_[y], pw), std::max(pos_[y], pw),
                                      static_cast<std::int64_t>(c.get_si())});
            }
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        adj_.resize(verts_.size());
        for (const Edge& e : edges_) {
            adj_[e.u].push_back(e.v);
            adj_[e.v].push_back(e.u);
        }
    }

    const CoxeterSystem& system() const { return *sys_; }
    const std::vector<Element>& vertices() const { return verts_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return verts_.size(); }

    bool has_vertex(Element w) const { return w < pos_.size() && pos_[w] != kNone; }
    std::uint32_t position(Element w) const {
        if (!has_vertex(w)) throw scope_error("element is not a vertex of this graph");
        return pos_[w];
    }
    Element vertex(std::uint32_t i) const { return verts_[i]; }

    GenSet tau(Side side, std::uint32_t i) const {
        return side == Side::Left ? left_tau_[i] : right_tau_[i];
    }

    const std::vector<std::uint32_t>& neighbors(std::uint32_t i) const { return adj_[i]; }

    // Directed preorder edges: u -> v whenever {u,v} is an edge and
    // tau_side(u) is not contained in tau_side(v).
    std::vector<std::pair<std::uint32_t, std::uint32_t>> preorder_edges(Side side) const {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        auto not_subset = [](GenSet a, GenSet b) { return (a & ~b) != 0; };
        for (const Edge& e : edges_) {
            GenSet tu = tau(side, e.u), tv = tau(side, e.v);
            if (not_subset(tu, tv)) out.emplace_back(e.u, e.v);
            if (not_subset(tv, tu)) out.emplace_back(e.v, e.u);
        }
        return out;
    }

private:
    static constexpr std::uint32_t kNone = 0xffffffffu;

    const CoxeterSystem* sys_;
    std::vector<Element> verts_;
    std::vector<std::uint32_t> pos_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<GenSet> left_tau_;
    std::vector<GenSet> right_tau_;
};

enum class CellSide { Left, Right, TwoSided };

struct CellPartition {
    CellSide side;
    std::vector<std::int32_t> class_of;        // per vertex position
    std::vector<std::vector<Element>> classes; // class id -> sorted members
};

namespace detail {

// Iterative Tarjan strongly connected components.
inline std::vector<std::int32_t> scc(std::size_t n,
                                     const std::vector<std::vector<std::uint32_t>>& out_adj) {
    std::vector<std::int32_t> comp(n, -1);
    std::vector<std::int32_t> low(n, 0), num(n, -1);
    std::vector<std::uint32_t> stack, call_node;
    std::vector<std::size_t> call_edge;
    std::vector<char> on_stack(n, 0);
    std::int32_t counter = 0, ncomp = 0;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        call_node.push_back(root);
        call_edge.push_back(0);
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call_node.empty()) {
            std::uint32_t v = call_node.back();
            if (call_edge.back() < out_adj[v].size()) {
                std::uint32_t w = out_adj[v][call_edge.back()++];
                if (num[w] == -1) {
                    num[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call_node.push_back(w);
                    call_edge.push_back(0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], num[w]);
                }
            } else {
                if (low[v] == num[v]) {
                    while (true) {
                        std::uint32_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
                call_node.pop_back();
                call_edge.pop_back();
                if (!call_node.empty())
                    low[call_node.back()] = std::min(low[call_node.back()], low[v]);
            }
        }
    }
    return comp;
}

} // namespace detail

inline CellPartition cells(const WGraph& g, CellSide side) {
    std::size_t n = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> out_adj(n);
    auto add_side = [&](Side s) {
        for (auto [u, v] : g.preorder_edges(s)) out_adj[u].push_back(v);
    };
    if (side == CellSide::Left || side == CellSide::TwoSided) add_side(Side::Left);
    if (side == CellSide::Right || side == CellSide::TwoSided) add_side(Side::Right);

    std::vector<std::int32_t> raw = detail::scc(n, out_adj);

    // Renumber classes in ascending order of their minimal member.
    std::int32_t ncomp = 0;
    for (std::int32_t c : raw) ncomp = std::max(ncomp, c + 1);
    std::vector<std::int32_t> remap(ncomp, -1);
    std::int32_t next = 0;
    CellPartition part;
    part.side = side;
    part.class_of.assign(n, -1);
    for (std::uint32_t i = 0; i < n; ++i) {
        if (remap[raw[i]] == -1) remap[raw[i]] = next++;
        part.class_of[i] = remap[raw[i]];
    }
    part.classes.resize(next);
    for (std::uint32_t i = 0; i < n; ++i) part.classes[part.class_of[i]].push_back(g.vertex(i));
    return part;
}

// Reflexive reachability in the directed preorder graph: x <=_side y.
inline bool leq_cell(const WGraph& g, Side side, Element x, Element y) {
    std::uint32_t from = g.position(x), to = g.position(y);
    if (from == to) return true;
    std::size_t n = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> out_adj(n);
    for (auto [u, v] : g.preorder_edges(side)) out_adj[u].push_back(v);
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> work{from};
    seen[from] = 1;
    while (!work.empty()) {
        std::uint32_t v = work.back();
        work.pop_back();
        for (std::uint32_t w : out_adj[v]) {
            if (w == to) return true;
            if (!seen[w]) {
                seen[w] = 1;
                work.push_back(w);
            }
        }
    }
    return false;
}

// Full reachability matrix of the directed preorder graph (reflexive).
// Computed on the condensation to keep the bitset work linear in edges.
inline BitMatrix preorder_reachability(const WGraph& g, Side side) {
    std::size_t n = g.vertex_count();
    std::vector<std::vector<std::uint32_t>> out_adj(n);
    for (auto [u, v] : g.preorder_edges(side)) out_adj[u].push_back(v);
    std::vector<std::int32_t> comp = detail::scc(n, out_adj);
    std::int32_t ncomp = 0;
    for (std::int32_t c : comp) ncomp = std::max(ncomp, c + 1);

    // Tarjan emits components in reverse topological order: every edge goes
    // from a higher component id to a lower or equal one.
    std::vector<std::vector<std::int32_t>> cadj(ncomp);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v : out_adj[u])
            if (comp[u] != comp[v]) cadj[comp[u]].push_back(comp[v]);

    BitMatrix creach(ncomp);
    for (std::int32_t c = 0; c < ncomp; ++c) {
        creach.set(c, c);
        for (std::int32_t d : cadj[c]) creach.or_row(c, d);
    }
    BitMatrix reach(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = 0; v < n; ++v)
            if (creach.get(comp[u], comp[v])) reach.set(u, v);
    return reach;
}

} // namespace klcells

#endif
