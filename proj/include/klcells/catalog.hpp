#ifndef KLCELLS_CATALOG_HPP
#define KLCELLS_CATALOG_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "klcells/coxeter.hpp"

namespace klcells {

// ---------------------------------------------------------------------------
// Types of elements in the middle two-sided cell of W(D4).  The subscript is
// in label space: the three outer nodes of the D4 diagram are labeled 1, 2, 4
// and the branch node is 3.

enum class D4Type : std::uint8_t { A1, A2, A4, B1, B2, B4, C, D };

inline bool is_A_type(D4Type t) { return t <= D4Type::A4; }
inline bool is_B_type(D4Type t) { return t >= D4Type::B1 && t <= D4Type::B4; }

// Outer label (1, 2 or 4) of an A or B type.
inline int type_outer(D4Type t) {
    switch (t) {
    case D4Type::A1:
    case D4Type::B1: return 1;
    case D4Type::A2:
    case D4Type::B2: return 2;
    case D4Type::A4:
    case D4Type::B4: return 4;
    default: return 0;
    }
}

inline D4Type make_A(int outer) {
    return outer == 1 ? D4Type::A1 : outer == 2 ? D4Type::A2 : D4Type::A4;
}
inline D4Type make_B(int outer) {
    return outer == 1 ? D4Type::B1 : outer == 2 ? D4Type::B2 : D4Type::B4;
}

inline std::string type_name(D4Type t) {
    switch (t) {
    case D4Type::A1: return "A1";
    case D4Type::A2: return "A2";
    case D4Type::A4: return "A4";
    case D4Type::B1: return "B1";
    case D4Type::B2: return "B2";
    case D4Type::B4: return "B4";
    case D4Type::C: return "C";
    case D4Type::D: return "D";
    }
    return "?";
}

// Permutation of the outer labels {1,2,4}; perm[l] is the image of label l,
// with perm[3] == 3.
using LabelPerm = std::array<int, 5>;

inline constexpr LabelPerm kIdPerm = {0, 1, 2, 3, 4};

inline D4Type permute_type(D4Type t, const LabelPerm& p) {
    if (is_A_type(t)) return make_A(p[type_outer(t)]);
    if (is_B_type(t)) return make_B(p[type_outer(t)]);
    return t;
}

// ---------------------------------------------------------------------------
// The eight cell catalogs.

enum class CatalogId : std::uint8_t { C10a, C10b, C14a1, C14a2, C14a4, C14b1, C14b2, C14b4 };

inline constexpr std::array<CatalogId, 8> kAllCatalogs = {
    CatalogId::C10a,  CatalogId::C10b,  CatalogId::C14a1, CatalogId::C14a2,
    CatalogId::C14a4, CatalogId::C14b1, CatalogId::C14b2, CatalogId::C14b4};

inline std::string catalog_name(CatalogId id) {
    switch (id) {
    case CatalogId::C10a: return "C(10,a)";
    case CatalogId::C10b: return "C(10,b)";
    case CatalogId::C14a1: return "C(14,a,1)";
    case CatalogId::C14a2: return "C(14,a,2)";
    case CatalogId::C14a4: return "C(14,a,4)";
    case CatalogId::C14b1: return "C(14,b,1)";
    case CatalogId::C14b2: return "C(14,b,2)";
    case CatalogId::C14b4: return "C(14,b,4)";
    }
    return "?";
}

inline std::size_t catalog_size(CatalogId id) {
    return (id == CatalogId::C10a || id == CatalogId::C10b) ? 10 : 14;
}

inline bool catalog_is_14a(CatalogId id) {
    return id == CatalogId::C14a1 || id == CatalogId::C14a2 || id == CatalogId::C14a4;
}
inline bool catalog_is_14b(CatalogId id) {
    return id == CatalogId::C14b1 || id == CatalogId::C14b2 || id == CatalogId::C14b4;
}

inline int catalog_outer(CatalogId id) {
    switch (id) {
    case CatalogId::C14a1:
    case CatalogId::C14b1: return 1;
    case CatalogId::C14a2:
    case CatalogId::C14b2: return 2;
    case CatalogId::C14a4:
    case CatalogId::C14b4: return 4;
    default: return 0;
    }
}

// Right type shared by all members of the catalog, taken as a left cell.
inline D4Type catalog_right_type(CatalogId id) {
    switch (id) {
    case CatalogId::C10a: return D4Type::C;
    case CatalogId::C10b: return D4Type::D;
    default:
        return catalog_is_14a(id) ? make_A(catalog_outer(id)) : make_B(catalog_outer(id));
    }
}

// ---------------------------------------------------------------------------
// Shape data transcribed from the three cell diagrams.  Tree edges carry the
// label of the generator whose left multiplication connects the two nodes
// (child = s . parent, one level up); "dashed" marks the connections the
// diagrams draw as D4 maps rather than Knuth maps.  Gray edges are the
// remaining mu = 1 connections.

namespace catalog_detail {

struct ShapeNode {
    D4Type type;
    std::int8_t level;
};

struct ShapeEdge {
    std::int8_t from, to, label;
    bool dashed;
};

struct ShapeGray {
    std::int8_t a, b;
};

struct Shape {
    const ShapeNode* nodes;
    int node_count;
    const ShapeEdge* edges;
    int edge_count;
    const ShapeGray* gray;
    int gray_count;
};

inline constexpr ShapeNode kNodes10[] = {
    {D4Type::C, 0},  {D4Type::D, 1},  {D4Type::A2, 2}, {D4Type::A4, 2}, {D4Type::A1, 2},
    {D4Type::B1, 3}, {D4Type::B4, 3}, {D4Type::B2, 3}, {D4Type::C, 4},  {D4Type::D, 5}};

inline constexpr ShapeEdge kEdges10[] = {
    {0, 1, 3, false}, {1, 3, 4, true},  {1, 4, 1, true},  {1, 2, 2, true},
    {2, 6, 1, false}, {2, 5, 4, false}, {3, 5, 2, false}, {4, 6, 2, false},
    {4, 7, 4, false}, {3, 7, 1, false}, {7, 8, 2, true},  {5, 8, 1, true},
    {6, 8, 4, true},  {8, 9, 3, false}};

inline constexpr ShapeGray kGray10[] = {{9, 4}, {9, 2}, {9, 3}, {7, 0}, {5, 0}, {6, 0}};

inline constexpr ShapeNode kNodes14a[] = {
    {D4Type::A4, 0}, {D4Type::B2, 1}, {D4Type::B1, 1}, {D4Type::A1, 2}, {D4Type::C, 2},
    {D4Type::A2, 2}, {D4Type::B4, 3}, {D4Type::D, 3},  {D4Type::B4, 3}, {D4Type::A2, 4},
    {D4Type::A4, 4}, {D4Type::A1, 4}, {D4Type::B1, 5}, {D4Type::B2, 5}};

inline constexpr ShapeEdge kEdges14a[] = {
    {4, 7, 3, false},  {7, 10, 4, true},  {7, 11, 1, true},  {7, 9, 2, true},
    {9, 12, 4, false}, {10, 12, 2, false}, {11, 13, 4, false}, {10, 13, 1, false},
    {6, 9, 3, false},  {8, 11, 3, false}, {3, 6, 2, false},  {5, 8, 1, false},
    {1, 3, 3, false},  {1, 4, 2, true},   {2, 4, 1, true},   {2, 5, 3, false},
    {0, 1, 1, false},  {0, 2, 2, false}};

inline constexpr ShapeGray kGray14a[] = {{4, 6}, {7, 3}, {4, 8}, {7, 5},
                                         {7, 0}, {4, 13}, {4, 12}};

inline constexpr ShapeNode kNodes14b[] = {
    {D4Type::A1, 0}, {D4Type::A2, 0}, {D4Type::B2, 1}, {D4Type::B4, 1}, {D4Type::B1, 1},
    {D4Type::A4, 2}, {D4Type::C, 2},  {D4Type::A4, 2}, {D4Type::B1, 3}, {D4Type::D, 3},
    {D4Type::B2, 3}, {D4Type::A2, 4}, {D4Type::A1, 4}, {D4Type::B4, 5}};

inline constexpr ShapeEdge kEdges14b[] = {
    {6, 9, 3, false},  {9, 12, 1, true},  {9, 11, 2, true},  {11, 13, 1, false},
    {12, 13, 2, false}, {3, 6, 4, true},   {0, 3, 2, false},  {1, 3, 1, false},
    {4, 6, 1, true},   {2, 6, 2, true},   {0, 2, 4, false},  {1, 4, 4, false},
    {2, 5, 3, false},  {5, 8, 2, false},  {8, 11, 3, false}, {4, 7, 3, false},
    {7, 10, 1, false}, {10, 12, 3, false}};

inline constexpr ShapeGray kGray14b[] = {{6, 8}, {9, 5}, {6, 10}, {9, 7},
                                         {6, 13}, {9, 0}, {9, 1}};

inline constexpr Shape kShape10 = {kNodes10, 10, kEdges10, 14, kGray10, 6};
inline constexpr Shape kShape14a = {kNodes14a, 14, kEdges14a, 18, kGray14a, 7};
inline constexpr Shape kShape14b = {kNodes14b, 14, kEdges14b, 18, kGray14b, 7};

struct CatalogSpec {
    CatalogId id;
    const Shape* shape;
    LabelPerm perm;                        // shape labels -> catalog labels
    std::array<const char*, 2> bottoms;    // per bottom node, shape label space
};

inline const std::array<CatalogSpec, 8>& catalog_specs() {
    static const std::array<CatalogSpec, 8> specs = {{
        {CatalogId::C10a, &kShape10, kIdPerm, {"1 2 4", nullptr}},
        {CatalogId::C10b, &kShape10, kIdPerm, {"1 2 4 3", nullptr}},
        {CatalogId::C14a1, &kShape14a, {0, 4, 2, 3, 1}, {"4 3 4", nullptr}},
        {CatalogId::C14a2, &kShape14a, {0, 1, 4, 3, 2}, {"4 3 4", nullptr}},
        {CatalogId::C14a4, &kShape14a, kIdPerm, {"4 3 4", nullptr}},
        {CatalogId::C14b1, &kShape14b, {0, 2, 4, 3, 1}, {"1 3 1 2", "2 3 2 1"}},
        {CatalogId::C14b2, &kShape14b, {0, 1, 4, 3, 2}, {"1 3 1 2", "2 3 2 1"}},
        {CatalogId::C14b4, &kShape14b, kIdPerm, {"1 3 1 2", "2 3 2 1"}},
    }};
    return specs;
}

} // namespace catalog_detail

// ---------------------------------------------------------------------------
// A D4 configuration: an embedding of the labeled D4 diagram into the
// generators of a Coxeter system.  gen[k] is the generator carrying label
// k+1; gen[2] is the branch node.

struct D4Config {
    std::array<Generator, 4> gen;

    Generator label_gen(int label) const { return gen[label - 1]; }

    GenSet mask() const {
        GenSet m = 0;
        for (Generator g : gen) m |= GenSet(1) << g;
        return m;
    }

    // All six assignments of the outer labels to the same three generators.
    std::vector<D4Config> outer_relabelings() const {
        std::array<Generator, 3> outer = {gen[0], gen[1], gen[3]};
        std::vector<D4Config> out;
        int idx[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (auto& p : idx)
            out.push_back(D4Config{{outer[p[0]], outer[p[1]], gen[2], outer[p[2]]}});
        return out;
    }
};

inline void validate_d4_config(const CoxeterSystem& sys, const D4Config& cfg) {
    for (int l : {1, 2, 4})
        if (sys.bond_order(cfg.label_gen(l), cfg.label_gen(3)) != 3)
            throw validation_error("D4 configuration: outer nodes must bond to the center with order 3");
    if (sys.bond_order(cfg.gen[0], cfg.gen[1]) != 2 ||
        sys.bond_order(cfg.gen[0], cfg.gen[3]) != 2 ||
        sys.bond_order(cfg.gen[1], cfg.gen[3]) != 2)
        throw validation_error("D4 configuration: outer nodes must commute");
}

// Every D4 subdiagram of the Coxeter diagram, with outer labels assigned in
// ascending generator order.
inline std::vector<D4Config> detect_d4_configs(const CoxeterSystem& sys) {
    std::vector<D4Config> out;
    for (Generator c = 0; c < sys.rank(); ++c) {
        std::vector<Generator> outer;
        for (Generator o = 0; o < sys.rank(); ++o)
            if (o != c && sys.bond_order(o, c) == 3) outer.push_back(o);
        if (outer.size() < 3) continue;
        for (std::size_t i = 0; i < outer.size(); ++i)
            for (std::size_t j = i + 1; j < outer.size(); ++j)
                for (std::size_t k = j + 1; k < outer.size(); ++k) {
                    Generator a = outer[i], b = outer[j], d = outer[k];
                    if (sys.bond_order(a, b) == 2 && sys.bond_order(a, d) == 2 &&
                        sys.bond_order(b, d) == 2)
                        out.push_back(D4Config{{a, b, c, d}});
                }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Concrete catalogs inside a Coxeter system, for one configuration.

class D4Catalogs {
public:
    struct NodeRef {
        CatalogId catalog;
        int node;
    };

    struct CatalogData {
        CatalogId id;
        std::vector<Element> elems;       // by node id
        std::vector<D4Type> types;        // by node id
        std::vector<int> levels;          // by node id
        std::vector<std::array<int, 2>> fixture_edges; // node pairs, tree + gray
    };

    D4Catalogs(const CoxeterSystem& sys, const D4Config& cfg) : sys_(&sys), cfg_(cfg) {
        validate_d4_config(sys, cfg);
        for (const auto& spec : catalog_detail::catalog_specs()) build_one(spec);
    }

    const CoxeterSystem& system() const { return *sys_; }
    const D4Config& config() const { return cfg_; }
    GenSet mask() const { return cfg_.mask(); }

    const CatalogData& data(CatalogId id) const { return data_[static_cast<int>(id)]; }

    std::optional<NodeRef> find(Element wj) const {
        auto it = member_.find(wj);
        if (it == member_.end()) return std::nullopt;
        return it->second;
    }

private:
    void build_one(const catalog_detail::CatalogSpec& spec) {
        const auto& shape = *spec.shape;
        CatalogData d;
        d.id = spec.id;
        d.elems.assign(shape.node_count, 0);
        d.types.resize(shape.node_count);
        d.levels.resize(shape.node_count);
        std::vector<char> have(shape.node_count, 0);

        for (int i = 0; i < shape.node_count; ++i) {
            d.types[i] = permute_type(shape.nodes[i].type, spec.perm);
            d.levels[i] = shape.nodes[i].level;
        }

        auto apply_label = [&](int shape_label, Element w) {
            return sys_->left(cfg_.label_gen(spec.perm[shape_label]), w);
        };

        // Seed the bottom nodes from their words.
        for (int b = 0; b < 2; ++b) {
            if (!spec.bottoms[b]) continue;
            std::istringstream in(spec.bottoms[b]);
            Element w = 0;
            int tok;
            int len = 0;
            while (in >> tok) {
                w = sys_->right(w, cfg_.label_gen(spec.perm[tok]));
                ++len;
            }
            // Bottom nodes are listed first in each shape.
            if (sys_->length(w) != len)
                throw std::logic_error("catalog bottom word is not reduced");
            d.elems[b] = w;
            have[b] = 1;
        }

        // Propagate along tree edges until every node is assigned, checking
        // every edge for consistency; this cross-validates the transcription.
        bool progress = true;
        while (progress) {
            progress = false;
            for (int e = 0; e < shape.edge_count; ++e) {
                const auto& edge = shape.edges[e];
                if (have[edge.from] && !have[edge.to]) {
                    d.elems[edge.to] = apply_label(edge.label, d.elems[edge.from]);
                    have[edge.to] = 1;
                    progress = true;
                }
            }
        }
        for (int i = 0; i < shape.node_count; ++i)
            if (!have[i]) throw std::logic_error("catalog shape is not connected");
        for (int e = 0; e < shape.edge_count; ++e) {
            const auto& edge = shape.edges[e];
            if (apply_label(edge.label, d.elems[edge.from]) != d.elems[edge.to])
                throw std::logic_error("catalog shape edges are inconsistent");
            if (sys_->length(d.elems[edge.to]) != sys_->length(d.elems[edge.from]) + 1)
                throw std::logic_error("catalog shape edge does not raise length");
        }

        for (int e = 0; e < shape.edge_count; ++e)
            d.fixture_edges.push_back({shape.edges[e].from, shape.edges[e].to});
        for (int g = 0; g < shape.gray_count; ++g)
            d.fixture_edges.push_back({shape.gray[g].a, shape.gray[g].b});

        for (int i = 0; i < shape.node_count; ++i) {
            auto [it, fresh] = member_.emplace(d.elems[i], NodeRef{spec.id, i});
            if (!fresh) throw std::logic_error("catalog member appears twice");
        }
        data_[static_cast<int>(spec.id)] = std::move(d);
    }

    const CoxeterSystem* sys_;
    D4Config cfg_;
    std::array<CatalogData, 8> data_;
    std::unordered_map<Element, NodeRef> member_;
};

// A clump: one catalog translated to a coset of the D4 parabolic.  Members
// are indexed by catalog node.
struct Clump {
    CatalogId catalog;
    Element coset_rep;
    std::vector<Element> members;
    const D4Catalogs* catalogs;

    std::size_t size() const { return members.size(); }

    D4Type type_of_node(int node) const {
        return catalogs->data(catalog).types[node];
    }

    std::vector<Element> of_type(D4Type t) const {
        std::vector<Element> out;
        const auto& d = catalogs->data(catalog);
        for (std::size_t i = 0; i < members.size(); ++i)
            if (d.types[i] == t) out.push_back(members[i]);
        std::sort(out.begin(), out.end());
        return out;
    }

    bool operator==(const Clump& o) const {
        return catalog == o.catalog && coset_rep == o.coset_rep;
    }
};

// Translate one catalog by a minimal coset representative.
inline Clump make_clump(const D4Catalogs& cats, CatalogId id, Element coset_rep) {
    const CoxeterSystem& sys = cats.system();
    Clump c{id, coset_rep, {}, &cats};
    const auto& d = cats.data(id);
    std::vector<Generator> a_word = sys.word(coset_rep);
    c.members.reserve(d.elems.size());
    for (Element m : d.elems) {
        Element w = m;
        for (Generator s : a_word) w = sys.right(w, s);
        c.members.push_back(w);
    }
    return c;
}

// The clump of w (left version), if the D4-part of w lies in a catalog.
inline std::optional<Clump> clump_of_left(const D4Catalogs& cats, Element w) {
    const CoxeterSystem& sys = cats.system();
    auto [wj, rest] = sys.parabolic_decompose(cats.mask(), w);
    auto ref = cats.find(wj);
    if (!ref) return std::nullopt;
    return make_clump(cats, ref->catalog, rest);
}

// Node index of w within its clump, if any.
inline std::optional<D4Catalogs::NodeRef> catalog_node_of_left(const D4Catalogs& cats,
                                                               Element w) {
    auto [wj, rest] = cats.system().parabolic_decompose(cats.mask(), w);
    (void)rest;
    return cats.find(wj);
}

} // namespace klcells

#endif
