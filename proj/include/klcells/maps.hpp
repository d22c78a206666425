#ifndef KLCELLS_MAPS_HPP
#define KLCELLS_MAPS_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klcells/catalog.hpp"
#include "klcells/coxeter.hpp"

namespace klcells {

// ---------------------------------------------------------------------------
// Knuth maps (order-3 bonds).
//
// D_{s,t} = { w : tau(w) intersect {s,t} = {t} }; T_{s,t} takes w to the one
// element of {sw, tw} lying in D_{t,s}.  Everything below is written for the
// left action; the right action is the same computation through inverses.

struct KnuthMapId {
    Side side;
    Generator s, t;
};

namespace map_detail {

inline GenSet pair_mask(Generator s, Generator t) {
    return (GenSet(1) << s) | (GenSet(1) << t);
}

inline bool domain_left(const CoxeterSystem& sys, Generator s, Generator t, Element w) {
    return (sys.left_descents(w) & pair_mask(s, t)) == (GenSet(1) << t);
}

inline Element knuth_left(const CoxeterSystem& sys, Generator s, Generator t, Element w) {
    Element sw = sys.left(s, w), tw = sys.left(t, w);
    bool sw_ok = domain_left(sys, t, s, sw);
    bool tw_ok = domain_left(sys, t, s, tw);
    if (sw_ok == tw_ok) throw std::logic_error("Knuth image is not unique");
    return sw_ok ? sw : tw;
}

inline std::vector<Element> b2_left(const CoxeterSystem& sys, Generator s, Generator t,
                                    Element w) {
    // Case split on the {s,t}-part of w: t -> {sw}, ts -> {sw, tw}, tst -> {tw}.
    GenSet J = pair_mask(s, t);
    Element p = sys.parabolic_decompose(J, w).first;
    Element te = sys.left(t, 0);
    Element ts = sys.right(te, s);
    Element tst = sys.right(ts, t);
    std::vector<Element> out;
    if (p == te) {
        out = {sys.left(s, w)};
    } else if (p == ts) {
        out = {sys.left(s, w), sys.left(t, w)};
    } else if (p == tst) {
        out = {sys.left(t, w)};
    } else {
        throw precondition_error("element outside B2 map domain");
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace map_detail

inline void validate_knuth_id(const CoxeterSystem& sys, const KnuthMapId& id) {
    if (id.s == id.t || sys.bond_order(id.s, id.t) != 3)
        throw validation_error("Knuth map requires a bond of order 3");
}

inline bool knuth_domain(const CoxeterSystem& sys, const KnuthMapId& id, Element w) {
    validate_knuth_id(sys, id);
    if (id.side == Side::Left) return map_detail::domain_left(sys, id.s, id.t, w);
    return map_detail::domain_left(sys, id.s, id.t, sys.inverse(w));
}

inline Element knuth_map(const CoxeterSystem& sys, const KnuthMapId& id, Element w) {
    if (!knuth_domain(sys, id, w))
        throw precondition_error("element outside Knuth map domain");
    if (id.side == Side::Left) return map_detail::knuth_left(sys, id.s, id.t, w);
    return sys.inverse(map_detail::knuth_left(sys, id.s, id.t, sys.inverse(w)));
}

// T_{t,s}(w w0) == T_{s,t}(w) w0 in a finite group; returns the common value.
inline Element long_element_conjugate(const CoxeterSystem& sys, const KnuthMapId& id,
                                      Element w) {
    Element w0 = sys.long_element();
    Element lhs;
    Element ww0;
    if (id.side == Side::Left) {
        Element tw = knuth_map(sys, id, w);
        std::vector<Generator> w0word = sys.word(w0);
        auto mul_right = [&](Element x) {
            for (Generator g : w0word) x = sys.right(x, g);
            return x;
        };
        lhs = mul_right(tw);
        ww0 = mul_right(w);
    } else {
        Element tw = knuth_map(sys, id, w);
        std::vector<Generator> w0word = sys.word(w0);
        auto mul_left = [&](Element x) {
            for (auto it = w0word.rbegin(); it != w0word.rend(); ++it) x = sys.left(*it, x);
            return x;
        };
        lhs = mul_left(tw);
        ww0 = mul_left(w);
    }
    Element rhs = knuth_map(sys, KnuthMapId{id.side, id.t, id.s}, ww0);
    if (lhs != rhs) throw std::logic_error("long-element conjugation identity failed");
    return lhs;
}

// ---------------------------------------------------------------------------
// B2 maps (order-4 bonds); images have one or two elements.

struct B2MapId {
    Side side;
    Generator s, t;
};

inline void validate_b2_id(const CoxeterSystem& sys, const B2MapId& id) {
    if (id.s == id.t || sys.bond_order(id.s, id.t) != 4)
        throw validation_error("B2 map requires a bond of order 4");
}

inline bool b2_domain(const CoxeterSystem& sys, const B2MapId& id, Element w) {
    validate_b2_id(sys, id);
    if (id.side == Side::Left) return map_detail::domain_left(sys, id.s, id.t, w);
    return map_detail::domain_left(sys, id.s, id.t, sys.inverse(w));
}

inline std::vector<Element> b2_map(const CoxeterSystem& sys, const B2MapId& id, Element w) {
    if (!b2_domain(sys, id, w)) throw precondition_error("element outside B2 map domain");
    if (id.side == Side::Left) return map_detail::b2_left(sys, id.s, id.t, w);
    std::vector<Element> img = map_detail::b2_left(sys, id.s, id.t, sys.inverse(w));
    for (Element& x : img) x = sys.inverse(x);
    std::sort(img.begin(), img.end());
    return img;
}

// ---------------------------------------------------------------------------
// Type classification.  A left-type query on the right side is the left-type
// query of the inverse.

inline std::optional<D4Type> classify_d4_type_left(const CoxeterSystem& sys,
                                                   const D4Config& cfg, Element w) {
    auto tau0 = [&](Element x) {
        GenSet out = 0;
        GenSet d = sys.left_descents(x);
        for (int l : {1, 2, 3, 4})
            if ((d >> cfg.label_gen(l)) & 1u) out |= GenSet(1) << l;
        return out;
    };
    auto knuth_label = [&](int a, int b, Element x) {
        return map_detail::knuth_left(sys, cfg.label_gen(a), cfg.label_gen(b), x);
    };
    auto bit = [](int l) { return GenSet(1) << l; };

    GenSet t0 = tau0(w);
    const GenSet outer_all = bit(1) | bit(2) | bit(4);

    if (t0 == (outer_all | bit(3)) || t0 == 0) return std::nullopt;

    if (t0 == outer_all) {
        // type C iff tau0(T_{3,i}(w)) = {3}
        if (tau0(knuth_label(3, 1, w)) == bit(3)) return D4Type::C;
        return std::nullopt;
    }
    if (t0 == bit(3)) {
        // type D iff tau0(T_{i,3}(w)) = {1,2,4}
        if (tau0(knuth_label(1, 3, w)) == outer_all) return D4Type::D;
        return std::nullopt;
    }
    for (int i : {1, 2, 4}) {
        int j = (i == 1) ? 2 : 1;
        if (t0 == (bit(i) | bit(3))) {
            // type A_i iff tau0(T_{j,3}(w)) = {i,j}
            if (tau0(knuth_label(j, 3, w)) == (bit(i) | bit(j))) return make_A(i);
            return std::nullopt;
        }
        int k = 7 - i - j; // {i,j,k} = {1,2,4}
        if (t0 == (bit(j) | bit(k))) {
            // type B_i iff tau0(T_{3,j}(w)) = {k,3}
            if (tau0(knuth_label(3, j, w)) == (bit(k) | bit(3))) return make_B(i);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

inline std::optional<D4Type> classify_d4_type(const CoxeterSystem& sys, const D4Config& cfg,
                                              Side side, Element w) {
    return classify_d4_type_left(sys, cfg, side == Side::Left ? w : sys.inverse(w));
}

inline std::optional<Clump> clump_of(const D4Catalogs& cats, Side side, Element w) {
    const CoxeterSystem& sys = cats.system();
    auto c = clump_of_left(cats, side == Side::Left ? w : sys.inverse(w));
    if (c && side == Side::Right) {
        for (Element& m : c->members) m = sys.inverse(m);
    }
    return c;
}

// ---------------------------------------------------------------------------
// D4 maps: between types A_i <-> D and B_i <-> C within a clump.

enum class D4MapKind : std::uint8_t {
    AtoD, // T_{D,i}: type A_i -> the type D elements of the clump
    BtoC, // T_{C,i}: type B_i -> the type C elements
    CtoB, // T_{i,C}: type C   -> the type B_i elements
    DtoA, // T_{i,D}: type D   -> the type A_i elements
};

inline D4Type d4_source_type(D4MapKind k, int outer) {
    switch (k) {
    case D4MapKind::AtoD: return make_A(outer);
    case D4MapKind::BtoC: return make_B(outer);
    case D4MapKind::CtoB: return D4Type::C;
    case D4MapKind::DtoA: return D4Type::D;
    }
    return D4Type::C;
}

inline D4Type d4_target_type(D4MapKind k, int outer) {
    switch (k) {
    case D4MapKind::AtoD: return D4Type::D;
    case D4MapKind::BtoC: return D4Type::C;
    case D4MapKind::CtoB: return make_B(outer);
    case D4MapKind::DtoA: return make_A(outer);
    }
    return D4Type::C;
}

inline D4MapKind d4_pair_kind(D4MapKind k) {
    switch (k) {
    case D4MapKind::AtoD: return D4MapKind::DtoA;
    case D4MapKind::BtoC: return D4MapKind::CtoB;
    case D4MapKind::CtoB: return D4MapKind::BtoC;
    case D4MapKind::DtoA: return D4MapKind::AtoD;
    }
    return k;
}

inline std::string d4_map_name(D4MapKind k, int outer) {
    switch (k) {
    case D4MapKind::AtoD: return "T(D," + std::to_string(outer) + ")";
    case D4MapKind::BtoC: return "T(C," + std::to_string(outer) + ")";
    case D4MapKind::CtoB: return "T(" + std::to_string(outer) + ",C)";
    case D4MapKind::DtoA: return "T(" + std::to_string(outer) + ",D)";
    }
    return "?";
}

inline bool d4_domain(const D4Catalogs& cats, Side side, D4MapKind kind, int outer,
                      Element w) {
    const CoxeterSystem& sys = cats.system();
    Element v = side == Side::Left ? w : sys.inverse(w);
    auto ref = catalog_node_of_left(cats, v);
    if (!ref) return false;
    return cats.data(ref->catalog).types[ref->node] == d4_source_type(kind, outer);
}

inline std::vector<Element> d4_map(const D4Catalogs& cats, Side side, D4MapKind kind,
                                   int outer, Element w) {
    const CoxeterSystem& sys = cats.system();
    Element v = side == Side::Left ? w : sys.inverse(w);
    auto ref = catalog_node_of_left(cats, v);
    if (!ref || cats.data(ref->catalog).types[ref->node] != d4_source_type(kind, outer))
        throw precondition_error("element is not of the source type of this D4 map");
    std::vector<Element> out = clump_of_left(cats, v)->of_type(d4_target_type(kind, outer));
    if (out.empty() || out.size() > 2)
        throw std::logic_error("D4 map image must have one or two elements");
    if (side == Side::Right)
        for (Element& x : out) x = sys.inverse(x);
    std::sort(out.begin(), out.end());
    return out;
}

// The composite T_{3,4} T_{1,3} T_{3,2} T_{4,3} T_{3,1} T_{2,3} applied to a
// type A_1 element; fixes the element exactly when its clump has 10 members.
inline Element semicircle_map(const D4Catalogs& cats, Side side, Element w) {
    const CoxeterSystem& sys = cats.system();
    const D4Config& cfg = cats.config();
    if (classify_d4_type(sys, cfg, side, w) != make_A(1))
        throw precondition_error("semicircle composite starts at a type A1 element");
    static constexpr int seq[6][2] = {{2, 3}, {3, 1}, {4, 3}, {3, 2}, {1, 3}, {3, 4}};
    Element x = w;
    for (auto& st : seq) {
        KnuthMapId id{side, cfg.label_gen(st[0]), cfg.label_gen(st[1])};
        if (!knuth_domain(sys, id, x))
            throw std::logic_error("semicircle composite left its domain");
        x = knuth_map(sys, id, x);
    }
    return x;
}

// ---------------------------------------------------------------------------
// A uniform handle for the transport maps, used by the generalized
// tau-invariant and the verifiers.  Knuth maps are type 1 (singleton images);
// B2 and D4 maps are type 2; "derived" wraps a type 2 map into the involution
// U that swaps the two preimages of a singleton image.

struct TransportMap {
    enum class Base : std::uint8_t { Knuth, B2, D4 };

    Base base;
    Side side;
    bool derived = false;
    Generator s = -1, t = -1;                 // Knuth / B2
    D4MapKind d4kind = D4MapKind::AtoD;       // D4
    int d4outer = 0;                          // D4, label space
    std::shared_ptr<const D4Catalogs> cats;   // D4

    static TransportMap knuth(Side side, Generator s, Generator t) {
        TransportMap m;
        m.base = Base::Knuth;
        m.side = side;
        m.s = s;
        m.t = t;
        return m;
    }
    static TransportMap b2(Side side, Generator s, Generator t, bool derived = false) {
        TransportMap m;
        m.base = Base::B2;
        m.side = side;
        m.s = s;
        m.t = t;
        m.derived = derived;
        return m;
    }
    static TransportMap d4(Side side, std::shared_ptr<const D4Catalogs> cats, D4MapKind kind,
                           int outer, bool derived = false) {
        TransportMap m;
        m.base = Base::D4;
        m.side = side;
        m.cats = std::move(cats);
        m.d4kind = kind;
        m.d4outer = outer;
        m.derived = derived;
        return m;
    }

    bool type2() const { return !derived && base != Base::Knuth; }

    bool in_domain(const CoxeterSystem& sys, Element w) const {
        switch (base) {
        case Base::Knuth: return knuth_domain(sys, KnuthMapId{side, s, t}, w);
        case Base::B2: return b2_domain(sys, B2MapId{side, s, t}, w);
        case Base::D4: return d4_domain(*cats, side, d4kind, d4outer, w);
        }
        return false;
    }

    std::vector<Element> raw_image(const CoxeterSystem& sys, Element w) const {
        switch (base) {
        case Base::Knuth: return {knuth_map(sys, KnuthMapId{side, s, t}, w)};
        case Base::B2: return b2_map(sys, B2MapId{side, s, t}, w);
        case Base::D4: return d4_map(*cats, side, d4kind, d4outer, w);
        }
        return {};
    }

    TransportMap pair_map() const {
        TransportMap m = *this;
        m.derived = false;
        switch (base) {
        case Base::Knuth:
            throw validation_error("Knuth maps have no pair function");
        case Base::B2:
            std::swap(m.s, m.t);
            return m;
        case Base::D4:
            m.d4kind = d4_pair_kind(d4kind);
            return m;
        }
        return m;
    }

    // The image, after applying the derived-map construction when requested.
    std::vector<Element> image(const CoxeterSystem& sys, Element w) const {
        if (!derived) return raw_image(sys, w);
        TransportMap fwd = *this;
        fwd.derived = false;
        std::vector<Element> img = fwd.raw_image(sys, w);
        if (img.size() == 2) return {w};
        std::vector<Element> pre = fwd.pair_map().raw_image(sys, img[0]);
        if (pre.size() != 2)
            throw std::logic_error("derived map: singleton image must have two preimages");
        return {pre[0] == w ? pre[1] : pre[0]};
    }

    std::string name() const {
        std::string sidec = side == Side::Left ? "L" : "R";
        std::string out;
        switch (base) {
        case Base::Knuth:
            out = "knuth_" + sidec + "(" + std::to_string(s + 1) + "," + std::to_string(t + 1) + ")";
            break;
        case Base::B2:
            out = "b2_" + sidec + "(" + std::to_string(s + 1) + "," + std::to_string(t + 1) + ")";
            break;
        case Base::D4:
            out = "d4_" + sidec + "_" + d4_map_name(d4kind, d4outer);
            break;
        }
        if (derived) out = "U[" + out + "]";
        return out;
    }
};

// The derived involution U of a type 2 map, applied to one element.
inline Element derived_map_U(const CoxeterSystem& sys, const TransportMap& map, Element w) {
    if (!map.type2()) throw validation_error("derived map requires a type 2 transport map");
    TransportMap u = map;
    u.derived = true;
    if (!map.in_domain(sys, w)) throw precondition_error("element outside map domain");
    return u.image(sys, w)[0];
}

using MapFamily = std::vector<TransportMap>;

struct FamilySelection {
    bool knuth = false;
    bool b2 = false;
    bool d4 = false;
    bool derived = false; // the involutions U derived from the B2 and D4 maps
};

inline MapFamily make_family(const CoxeterSystem& sys, Side side, FamilySelection sel) {
    MapFamily fam;
    auto add_pairs = [&](int order, auto&& add) {
        for (Generator s = 0; s < sys.rank(); ++s)
            for (Generator t = 0; t < sys.rank(); ++t)
                if (s != t && sys.bond_order(s, t) == order) add(s, t);
    };
    if (sel.knuth)
        add_pairs(3, [&](Generator s, Generator t) { fam.push_back(TransportMap::knuth(side, s, t)); });
    if (sel.b2 || sel.derived)
        add_pairs(4, [&](Generator s, Generator t) {
            if (sel.b2) fam.push_back(TransportMap::b2(side, s, t));
            if (sel.derived) fam.push_back(TransportMap::b2(side, s, t, /*derived=*/true));
        });
    if (sel.d4 || sel.derived) {
        for (const D4Config& cfg : detect_d4_configs(sys)) {
            auto cats = std::make_shared<const D4Catalogs>(sys, cfg);
            for (int outer : {1, 2, 4})
                for (D4MapKind kind :
                     {D4MapKind::AtoD, D4MapKind::BtoC, D4MapKind::CtoB, D4MapKind::DtoA}) {
                    if (sel.d4) fam.push_back(TransportMap::d4(side, cats, kind, outer));
                    if (sel.derived)
                        fam.push_back(TransportMap::d4(side, cats, kind, outer, /*derived=*/true));
                }
        }
    }
    return fam;
}

} // namespace klcells

#endif
