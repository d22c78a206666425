#ifndef KLCELLS_EXPORT_HPP
#define KLCELLS_EXPORT_HPP

#include <json.hpp>

#include <sstream>
#include <string>

#include "klcells/gentau.hpp"
#include "klcells/verify.hpp"
#include "klcells/wgraph.hpp"

namespace klcells {

using nlohmann::json;

// ---------------------------------------------------------------------------
// DOT

// Undirected W-graph: vertex labels carry the canonical word and the left
// descent set; edges carry the mu-tilde weight.
inline std::string to_dot(const WGraph& g, const std::string& name = "wgraph") {
    const CoxeterSystem& sys = g.system();
    std::ostringstream out;
    out << "graph \"" << name << "\" {\n";
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
        Element w = g.vertex(i);
        out << "  n" << i << " [label=\"" << sys.format_element(w) << "\\n"
            << sys.format_genset(sys.left_descents(w)) << "\"];\n";
    }
    for (const auto& e : g.edges())
        out << "  n" << e.u << " -- n" << e.v << " [weight=" << e.weight << ", label=\""
            << e.weight << "\"];\n";
    out << "}\n";
    return out.str();
}

// Directed preorder graph for one side.
inline std::string to_dot_preorder(const WGraph& g, Side side,
                                   const std::string& name = "preorder") {
    const CoxeterSystem& sys = g.system();
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
        Element w = g.vertex(i);
        out << "  n" << i << " [label=\"" << sys.format_element(w) << "\\n"
            << sys.format_genset(sys.descents(side, w)) << "\"];\n";
    }
    for (auto [u, v] : g.preorder_edges(side)) out << "  n" << u << " -> n" << v << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// JSON

inline json genset_to_json(const CoxeterSystem& sys, GenSet g) {
    json out = json::array();
    for (int s = 0; s < sys.rank(); ++s)
        if ((g >> s) & 1u) out.push_back(s + 1);
    return out;
}

inline json to_json(const WGraph& g) {
    const CoxeterSystem& sys = g.system();
    json vertices = json::array();
    for (std::uint32_t i = 0; i < g.vertex_count(); ++i) {
        Element w = g.vertex(i);
        vertices.push_back({{"word", sys.format_element(w)},
                            {"left_tau", genset_to_json(sys, sys.left_descents(w))},
                            {"right_tau", genset_to_json(sys, sys.right_descents(w))}});
    }
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}});
    return json{{"group", sys.name()}, {"vertices", vertices}, {"edges", edges}};
}

inline std::string cell_side_name(CellSide side) {
    switch (side) {
    case CellSide::Left: return "left";
    case CellSide::Right: return "right";
    case CellSide::TwoSided: return "two-sided";
    }
    return "?";
}

inline json to_json(const WGraph& g, const CellPartition& part) {
    const CoxeterSystem& sys = g.system();
    json classes = json::array();
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
        json members = json::array();
        for (Element w : part.classes[c]) members.push_back(sys.format_element(w));
        classes.push_back({{"id", c}, {"size", part.classes[c].size()}, {"elements", members}});
    }
    return json{{"group", sys.name()},
                {"side", cell_side_name(part.side)},
                {"class_count", part.classes.size()},
                {"classes", classes}};
}

inline json to_json(const CoxeterSystem& sys, const GenTauPartition& part) {
    json elements = json::array();
    for (Element w = 0; w < sys.size(); ++w)
        elements.push_back({{"word", sys.format_element(w)}, {"class", part.class_of[w]}});
    json counts = json::array();
    for (std::size_t c : part.class_counts) counts.push_back(c);
    return json{{"group", sys.name()},
                {"side", part.side == Side::Left ? "L" : "R"},
                {"class_count", part.num_classes},
                {"order_reached", part.order_reached},
                {"class_counts_per_order", counts},
                {"elements", elements}};
}

inline json to_json(const VerificationReport& rep) {
    json violations = json::array();
    for (const auto& v : rep.violations)
        violations.push_back({{"witness", v.witness}, {"expected", v.expected}, {"actual", v.actual}});
    json notes = json::array();
    for (const auto& n : rep.notes) notes.push_back(n);
    return json{{"theorem", rep.theorem},
                {"group", rep.group},
                {"passed", rep.passed()},
                {"skipped", rep.skipped},
                {"skip_reason", rep.skip_reason},
                {"instances", rep.instances},
                {"elapsed_seconds", rep.elapsed_seconds},
                {"notes", notes},
                {"violations", violations}};
}

} // namespace klcells

#endif
