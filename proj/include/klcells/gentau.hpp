#ifndef KLCELLS_GENTAU_HPP
#define KLCELLS_GENTAU_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "klcells/maps.hpp"

namespace klcells {

// Partition of W by the generalized tau-invariant of a map family.
struct GenTauPartition {
    Side side;
    std::vector<std::int32_t> class_of;      // per element
    std::int32_t num_classes = 0;
    int order_reached = 0;                   // first n with partition_n == partition_{n-1}
    std::vector<std::size_t> class_counts;   // per order 0..order_reached
    // Snapshots of the partition at each order, for order-resolved queries.
    std::vector<std::vector<std::int32_t>> history;

    bool equal(Element x, Element y) const { return class_of[x] == class_of[y]; }
    bool equal_at_order(int n, Element x, Element y) const {
        const auto& p = history[std::min<std::size_t>(n, history.size() - 1)];
        return p[x] == p[y];
    }
};

// Synchronous refinement to a fixed point.  Order 0 groups by the descent
// set on the family's side; the signature of w at order n is its class at
// n-1 together with, per map, the domain bit and the set of classes of the
// image at n-1.  Refinement is monotone over a finite set, so an unchanged
// class count means the partition is stable for every later order.
inline GenTauPartition gentau_refine(const CoxeterSystem& sys, const MapFamily& family,
                                     Side side,
                                     std::optional<int> max_order = std::nullopt) {
    const std::size_t n = sys.size();
    const int limit = max_order.value_or(static_cast<int>(n));
    for (const TransportMap& m : family)
        if (m.side != side) throw validation_error("map family acts on the wrong side");

    GenTauPartition part;
    part.side = side;

    // Precompute the images once; they do not change between rounds.
    std::vector<std::vector<std::int32_t>> images(family.size());
    std::vector<std::vector<char>> in_dom(family.size());
    for (std::size_t m = 0; m < family.size(); ++m) {
        images[m].reserve(n * 2);
        in_dom[m].assign(n, 0);
        std::vector<std::int32_t>& img = images[m];
        img.assign(n * 2, -1);
        for (Element w = 0; w < n; ++w) {
            if (!family[m].in_domain(sys, w)) continue;
            in_dom[m][w] = 1;
            std::vector<Element> im = family[m].image(sys, w);
            img[2 * w] = static_cast<std::int32_t>(im[0]);
            if (im.size() > 1) img[2 * w + 1] = static_cast<std::int32_t>(im[1]);
        }
    }

    // Order 0: descent-set fibers, class ids in order of first appearance.
    std::vector<std::int32_t> cls(n);
    {
        std::map<GenSet, std::int32_t> ids;
        for (Element w = 0; w < n; ++w) {
            auto [it, fresh] = ids.emplace(sys.descents(side, w), static_cast<std::int32_t>(ids.size()));
            cls[w] = it->second;
        }
        part.num_classes = static_cast<std::int32_t>(ids.size());
    }
    part.class_counts.push_back(part.num_classes);
    part.history.push_back(cls);

    using Signature = std::vector<std::int32_t>;
    std::vector<std::int32_t> next(n);
    for (int order = 1; order <= limit; ++order) {
        std::map<Signature, std::int32_t> ids;
        for (Element w = 0; w < n; ++w) {
            Signature sig;
            sig.push_back(cls[w]);
            for (std::size_t m = 0; m < family.size(); ++m) {
                if (!in_dom[m][w]) {
                    sig.push_back(-1);
                    sig.push_back(-1);
                    continue;
                }
                std::int32_t a = cls[images[m][2 * w]];
                std::int32_t b = images[m][2 * w + 1] >= 0 ? cls[images[m][2 * w + 1]] : a;
                sig.push_back(std::min(a, b));
                sig.push_back(std::max(a, b));
            }
            auto [it, fresh] = ids.emplace(std::move(sig), static_cast<std::int32_t>(ids.size()));
            next[w] = it->second;
        }
        bool stable = static_cast<std::int32_t>(ids.size()) == part.num_classes;
        if (stable) {
            // partition_n == partition_{n-1}: the refinement has converged.
            part.order_reached = order - 1;
            break;
        }
        cls.swap(next);
        part.num_classes = static_cast<std::int32_t>(ids.size());
        part.class_counts.push_back(part.num_classes);
        part.history.push_back(cls);
        part.order_reached = order;
    }
    part.class_of = cls;
    return part;
}

inline bool gentau_equal(const GenTauPartition& p, Element x, Element y) {
    return p.equal(x, y);
}

} // namespace klcells

#endif
