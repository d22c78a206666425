#ifndef KLCELLS_KL_HPP
#define KLCELLS_KL_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klcells/coxeter.hpp"
#include "klcells/poly.hpp"

namespace klcells {

// Interned polynomial store; tables refer to polynomials by id.
class PolyPool {
public:
    PolyPool() { intern(Polynomial::one()); }

    std::int32_t intern(const Polynomial& p) {
        std::size_t h = p.hash();
        auto range = index_.equal_range(h);
        for (auto it = range.first; it != range.second; ++it)
            if (polys_[it->second] == p) return it->second;
        std::int32_t id = static_cast<std::int32_t>(polys_.size());
        polys_.push_back(p);
        index_.emplace(h, id);
        return id;
    }

    const Polynomial& get(std::int32_t id) const { return polys_[id]; }
    std::size_t size() const { return polys_.size(); }

private:
    std::vector<Polynomial> polys_;
    std::unordered_multimap<std::size_t, std::int32_t> index_;
};

// Table of Kazhdan-Lusztig polynomials P_{y,w}, with mu lists per column.
// Scope is either the whole group or a Bruhat interval [e, top]; the defining
// recursion only ever moves down in Bruhat order, so an interval is a closed
// world for it.
class KLTable {
public:
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();
    static constexpr std::int32_t kNoEntry = -1;

    static KLTable build_full(const CoxeterSystem& sys, std::size_t cap = kFullTableCap) {
        if (sys.size() > cap)
            throw budget_error("full KL table restricted to groups with at most " +
                               std::to_string(cap) + " elements");
        KLTable t(sys, /*full=*/true);
        t.scope_.resize(sys.size());
        for (Element w = 0; w < sys.size(); ++w) t.scope_[w] = w;
        t.local_of_.assign(sys.size(), 0);
        for (std::uint32_t i = 0; i < t.scope_.size(); ++i) t.local_of_[t.scope_[i]] = i;
        t.build_local_bruhat();
        t.compute();
        return t;
    }

    static KLTable build_interval(const CoxeterSystem& sys, Element top,
                                  std::size_t cap = 65536) {
        KLTable t(sys, /*full=*/false);
        t.top_ = top;
        t.scope_ = interval_below(sys, top);
        if (t.scope_.size() > cap) throw budget_error("Bruhat interval exceeds table budget");
        t.local_of_.assign(sys.size(), npos);
        for (std::uint32_t i = 0; i < t.scope_.size(); ++i) t.local_of_[t.scope_[i]] = i;
        t.build_local_bruhat();
        t.compute();
        return t;
    }

    // Rebuilds a table from externally supplied rows (the cache loader).
    // Rows must cover exactly the pairs y <= w of the full table, in table
    // order; every polynomial is re-validated against the structural
    // invariants, but the values themselves are trusted.
    static KLTable from_rows(const CoxeterSystem& sys,
                             const std::vector<std::pair<std::pair<Element, Element>,
                                                         Polynomial>>& rows) {
        if (sys.size() > kFullTableCap)
            throw budget_error("full KL table restricted to groups with at most " +
                               std::to_string(kFullTableCap) + " elements");
        KLTable t(sys, /*full=*/true);
        t.scope_.resize(sys.size());
        for (Element w = 0; w < sys.size(); ++w) t.scope_[w] = w;
        t.local_of_.assign(sys.size(), 0);
        for (std::uint32_t i = 0; i < t.scope_.size(); ++i) t.local_of_[t.scope_[i]] = i;
        t.build_local_bruhat();

        t.cols_.resize(t.scope_.size());
        for (std::uint32_t w = 0; w < t.scope_.size(); ++w)
            t.cols_[w].poly.assign(w, kNoEntry);

        std::size_t at = 0;
        for (std::uint32_t w = 0; w < t.scope_.size(); ++w) {
            for (std::uint32_t y = 0; y <= w; ++y) {
                if (!t.leq_local(y, w)) continue;
                if (at >= rows.size()) throw validation_error("missing table rows");
                const auto& row = rows[at++];
                if (row.first.first != t.scope_[y] || row.first.second != t.scope_[w])
                    throw validation_error("table rows out of order");
                const Polynomial& p = row.second;
                t.validate_entry(y, w, p);
                if (y == w) {
                    if (!(p == Polynomial::one()))
                        throw validation_error("diagonal entry must be 1");
                    continue;
                }
                t.cols_[w].poly[y] = t.pool_.intern(p);
            }
        }
        if (at != rows.size()) throw validation_error("extra table rows");
        for (std::uint32_t w = 0; w < t.scope_.size(); ++w) t.fill_mu_list(w);
        return t;
    }

    const CoxeterSystem& system() const { return *sys_; }
    bool full_scope() const { return full_; }
    Element top() const { return top_; }
    const std::vector<Element>& scope() const { return scope_; }

    bool in_scope(Element w) const {
        return w < local_of_.size() && local_of_[w] != npos;
    }

    const Polynomial& kl_poly(Element y, Element w) const {
        std::uint32_t ly = local(y), lw = local(w);
        if (ly == lw) return Polynomial::one();
        if (ly > lw || !leq_local(ly, lw)) return Polynomial::zero();
        std::int32_t id = cols_[lw].poly[ly];
        return id == kNoEntry ? Polynomial::zero() : pool_.get(id);
    }

    Coeff mu(Element y, Element w) const {
        std::uint32_t ly = local(y), lw = local(w);
        if (ly >= lw || !leq_local(ly, lw)) return 0;
        int gap = sys_->length(w) - sys_->length(y);
        if (gap % 2 == 0) return 0;
        return kl_poly(y, w).coeff((gap - 1) / 2);
    }

    Coeff mu_tilde(Element y, Element w) const {
        std::uint32_t ly = local(y), lw = local(w);
        if (ly == lw) return 0;
        return ly < lw ? mu(y, w) : mu(w, y);
    }

    // Bruhat comparison restricted to the table's scope.
    bool leq(Element y, Element w) const { return leq_local(local(y), local(w)); }

    // Nonzero mu(y, w) entries of column w, as (y, mu) pairs ascending in y.
    std::vector<std::pair<Element, Coeff>> mu_column(Element w) const {
        std::uint32_t lw = local(w);
        std::vector<std::pair<Element, Coeff>> out;
        out.reserve(cols_[lw].mu.size());
        for (const auto& e : cols_[lw].mu) out.emplace_back(scope_[e.first], Coeff(e.second));
        return out;
    }

    // Deterministic traversal over all pairs y <= w (including y == w), in
    // (l(w), w, y) order; used by the cache writer.
    template <typename F>
    void for_each_pair(F&& f) const {
        for (std::uint32_t w = 0; w < scope_.size(); ++w)
            for (std::uint32_t y = 0; y <= w; ++y) {
                if (!leq_local(y, w)) continue;
                f(scope_[y], scope_[w],
                  y == w ? Polynomial::one()
                         : pool_.get(cols_[w].poly[y]));
            }
    }

    std::size_t distinct_polynomials() const { return pool_.size(); }

private:
    struct Column {
        std::vector<std::int32_t> poly;                   // indexed by local y < local w
        std::vector<std::pair<std::uint32_t, std::int64_t>> mu; // (local y, mu), mu != 0
    };

    explicit KLTable(const CoxeterSystem& sys, bool full) : sys_(&sys), full_(full) {}

    std::uint32_t local(Element w) const {
        if (w >= local_of_.size() || local_of_[w] == npos)
            throw scope_error("element outside table scope");
        return local_of_[w];
    }

    bool leq_local(std::uint32_t ly, std::uint32_t lw) const {
        if (ly == lw) return true;
        if (ly > lw) return false;
        return leq_.get(lw, ly);
    }

    // [e, top] as the subword closure of a reduced word for top: running over
    // the letters of the word, each prefix set is closed under appending the
    // next letter.
    static std::vector<Element> interval_below(const CoxeterSystem& sys, Element top) {
        std::vector<char> in(sys.size(), 0);
        in[0] = 1;
        std::vector<Element> members{0};
        for (Generator s : sys.word(top)) {
            std::vector<Element> added;
            for (Element z : members) {
                Element zs = sys.right(z, s);
                if (!in[zs]) {
                    in[zs] = 1;
                    added.push_back(zs);
                }
            }
            members.insert(members.end(), added.begin(), added.end());
        }
        std::sort(members.begin(), members.end());
        return members;
    }

    void build_local_bruhat() {
        const std::size_t n = scope_.size();
        leq_ = BitMatrix(n);
        leq_.set(0, 0);
        for (std::uint32_t lw = 1; lw < n; ++lw) {
            Element w = scope_[lw];
            Generator s = CoxeterSystem::lowest_bit(sys_->left_descents(w));
            std::uint32_t lsw = local_of_[sys_->left(s, w)];
            leq_.set(lw, lw);
            for (std::uint32_t ly = 0; ly < lw; ++ly) {
                Element y = scope_[ly];
                Element sy = sys_->left(s, y);
                std::uint32_t probe =
                    sys_->length(sy) < sys_->length(y) ? local_of_[sy] : ly;
                if (probe == lsw || leq_.get(lsw, probe)) leq_.set(lw, ly);
            }
        }
    }

    void validate_entry(std::uint32_t ly, std::uint32_t lw, const Polynomial& p) const {
        Element y = scope_[ly], w = scope_[lw];
        if (p.is_zero()) throw std::logic_error("P_{y,w} must be nonzero for y <= w");
        if (!p.nonnegative())
            throw std::logic_error("negative Kazhdan-Lusztig coefficient for P(" +
                                   sys_->format_element(y) + ", " + sys_->format_element(w) +
                                   ")");
        if (p.coeff(0) != 1)
            throw std::logic_error("constant term of P_{y,w} must be 1");
        if (ly != lw) {
            int bound = (sys_->length(w) - sys_->length(y) - 1) / 2;
            if (p.degree() > bound)
                throw std::logic_error("degree bound violated for P(" + sys_->format_element(y) +
                                       ", " + sys_->format_element(w) + ")");
        }
    }

    void compute() {
        const std::size_t n = scope_.size();
        cols_.resize(n);
        for (std::uint32_t lw = 1; lw < n; ++lw) {
            Column& col = cols_[lw];
            col.poly.assign(lw, kNoEntry);
            Element w = scope_[lw];
            Generator s = CoxeterSystem::lowest_bit(sys_->left_descents(w));
            Element sw = sys_->left(s, w);
            std::uint32_t lsw = local_of_[sw];
            const Column& swcol = cols_[lsw];
            const int lw_len = sys_->length(w);

            // Decreasing y so that the descent-raising shortcut below can copy
            // from entries of this same column that are already done.
            for (std::uint32_t ly = lw; ly-- > 0;) {
                if (!leq_.get(lw, ly)) continue;
                Element y = scope_[ly];
                Element sy = sys_->left(s, y);
                if (sys_->length(sy) > sys_->length(y)) {
                    // P_{y,w} = P_{sy,w} when sy > y and sw < w.
                    std::uint32_t lsy = local_of_[sy];
                    col.poly[ly] = (lsy == lw) ? 0 /* P_{w,w} = 1, pool id 0 */
                                               : col.poly[lsy];
                    continue;
                }
                // P_{y,w} = P_{sy,sw} + q P_{y,sw}
                //           - sum over z <= sw with sz < z of
                //             mu(z,sw) q^{(l(w)-l(z))/2} P_{y,z}.
                std::uint32_t lsy = local_of_[sy];
                Polynomial acc = lookup(lsy, lsw);
                acc.add_shifted(lookup(ly, lsw), 1);
                for (const auto& [lz, muv] : swcol.mu) {
                    if (lz < ly) continue;
                    Element z = scope_[lz];
                    if (!sys_->is_descent(Side::Left, z, s)) continue;
                    if (lz != ly && !leq_.get(lz, ly)) continue;
                    acc.sub_scaled_shifted(lookup(ly, lz), Coeff(muv),
                                           (lw_len - sys_->length(z)) / 2);
                }
                validate_entry(ly, lw, acc);
                col.poly[ly] = pool_.intern(acc);
            }
            fill_mu_list(lw);
        }
        if (n > 0) fill_mu_list(0);
    }

    const Polynomial& lookup(std::uint32_t ly, std::uint32_t lw) const {
        if (ly == lw) return Polynomial::one();
        if (ly > lw || !leq_.get(lw, ly)) return Polynomial::zero();
        std::int32_t id = cols_[lw].poly[ly];
        return id == kNoEntry ? Polynomial::zero() : pool_.get(id);
    }

    void fill_mu_list(std::uint32_t lw) {
        Column& col = cols_[lw];
        col.mu.clear();
        const int lw_len = sys_->length(scope_[lw]);
        for (std::uint32_t ly = 0; ly < lw; ++ly) {
            if (col.poly[ly] == kNoEntry) continue;
            int gap = lw_len - sys_->length(scope_[ly]);
            if (gap % 2 == 0) continue;
            const Coeff& c = pool_.get(col.poly[ly]).coeff((gap - 1) / 2);
            if (c == 0) continue;
            if (!c.fits_slong_p())
                throw std::logic_error("mu value exceeds cached integer width");
            col.mu.emplace_back(ly, static_cast<std::int64_t>(c.get_si()));
        }
    }

    const CoxeterSystem* sys_;
    bool full_;
    Element top_ = 0;
    std::vector<Element> scope_;
    std::vector<std::uint32_t> local_of_;
    BitMatrix leq_;
    std::vector<Column> cols_;
    PolyPool pool_;
};

} // namespace klcells

#endif
