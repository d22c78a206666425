#ifndef KLCELLS_COXETER_HPP
#define KLCELLS_COXETER_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "klcells/bits.hpp"
#include "klcells/errors.hpp"

namespace klcells {

// Elements are indices into the enumeration table of a CoxeterSystem.
// Index 0 is always the identity; indices are sorted by length, then by
// lexicographically minimal reduced word, so they are stable across runs.
using Element = std::uint32_t;

// Generators are 0-based internally; all I/O is 1-based.
using Generator = int;

// Subset of generators as a bitmask over 0..rank-1.
using GenSet = std::uint32_t;

enum class Side { Left, Right };

inline Side other_side(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

constexpr std::size_t kMaxRank = 8;
constexpr std::size_t kDefaultEnumBudget = 1000000;
constexpr std::size_t kFullTableCap = 4096;

// ---------------------------------------------------------------------------
// Coxeter matrix

class CoxeterMatrix {
public:
    CoxeterMatrix() : rank_(0) {}

    CoxeterMatrix(int rank, const std::vector<int>& entries) : rank_(rank), m_(entries) {
        validate();
    }

    int rank() const { return rank_; }
    int order(Generator s, Generator t) const { return m_[s * rank_ + t]; }

    // Named finite crystallographic types.  Labels follow the conventions the
    // rest of the library relies on: A_n and B_n are chains (with the order-4
    // bond at the far end of B_n), D_n has generator 3 as the branch node with
    // 1, 2, 4 attached and 5..n continuing the chain from 4, and E6 uses the
    // Bourbaki numbering (chain 1-3-4-5-6, generator 2 attached to 4).
    static CoxeterMatrix named(const std::string& name) {
        if (name.size() < 2) throw validation_error("unknown group descriptor: " + name);
        char family = name[0];
        int n = 0;
        try {
            n = std::stoi(name.substr(1));
        } catch (...) {
            throw validation_error("unknown group descriptor: " + name);
        }
        auto chain = [](int rank, int last_bond) {
            std::vector<int> m(rank * rank, 2);
            for (int i = 0; i < rank; ++i) m[i * rank + i] = 1;
            for (int i = 0; i + 1 < rank; ++i) {
                int bond = (i + 2 == rank) ? last_bond : 3;
                m[i * rank + (i + 1)] = m[(i + 1) * rank + i] = bond;
            }
            return m;
        };
        switch (family) {
        case 'A':
            if (n < 1 || n > 6) throw validation_error("A_n supported for 1 <= n <= 6");
            return CoxeterMatrix(n, chain(n, 3));
        case 'B':
            if (n < 2 || n > 5) throw validation_error("B_n supported for 2 <= n <= 5");
            return CoxeterMatrix(n, chain(n, 4));
        case 'D': {
            if (n < 4 || n > 6) throw validation_error("D_n supported for 4 <= n <= 6");
            std::vector<int> m(n * n, 2);
            for (int i = 0; i < n; ++i) m[i * n + i] = 1;
            auto bond = [&](int a, int b) { m[a * n + b] = m[b * n + a] = 3; };
            bond(0, 2);
            bond(1, 2);
            bond(2, 3);
            for (int i = 3; i + 1 < n; ++i) bond(i, i + 1);
            return CoxeterMatrix(n, m);
        }
        case 'E': {
            if (n != 6) throw validation_error("only E6 is supported");
            std::vector<int> m(36, 2);
            for (int i = 0; i < 6; ++i) m[i * 6 + i] = 1;
            auto bond = [&](int a, int b) { m[a * 6 + b] = m[b * 6 + a] = 3; };
            bond(0, 2);
            bond(2, 3);
            bond(3, 4);
            bond(4, 5);
            bond(1, 3);
            return CoxeterMatrix(6, m);
        }
        default:
            throw validation_error("unknown group descriptor: " + name);
        }
    }

    // Matrix file format: one line per pair, "i j m" with 1-based generator
    // indices.  Unlisted off-diagonal pairs default to order 2.
    static CoxeterMatrix from_stream(std::istream& in) {
        struct Triple {
            int i, j, m;
        };
        std::vector<Triple> triples;
        int max_index = 0;
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            int i, j, m;
            if (!(ls >> i)) continue;
            if (!(ls >> j >> m)) throw validation_error("matrix file: malformed line: " + line);
            if (i < 1 || j < 1) throw validation_error("matrix file: indices are 1-based");
            triples.push_back({i, j, m});
            max_index = std::max(max_index, std::max(i, j));
        }
        if (max_index == 0) throw validation_error("matrix file: no entries");
        if (static_cast<std::size_t>(max_index) > kMaxRank)
            throw validation_error("matrix file: rank exceeds supported maximum");
        int rank = max_index;
        std::vector<int> m(rank * rank, 2);
        for (int i = 0; i < rank; ++i) m[i * rank + i] = 1;
        for (const auto& t : triples) {
            m[(t.i - 1) * rank + (t.j - 1)] = t.m;
            m[(t.j - 1) * rank + (t.i - 1)] = t.m;
        }
        return CoxeterMatrix(rank, m);
    }

    static CoxeterMatrix from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw validation_error("cannot open matrix file: " + path);
        return from_stream(in);
    }

private:
    void validate() const {
        if (rank_ < 1 || static_cast<std::size_t>(rank_) > kMaxRank)
            throw validation_error("rank out of range");
        if (m_.size() != static_cast<std::size_t>(rank_) * rank_)
            throw validation_error("matrix size does not match rank");
        for (int i = 0; i < rank_; ++i) {
            if (m_[i * rank_ + i] != 1) throw validation_error("m(s,s) must be 1");
            for (int j = 0; j < rank_; ++j) {
                if (i == j) continue;
                int v = m_[i * rank_ + j];
                if (v != m_[j * rank_ + i]) throw validation_error("matrix must be symmetric");
                // The enumeration acts by integer matrices, which restricts us
                // to crystallographic bond orders.
                if (v != 2 && v != 3 && v != 4 && v != 6)
                    throw validation_error("off-diagonal orders must be one of 2, 3, 4, 6");
            }
        }
    }

    int rank_;
    std::vector<int> m_;
};

// ---------------------------------------------------------------------------
// Coxeter system

namespace detail {

using Mat = std::array<std::int32_t, kMaxRank * kMaxRank>;

struct MatHash {
    std::size_t operator()(const Mat& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int32_t v : m) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

class CoxeterSystem {
public:
    static CoxeterSystem build(const CoxeterMatrix& mat, std::string name,
                               std::size_t budget = kDefaultEnumBudget) {
        CoxeterSystem sys;
        sys.name_ = std::move(name);
        sys.mat_ = mat;
        sys.rank_ = mat.rank();
        sys.enumerate(budget);
        return sys;
    }

    // Accepts a named type ("D4", "E6", ...) or a path to a matrix file.
    static CoxeterSystem build(const std::string& descriptor,
                               std::size_t budget = kDefaultEnumBudget) {
        bool named = descriptor.size() >= 2 && descriptor[0] >= 'A' && descriptor[0] <= 'Z' &&
                     descriptor.find_first_not_of("0123456789", 1) == std::string::npos;
        if (named) return build(CoxeterMatrix::named(descriptor), descriptor, budget);
        return build(CoxeterMatrix::from_file(descriptor), descriptor, budget);
    }

    const std::string& name() const { return name_; }
    int rank() const { return rank_; }
    std::size_t size() const { return length_.size(); }
    const CoxeterMatrix& coxeter_matrix() const { return mat_; }
    int bond_order(Generator s, Generator t) const { return mat_.order(s, t); }

    int length(Element w) const { return length_[w]; }

    Element left(Generator s, Element w) const { return left_mul_[w * rank_ + s]; }
    Element right(Element w, Generator s) const { return right_mul_[w * rank_ + s]; }

    Element mul_gen(Side side, Element w, Generator s) const {
        check_element(w);
        check_generator(s);
        return side == Side::Left ? left(s, w) : right(w, s);
    }

    Element inverse(Element w) const { return inverse_[w]; }

    GenSet descents(Side side, Element w) const {
        check_element(w);
        return side == Side::Left ? left_desc_[w] : right_desc_[w];
    }
    GenSet left_descents(Element w) const { return left_desc_[w]; }
    GenSet right_descents(Element w) const { return right_desc_[w]; }

    bool is_descent(Side side, Element w, Generator s) const {
        return (descents(side, w) >> s) & 1u;
    }

    // Lexicographically minimal reduced word, 0-based letters.
    std::vector<Generator> word(Element w) const {
        std::vector<Generator> out;
        out.reserve(length_[w]);
        std::size_t off = word_offset_[w];
        for (int i = 0; i < length_[w]; ++i) out.push_back(word_letters_[off + i]);
        return out;
    }

    Element element_from_word(const std::vector<Generator>& word0) const {
        Element w = 0;
        for (Generator s : word0) {
            check_generator(s);
            w = right(w, s);
        }
        return w;
    }

    // Element printed as space-separated 1-based generator indices; the
    // identity prints as "e".
    std::string format_element(Element w) const {
        if (w == 0) return "e";
        std::string out;
        std::size_t off = word_offset_[w];
        for (int i = 0; i < length_[w]; ++i) {
            if (i) out += ' ';
            out += std::to_string(word_letters_[off + i] + 1);
        }
        return out;
    }

    // Parses "e" or whitespace-separated 1-based generator indices.
    Element parse_word(const std::string& text) const {
        std::istringstream in(text);
        std::string tok;
        std::vector<Generator> letters;
        while (in >> tok) {
            if (tok == "e") continue;
            int v = 0;
            try {
                v = std::stoi(tok);
            } catch (...) {
                throw validation_error("unparseable word token: " + tok);
            }
            if (v < 1 || v > rank_)
                throw validation_error("generator index out of range: " + tok);
            letters.push_back(v - 1);
        }
        return element_from_word(letters);
    }

    std::string format_genset(GenSet g) const {
        std::string out = "{";
        bool first = true;
        for (int s = 0; s < rank_; ++s) {
            if ((g >> s) & 1u) {
                if (!first) out += ',';
                out += std::to_string(s + 1);
                first = false;
            }
        }
        out += '}';
        return out;
    }

    // Bruhat order.  Dense table when the group is small enough; otherwise the
    // standard descent recursion, which needs one table walk per query.
    bool bruhat_leq(Element y, Element w) const {
        check_element(y);
        check_element(w);
        if (!bruhat_.empty()) return bruhat_.get(w, y);
        return bruhat_leq_walk(y, w);
    }

    bool has_bruhat_table() const { return !bruhat_.empty(); }

    // w = w_J * w^J with w_J in W_J and w^J without left descents in J.
    std::pair<Element, Element> parabolic_decompose(GenSet J, Element w) const {
        check_element(w);
        Element wj = 0;
        Element rest = w;
        std::vector<Generator> stripped;
        while (true) {
            GenSet d = left_desc_[rest] & J;
            if (!d) break;
            Generator s = lowest_bit(d);
            stripped.push_back(s);
            rest = left(s, rest);
        }
        for (Generator s : stripped) wj = right(wj, s);
        return {wj, rest};
    }

    Element p_J(GenSet J, Element w) const { return parabolic_decompose(J, w).first; }

    // Minimal-length representatives of the right cosets W_J a, i.e. W^J.
    std::vector<Element> min_coset_reps(GenSet J) const {
        std::vector<Element> reps;
        for (Element w = 0; w < size(); ++w)
            if ((left_desc_[w] & J) == 0) reps.push_back(w);
        return reps;
    }

    Element long_element() const { return static_cast<Element>(size() - 1); }

    GenSet full_genset() const { return (GenSet(1) << rank_) - 1; }

    static Generator lowest_bit(GenSet g) {
        Generator s = 0;
        while (!((g >> s) & 1u)) ++s;
        return s;
    }

private:
    void check_element(Element w) const {
        if (w >= size()) throw scope_error("element index out of range");
    }
    void check_generator(Generator s) const {
        if (s < 0 || s >= rank_) throw validation_error("generator index out of range");
    }

    // One step of the descent recursion: y <= w iff (sy <= sw if sy < y, else
    // y <= sw) for any s with sw < w.
    bool bruhat_leq_walk(Element y, Element w) const {
        while (true) {
            if (y == 0) return true;
            if (length_[y] >= length_[w]) return y == w;
            Generator s = lowest_bit(left_desc_[w]);
            Element sy = left(s, y);
            if (length_[sy] < length_[y]) y = sy;
            w = left(s, w);
        }
    }

    void enumerate(std::size_t budget) {
        using detail::Mat;
        const int n = rank_;

        // Integer Cartan pairings a(i,j) with a(i,j)*a(j,i) = 4cos^2(pi/m).
        std::array<std::array<int, kMaxRank>, kMaxRank> a{};
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) {
                    a[i][j] = 2;
                    continue;
                }
                switch (mat_.order(i, j)) {
                case 2: a[i][j] = 0; break;
                case 3: a[i][j] = -1; break;
                case 4: a[i][j] = (i < j) ? -1 : -2; break;
                case 6: a[i][j] = (i < j) ? -1 : -3; break;
                }
            }

        auto ident = [&]() {
            Mat m{};
            for (int i = 0; i < n; ++i) m[i * kMaxRank + i] = 1;
            return m;
        };
        // Reflection i acting on root coordinates: row i of the product picks
        // up -a(i,j) corrections.
        auto reflect = [&](int i) {
            Mat m = ident();
            for (int j = 0; j < n; ++j) m[i * kMaxRank + j] -= a[i][j];
            return m;
        };
        auto mul = [&](const Mat& x, const Mat& y) {
            Mat r{};
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    std::int32_t v = x[i * kMaxRank + k];
                    if (!v) continue;
                    for (int j = 0; j < n; ++j) r[i * kMaxRank + j] += v * y[k * kMaxRank + j];
                }
            return r;
        };

        std::vector<Mat> gen_mats;
        for (int i = 0; i < n; ++i) gen_mats.push_back(reflect(i));

        std::unordered_map<Mat, Element, detail::MatHash> index;
        std::vector<Mat> mats;
        std::vector<int> len;
        std::vector<Element> rmul;

        mats.push_back(ident());
        index.emplace(mats[0], 0);
        len.push_back(0);

        constexpr Element kUnknown = 0xffffffffu;
        rmul.resize(kMaxRank, kUnknown);

        // Breadth-first enumeration over the Cayley graph; graph distance from
        // the identity is the length function.
        for (std::size_t head = 0; head < mats.size(); ++head) {
            for (int s = 0; s < n; ++s) {
                if (rmul[head * kMaxRank + s] != kUnknown) continue;
                Mat prod = mul(mats[head], gen_mats[s]);
                auto it = index.find(prod);
                Element target;
                if (it == index.end()) {
                    if (mats.size() >= budget)
                        throw budget_error("enumeration budget exceeded (group infinite or too large)");
                    target = static_cast<Element>(mats.size());
                    mats.push_back(prod);
                    index.emplace(prod, target);
                    len.push_back(len[head] + 1);
                    rmul.resize(mats.size() * kMaxRank, kUnknown);
                } else {
                    target = it->second;
                }
                rmul[head * kMaxRank + s] = target;
                rmul[target * kMaxRank + s] = static_cast<Element>(head);
            }
        }

        const std::size_t count = mats.size();

        // Left multiplication via lookup of the left product matrix.
        std::vector<Element> lmul(count * kMaxRank);
        for (std::size_t w = 0; w < count; ++w)
            for (int s = 0; s < n; ++s) {
                Mat prod = mul(gen_mats[s], mats[w]);
                lmul[w * kMaxRank + s] = index.at(prod);
            }

        index.clear();
        mats.clear();
        mats.shrink_to_fit();

        // Canonical reduced word: repeatedly take the smallest left descent.
        auto canonical_word = [&](Element w) {
            std::vector<Generator> out;
            Element cur = w;
            while (len[cur] > 0) {
                for (int s = 0; s < n; ++s) {
                    Element sw = lmul[cur * kMaxRank + s];
                    if (len[sw] < len[cur]) {
                        out.push_back(s);
                        cur = sw;
                        break;
                    }
                }
            }
            return out;
        };

        std::vector<std::vector<Generator>> words(count);
        for (std::size_t w = 0; w < count; ++w) words[w] = canonical_word(static_cast<Element>(w));

        // Canonical order: by length, then lexicographically minimal word.
        std::vector<Element> order(count);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Element x, Element y) {
            if (len[x] != len[y]) return len[x] < len[y];
            return words[x] < words[y];
        });
        std::vector<Element> rank_of(count);
        for (std::size_t i = 0; i < count; ++i) rank_of[order[i]] = static_cast<Element>(i);

        length_.resize(count);
        left_mul_.resize(count * n);
        right_mul_.resize(count * n);
        word_offset_.resize(count);
        inverse_.resize(count);
        left_desc_.resize(count);
        right_desc_.resize(count);

        std::size_t total_letters = 0;
        for (std::size_t i = 0; i < count; ++i) total_letters += words[order[i]].size();
        word_letters_.reserve(total_letters);

        for (std::size_t i = 0; i < count; ++i) {
            Element old = order[i];
            length_[i] = len[old];
            for (int s = 0; s < n; ++s) {
                left_mul_[i * n + s] = rank_of[lmul[old * kMaxRank + s]];
                right_mul_[i * n + s] = rank_of[rmul[old * kMaxRank + s]];
            }
            word_offset_[i] = word_letters_.size();
            for (Generator s : words[old]) word_letters_.push_back(static_cast<std::uint8_t>(s));
        }

        for (Element w = 0; w < count; ++w) {
            GenSet ld = 0, rd = 0;
            for (int s = 0; s < n; ++s) {
                if (length_[left_mul_[w * n + s]] < length_[w]) ld |= GenSet(1) << s;
                if (length_[right_mul_[w * n + s]] < length_[w]) rd |= GenSet(1) << s;
            }
            left_desc_[w] = ld;
            right_desc_[w] = rd;
        }

        for (Element w = 0; w < count; ++w) {
            Element inv = 0;
            std::size_t off = word_offset_[w];
            for (int i = length_[w] - 1; i >= 0; --i)
                inv = right_mul_[inv * n + word_letters_[off + i]];
            inverse_[w] = inv;
        }

        // The long element must be unique and maximal in a finite group.
        if (count >= 2 && length_[count - 1] == length_[count - 2])
            throw validation_error("internal: long element not unique");

        if (count <= kFullTableCap) build_bruhat_table();
    }

    void build_bruhat_table() {
        const std::size_t n = size();
        bruhat_ = BitMatrix(n);
        bruhat_.set(0, 0);
        for (Element w = 1; w < n; ++w) {
            Generator s = lowest_bit(left_desc_[w]);
            Element sw = left(s, w);
            bruhat_.set(w, w);
            for (Element y = 0; y < w; ++y) {
                Element sy = left(s, y);
                Element probe = (length_[sy] < length_[y]) ? sy : y;
                if (probe == sw || bruhat_.get(sw, probe)) bruhat_.set(w, y);
            }
        }
    }

    std::string name_;
    CoxeterMatrix mat_;
    int rank_ = 0;
    std::vector<int> length_;
    std::vector<Element> left_mul_;
    std::vector<Element> right_mul_;
    std::vector<Element> inverse_;
    std::vector<GenSet> left_desc_;
    std::vector<GenSet> right_desc_;
    std::vector<std::size_t> word_offset_;
    std::vector<std::uint8_t> word_letters_;
    BitMatrix bruhat_; // bruhat_.get(w, y) == (y <= w)
};

} // namespace klcells

#endif
