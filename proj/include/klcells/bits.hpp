#ifndef KLCELLS_BITS_HPP
#define KLCELLS_BITS_HPP

#include <cstdint>
#include <vector>

namespace klcells {

// Square bit matrix with row-major 64-bit blocks.  Used for dense Bruhat
// order tables and for reachability closures.
class BitMatrix {
public:
    BitMatrix() : n_(0), words_per_row_(0) {}

    explicit BitMatrix(std::size_t n)
        : n_(n), words_per_row_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * words_per_row_ + c / 64] >> (c % 64)) & 1u;
    }

    void set(std::size_t r, std::size_t c) {
        bits_[r * words_per_row_ + c / 64] |= std::uint64_t(1) << (c % 64);
    }

    const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_per_row_; }
    std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_per_row_; }
    std::size_t words_per_row() const { return words_per_row_; }

    // this_row |= other_row, used when accumulating reachability.
    void or_row(std::size_t dst, std::size_t src) {
        std::uint64_t* d = row(dst);
        const std::uint64_t* s = row(src);
        for (std::size_t i = 0; i < words_per_row_; ++i) d[i] |= s[i];
    }

private:
    std::size_t n_;
    std::size_t words_per_row_;
    std::vector<std::uint64_t> bits_;
};

} // namespace klcells

#endif
