#ifndef KLCELLS_POLY_HPP
#define KLCELLS_POLY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace klcells {

// Kazhdan-Lusztig coefficients are tiny in every group this library targets,
// but the arithmetic must not depend on that, so coefficients are GMP
// integers.
using Coeff = mpz_class;

// Dense polynomial in q with arbitrary-precision integer coefficients and no
// trailing zeros.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(long constant) {
        if (constant != 0) c_.emplace_back(constant);
    }

    explicit Polynomial(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

    static const Polynomial& zero() {
        static const Polynomial z;
        return z;
    }
    static const Polynomial& one() {
        static const Polynomial o(1);
        return o;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const Coeff& coeff(int k) const {
        static const Coeff kZero(0);
        if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
        return c_[k];
    }

    const std::vector<Coeff>& coeffs() const { return c_; }

    void add_shifted(const Polynomial& p, int shift) {
        if (p.is_zero()) return;
        if (c_.size() < p.c_.size() + shift) c_.resize(p.c_.size() + shift);
        for (std::size_t i = 0; i < p.c_.size(); ++i) c_[i + shift] += p.c_[i];
        trim();
    }

    void sub_scaled_shifted(const Polynomial& p, const Coeff& scale, int shift) {
        if (p.is_zero() || scale == 0) return;
        if (c_.size() < p.c_.size() + shift) c_.resize(p.c_.size() + shift);
        for (std::size_t i = 0; i < p.c_.size(); ++i) c_[i + shift] -= p.c_[i] * scale;
        trim();
    }

    bool nonnegative() const {
        for (const Coeff& v : c_)
            if (v < 0) return false;
        return true;
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return c_ != o.c_; }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (const Coeff& v : c_) {
            h ^= static_cast<std::uint64_t>(mpz_get_si(v.get_mpz_t()));
            h *= 1099511628211ull;
            h ^= mpz_sgn(v.get_mpz_t()) < 0 ? 0x9e3779b9u : 0u;
        }
        return static_cast<std::size_t>(h ^ c_.size());
    }

    // Ascending powers, e.g. "1 + q + 2q^2"; the zero polynomial prints "0".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            if (!out.empty()) out += " + ";
            bool unit = (c_[k] == 1);
            if (k == 0) {
                out += c_[k].get_str();
            } else {
                if (!unit) out += c_[k].get_str();
                out += (k == 1) ? "q" : "q^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Coeff> c_;
};

} // namespace klcells

#endif
