#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qns {

/// Exponent vector of a normal-ordered monomial x_1^{e_1} ... x_n^{e_n}.
/// Entries may be negative (Laurent exponents). Ordering is lexicographic,
/// which is also the canonical printing order.
struct Multidegree {
    std::vector<int> exps;

    Multidegree() = default;
    explicit Multidegree(int dim) : exps(static_cast<std::size_t>(dim), 0) {}
    Multidegree(std::initializer_list<int> e) : exps(e) {}

    int dim() const { return static_cast<int>(exps.size()); }
    int operator[](int i) const { return exps[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return exps[static_cast<std::size_t>(i)]; }

    bool is_zero() const {
        for (int e : exps)
            if (e != 0) return false;
        return true;
    }

    friend Multidegree operator+(const Multidegree& a, const Multidegree& b) {
        Multidegree out(a.dim());
        for (int i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
        return out;
    }

    Multidegree operator-() const {
        Multidegree out(dim());
        for (int i = 0; i < dim(); ++i) out[i] = -exps[static_cast<std::size_t>(i)];
        return out;
    }

    auto operator<=>(const Multidegree&) const = default;
};

}  // namespace qns
