#ifndef PUISEUX_MULTI_INDEX_HPP
#define PUISEUX_MULTI_INDEX_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <puiseux/errors.hpp>

namespace puiseux {

// Exponent vector in Z^r. The ambient dimension r is fixed per computation
// context; all binary operations require matching dimensions.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::int64_t> entries) : e_(std::move(entries)) {}

    static MultiIndex zero(int r) { return MultiIndex(std::vector<std::int64_t>(r, 0)); }
    // (0,...,0,1,0,...,0) with the 1 in position `pos` (0-based).
    static MultiIndex unit(int r, int pos);
    // (0,...,0,1), the grlex-least nonzero element of N^r.
    static MultiIndex last_unit(int r) { return unit(r, r - 1); }

    int r() const { return static_cast<int>(e_.size()); }
    std::int64_t operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
    std::int64_t& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
    const std::vector<std::int64_t>& entries() const { return e_; }

    // Sum of entries (may be negative for Laurent exponents).
    std::int64_t total() const;
    bool is_zero() const;
    bool is_nonnegative() const;

    MultiIndex operator+(const MultiIndex& o) const;
    MultiIndex operator-(const MultiIndex& o) const;
    MultiIndex operator*(std::int64_t k) const;

    bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
    bool operator!=(const MultiIndex& o) const { return e_ != o.e_; }

    std::string str() const;

private:
    std::vector<std::int64_t> e_;
};

void check_same_r(const MultiIndex& a, const MultiIndex& b, const char* where);

// a <=_lex b iff the first differing entry of a is smaller.
std::strong_ordering lex_cmp(const MultiIndex& a, const MultiIndex& b);

// a <=_grlex b iff total(a) < total(b), or totals tie and a <=_lex b.
std::strong_ordering grlex_cmp(const MultiIndex& a, const MultiIndex& b);

// Componentwise (partial) order: a <= b in every coordinate.
bool product_le(const MultiIndex& a, const MultiIndex& b);

inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    return grlex_cmp(a, b) == std::strong_ordering::less;
}
inline bool grlex_le(const MultiIndex& a, const MultiIndex& b) {
    return grlex_cmp(a, b) != std::strong_ordering::greater;
}

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

// Immediate successor of k in (N^r, <=_grlex): next in lex within the degree
// class, and (0,...,0,d+1) after the class maximum (d,0,...,0).
MultiIndex grlex_successor(const MultiIndex& k);

// k-th iterate of grlex_successor.
MultiIndex grlex_successor(const MultiIndex& k, int times);

// All n in N^r with total(n) <= maxDegree, in increasing grlex order,
// starting from (0,...,0).
std::vector<MultiIndex> grlex_range(int r, std::int64_t maxDegree);

} // namespace puiseux

#endif
