#include <puiseux/multi_index.hpp>

#include <cstdlib>
#include <sstream>

namespace puiseux {

std::size_t max_bigint_bits() {
    static const std::size_t limit = [] {
        const char* env = std::getenv("PUISEUX_MAX_BIGINT_BITS");
        if (!env || !*env) return static_cast<std::size_t>(0);
        return static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    }();
    return limit;
}

MultiIndex MultiIndex::unit(int r, int pos) {
    MultiIndex u = zero(r);
    u[pos] = 1;
    return u;
}

std::int64_t MultiIndex::total() const {
    std::int64_t s = 0;
    for (auto v : e_) s += v;
    return s;
}

bool MultiIndex::is_zero() const {
    for (auto v : e_)
        if (v != 0) return false;
    return true;
}

bool MultiIndex::is_nonnegative() const {
    for (auto v : e_)
        if (v < 0) return false;
    return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    check_same_r(*this, o, "MultiIndex::operator+");
    MultiIndex out(*this);
    for (int i = 0; i < r(); ++i) out[i] += o[i];
    return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
    check_same_r(*this, o, "MultiIndex::operator-");
    MultiIndex out(*this);
    for (int i = 0; i < r(); ++i) out[i] -= o[i];
    return out;
}

MultiIndex MultiIndex::operator*(std::int64_t k) const {
    MultiIndex out(*this);
    for (int i = 0; i < r(); ++i) out[i] *= k;
    return out;
}

std::string MultiIndex::str() const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < r(); ++i) {
        if (i) os << ',';
        os << e_[static_cast<std::size_t>(i)];
    }
    os << ')';
    return os.str();
}

void check_same_r(const MultiIndex& a, const MultiIndex& b, const char* where) {
    if (a.r() != b.r())
        throw dimension_error(std::string(where) + ": dimension mismatch " +
                              std::to_string(a.r()) + " vs " + std::to_string(b.r()));
}

std::strong_ordering lex_cmp(const MultiIndex& a, const MultiIndex& b) {
    check_same_r(a, b, "lex_cmp");
    for (int i = 0; i < a.r(); ++i) {
        if (a[i] != b[i]) return a[i] <=> b[i];
    }
    return std::strong_ordering::equal;
}

std::strong_ordering grlex_cmp(const MultiIndex& a, const MultiIndex& b) {
    check_same_r(a, b, "grlex_cmp");
    const std::int64_t ta = a.total(), tb = b.total();
    if (ta != tb) return ta <=> tb;
    return lex_cmp(a, b);
}

bool product_le(const MultiIndex& a, const MultiIndex& b) {
    check_same_r(a, b, "product_le");
    for (int i = 0; i < a.r(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

MultiIndex grlex_successor(const MultiIndex& k) {
    if (!k.is_nonnegative())
        throw precondition_error("grlex_successor: index must lie in N^r, got " + k.str());
    const int r = k.r();
    if (r == 1) {
        MultiIndex out(k);
        out[0] += 1;
        return out;
    }
    int j = -1; // last positive position
    for (int i = r - 1; i >= 0; --i) {
        if (k[i] > 0) {
            j = i;
            break;
        }
    }
    if (j <= 0) {
        // (0,...,0) -> (0,...,0,1); (d,0,...,0) is the class maximum.
        MultiIndex out = MultiIndex::zero(r);
        out[r - 1] = k.total() + 1;
        return out;
    }
    MultiIndex out(k);
    const std::int64_t tail = out[j] - 1;
    out[j - 1] += 1;
    out[j] = 0;
    out[r - 1] += tail;
    return out;
}

MultiIndex grlex_successor(const MultiIndex& k, int times) {
    MultiIndex out(k);
    for (int i = 0; i < times; ++i) out = grlex_successor(out);
    return out;
}

std::vector<MultiIndex> grlex_range(int r, std::int64_t maxDegree) {
    std::vector<MultiIndex> out;
    MultiIndex n = MultiIndex::zero(r);
    while (n.total() <= maxDegree) {
        out.push_back(n);
        n = grlex_successor(n);
    }
    return out;
}

} // namespace puiseux
