#include <puiseux/truncated_series.hpp>

#include <sstream>

namespace puiseux {

namespace {

void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b, const char* where) {
    if (a.r() != b.r()) throw dimension_error(std::string(where) + ": dimension mismatch");
    if (a.mode() != b.mode()) throw mode_error(std::string(where) + ": scalar mode mismatch");
}

} // namespace

std::optional<MultiIndex> TruncatedSeries::min_bound(const std::optional<MultiIndex>& a,
                                                     const std::optional<MultiIndex>& b) {
    if (!a) return b;
    if (!b) return a;
    return grlex_less(*a, *b) ? a : b;
}

bool TruncatedSeries::determined(const MultiIndex& n) const {
    if (!bound_) return true;
    return grlex_le(n, *bound_);
}

Scalar TruncatedSeries::coeff(const MultiIndex& n) const {
    if (!determined(n))
        throw truncation_error("series coefficient at " + n.str() + " beyond trusted bound " +
                               bound_->str());
    auto it = c_.find(n);
    if (it == c_.end()) return Scalar::zero(mode_);
    return it->second;
}

void TruncatedSeries::set_coeff(const MultiIndex& n, const Scalar& v) {
    if (n.r() != r_) throw dimension_error("set_coeff: dimension mismatch");
    if (v.mode() != mode_) throw mode_error("set_coeff: scalar mode mismatch");
    if (bound_ && grlex_less(*bound_, n))
        throw truncation_error("set_coeff: index " + n.str() + " beyond bound " + bound_->str());
    if (v.is_zero())
        c_.erase(n);
    else
        c_[n] = v;
}

std::optional<MultiIndex> TruncatedSeries::valuation_lower_bound() const {
    if (!c_.empty()) return c_.begin()->first;
    return bound_; // nullopt for the exact zero series
}

std::optional<MultiIndex> TruncatedSeries::known_valuation() const {
    if (c_.empty()) return std::nullopt;
    return c_.begin()->first;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    check_compatible(*this, o, "TruncatedSeries::operator+");
    TruncatedSeries out(r_, mode_, min_bound(bound_, o.bound_));
    for (const auto& [n, v] : c_)
        if (out.determined(n)) out.set_coeff(n, v);
    for (const auto& [n, v] : o.c_) {
        if (!out.determined(n)) continue;
        out.set_coeff(n, out.coeff(n) + v);
    }
    return out;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    return *this + o.scale(-Scalar::one(mode_));
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    check_compatible(*this, o, "TruncatedSeries::operator*");
    // Exact zero on either side kills everything, including unknown tails.
    if (is_exact() && c_.empty()) return zero(r_, mode_);
    if (o.is_exact() && o.c_.empty()) return zero(r_, mode_);

    std::optional<MultiIndex> newBound;
    if (bound_) {
        auto v = o.valuation_lower_bound();
        newBound = min_bound(newBound, v ? std::optional<MultiIndex>(*bound_ + *v) : bound_);
    }
    if (o.bound_) {
        auto v = valuation_lower_bound();
        newBound = min_bound(newBound, v ? std::optional<MultiIndex>(*o.bound_ + *v) : o.bound_);
    }
    TruncatedSeries out(r_, mode_, newBound);
    for (const auto& [na, va] : c_) {
        for (const auto& [nb, vb] : o.c_) {
            const MultiIndex n = na + nb;
            if (!out.determined(n)) continue;
            out.set_coeff(n, out.coeff(n) + va * vb);
        }
    }
    return out;
}

TruncatedSeries TruncatedSeries::scale(const Scalar& k) const {
    if (k.mode() != mode_) throw mode_error("scale: scalar mode mismatch");
    TruncatedSeries out(r_, mode_, bound_);
    if (k.is_zero()) return out;
    for (const auto& [n, v] : c_) out.set_coeff(n, v * k);
    return out;
}

TruncatedSeries TruncatedSeries::mul_monomial(const MultiIndex& shift) const {
    TruncatedSeries out(r_, mode_, bound_ ? std::optional<MultiIndex>(*bound_ + shift) : std::nullopt);
    for (const auto& [n, v] : c_) out.set_coeff(n + shift, v);
    return out;
}

TruncatedSeries TruncatedSeries::power(unsigned j) const {
    if (j == 0) throw precondition_error("TruncatedSeries::power: exponent must be >= 1");
    TruncatedSeries out(*this);
    for (unsigned i = 1; i < j; ++i) out = out * *this;
    return out;
}

TruncatedSeries TruncatedSeries::truncate(const MultiIndex& newBound) const {
    std::optional<MultiIndex> b = min_bound(bound_, newBound);
    TruncatedSeries out(r_, mode_, b);
    for (const auto& [n, v] : c_)
        if (out.determined(n)) out.set_coeff(n, v);
    return out;
}

TruncatedSeries TruncatedSeries::prefix(const MultiIndex& k) const {
    if (bound_ && grlex_less(*bound_, k))
        throw truncation_error("prefix through " + k.str() + " exceeds bound " + bound_->str());
    TruncatedSeries out(r_, mode_, std::nullopt);
    for (const auto& [n, v] : c_) {
        if (grlex_le(n, k)) out.set_coeff(n, v);
    }
    return out;
}

bool TruncatedSeries::all_indices_positive_grlex() const {
    const MultiIndex z = MultiIndex::zero(r_);
    for (const auto& [n, v] : c_)
        if (!grlex_less(z, n)) return false;
    return true;
}

bool TruncatedSeries::all_indices_nonnegative() const {
    for (const auto& [n, v] : c_)
        if (!n.is_nonnegative()) return false;
    return true;
}

std::string TruncatedSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : c_) {
        if (!first) os << " + ";
        os << '(' << v.str() << ")*x^" << n.str();
        first = false;
    }
    if (first) os << '0';
    if (bound_) os << " + O(" << bound_->str() << ')';
    return os.str();
}

Scalar series_power_coeff(const TruncatedSeries& y, unsigned j, const MultiIndex& n) {
    if (n.r() != y.r()) throw dimension_error("series_power_coeff: dimension mismatch");
    if (j == 0)
        return n.is_zero() ? Scalar::one(y.mode()) : Scalar::zero(y.mode());
    if (!y.all_indices_nonnegative() || !y.all_indices_positive_grlex())
        throw precondition_error("series_power_coeff: support must lie in N^r with degree >= 1");
    // Determined iff every part of a j-fold partition of n is inside the
    // bound; parts are <=_grlex n - (j-1)*(0,...,0,1).
    if (y.bound()) {
        const MultiIndex need = n - MultiIndex::last_unit(n.r()) * static_cast<std::int64_t>(j - 1);
        if (grlex_less(*y.bound(), need))
            throw truncation_error("series_power_coeff: truncation insufficient for C^(" +
                                   std::to_string(j) + ") at " + n.str());
    }
    if (n.total() < static_cast<std::int64_t>(j)) return Scalar::zero(y.mode());
    // Window every intermediate product at <=_grlex n; sound because all
    // support indices are >_grlex 0.
    TruncatedSeries acc = y.truncate(n);
    for (unsigned i = 1; i < j; ++i) acc = (acc * y).truncate(n);
    auto it = acc.coeffs().find(n);
    if (it == acc.coeffs().end()) return Scalar::zero(y.mode());
    return it->second;
}

} // namespace puiseux
