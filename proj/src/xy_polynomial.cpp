#include <puiseux/xy_polynomial.hpp>

#include <sstream>

namespace puiseux {

namespace {

void check_compatible(const XYPolynomial& a, const XYPolynomial& b, const char* where) {
    if (a.r() != b.r()) throw dimension_error(std::string(where) + ": dimension mismatch");
    if (a.mode() != b.mode()) throw mode_error(std::string(where) + ": scalar mode mismatch");
}

std::vector<mpz_class> binomial_row(unsigned n) {
    std::vector<mpz_class> row(n + 1);
    row[0] = 1;
    for (unsigned k = 1; k <= n; ++k) {
        mpz_class v;
        mpz_bin_uiui(v.get_mpz_t(), n, k);
        row[k] = v;
    }
    return row;
}

} // namespace

void XYPolynomial::add_term(const MultiIndex& x, unsigned y, const Scalar& c) {
    if (x.r() != r_) throw dimension_error("XYPolynomial::add_term: dimension mismatch");
    if (c.mode() != mode_) throw mode_error("XYPolynomial::add_term: scalar mode mismatch");
    if (c.is_zero()) return;
    const XYKey key{x, y};
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Scalar XYPolynomial::coeff(const MultiIndex& x, unsigned y) const {
    auto it = t_.find(XYKey{x, y});
    if (it == t_.end()) return Scalar::zero(mode_);
    return it->second;
}

XYPolynomial XYPolynomial::operator+(const XYPolynomial& o) const {
    check_compatible(*this, o, "XYPolynomial::operator+");
    XYPolynomial out(*this);
    for (const auto& [k, c] : o.t_) out.add_term(k.x, k.y, c);
    return out;
}

XYPolynomial XYPolynomial::operator-(const XYPolynomial& o) const {
    check_compatible(*this, o, "XYPolynomial::operator-");
    XYPolynomial out(*this);
    for (const auto& [k, c] : o.t_) out.add_term(k.x, k.y, -c);
    return out;
}

XYPolynomial XYPolynomial::operator*(const XYPolynomial& o) const {
    check_compatible(*this, o, "XYPolynomial::operator*");
    XYPolynomial out(r_, mode_);
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_) out.add_term(ka.x + kb.x, ka.y + kb.y, ca * cb);
    return out;
}

XYPolynomial XYPolynomial::scale(const Scalar& k) const {
    XYPolynomial out(r_, mode_);
    if (k.is_zero()) return out;
    for (const auto& [key, c] : t_) out.add_term(key.x, key.y, c * k);
    return out;
}

XYPolynomial XYPolynomial::mul_monomial(const MultiIndex& xshift, unsigned yshift) const {
    XYPolynomial out(r_, mode_);
    for (const auto& [key, c] : t_) out.add_term(key.x + xshift, key.y + yshift, c);
    return out;
}

unsigned XYPolynomial::deg_y() const {
    unsigned d = 0;
    for (const auto& [k, c] : t_) d = std::max(d, k.y);
    return d;
}

std::int64_t XYPolynomial::deg_x_total() const {
    std::int64_t d = 0;
    for (const auto& [k, c] : t_) d = std::max(d, k.x.total());
    return d;
}

std::optional<MultiIndex> XYPolynomial::w_valuation() const {
    if (t_.empty()) return std::nullopt;
    // Terms are keyed grlex-first, so the first key carries the valuation.
    return t_.begin()->first.x;
}

bool XYPolynomial::has_negative_x_exponent() const {
    for (const auto& [k, c] : t_)
        if (!k.x.is_nonnegative()) return true;
    return false;
}

std::vector<Scalar> XYPolynomial::y_slice(const MultiIndex& i) const {
    std::vector<Scalar> out;
    for (const auto& [k, c] : t_) {
        if (k.x != i) continue;
        if (out.size() <= k.y) out.resize(k.y + 1, Scalar::zero(mode_));
        out[k.y] = c;
    }
    return out;
}

std::map<MultiIndex, std::vector<Scalar>, GrlexLess> XYPolynomial::pi_map() const {
    std::map<MultiIndex, std::vector<Scalar>, GrlexLess> out;
    for (const auto& [k, c] : t_) {
        auto& slice = out[k.x];
        if (slice.size() <= k.y) slice.resize(k.y + 1, Scalar::zero(mode_));
        slice[k.y] = c;
    }
    return out;
}

XYPolynomial XYPolynomial::derivative_y() const {
    XYPolynomial out(r_, mode_);
    for (const auto& [k, c] : t_) {
        if (k.y == 0) continue;
        out.add_term(k.x, k.y - 1, c.mul_int(k.y));
    }
    return out;
}

XYPolynomial XYPolynomial::subst_y_affine(const Scalar& c, const MultiIndex& delta) const {
    XYPolynomial out(r_, mode_);
    const unsigned dy = deg_y();
    std::vector<Scalar> cpow(dy + 1, Scalar::one(mode_));
    for (unsigned e = 1; e <= dy; ++e) cpow[e] = cpow[e - 1] * c;
    for (const auto& [k, a] : t_) {
        const auto binom = binomial_row(k.y);
        for (unsigned m = 0; m <= k.y; ++m) {
            // binom(j,m) * c^(j-m) * x^(i + m*delta) * y^m
            const Scalar v = a * cpow[k.y - m].mul_int(binom[m]);
            out.add_term(k.x + delta * static_cast<std::int64_t>(m), m, v);
        }
    }
    return out;
}

XYPolynomial XYPolynomial::subst_y_exact_series(const TruncatedSeries& z) const {
    if (!z.is_exact())
        throw precondition_error("subst_y_exact_series: series argument must be exact");
    XYPolynomial out(r_, mode_);
    const unsigned dy = deg_y();
    // z^e as exact polynomial data.
    std::vector<TruncatedSeries> zpow;
    zpow.push_back(TruncatedSeries::zero(r_, mode_)); // placeholder for e = 0
    if (dy >= 1) zpow.push_back(z);
    for (unsigned e = 2; e <= dy; ++e) zpow.push_back(zpow.back() * z);
    for (const auto& [k, a] : t_) {
        if (k.y == 0) {
            out.add_term(k.x, 0, a);
            continue;
        }
        const TruncatedSeries& ze = zpow[k.y];
        for (const auto& [n, v] : ze.coeffs()) out.add_term(k.x + n, 0, a * v);
    }
    return out;
}

TruncatedSeries XYPolynomial::eval_at_series(const TruncatedSeries& z) const {
    if (z.r() != r_) throw dimension_error("eval_at_series: dimension mismatch");
    if (z.mode() != mode_) throw mode_error("eval_at_series: scalar mode mismatch");
    const unsigned dy = deg_y();
    std::vector<TruncatedSeries> zpow;
    zpow.push_back(TruncatedSeries::zero(r_, mode_)); // e = 0 handled separately
    if (dy >= 1) zpow.push_back(z);
    for (unsigned e = 2; e <= dy; ++e) zpow.push_back(zpow.back() * z);

    // Trust bound: the tightest of bound(z^j) + i over terms with j >= 1.
    std::optional<MultiIndex> bound;
    for (const auto& [k, a] : t_) {
        if (k.y == 0) continue;
        const auto& zb = zpow[k.y].bound();
        if (!zb) continue;
        const MultiIndex b = *zb + k.x;
        if (!bound || grlex_less(b, *bound)) bound = b;
    }
    TruncatedSeries out(r_, mode_, bound);
    for (const auto& [k, a] : t_) {
        if (k.y == 0) {
            if (out.determined(k.x)) out.set_coeff(k.x, out.coeff(k.x) + a);
            continue;
        }
        for (const auto& [n, v] : zpow[k.y].coeffs()) {
            const MultiIndex idx = k.x + n;
            if (out.determined(idx)) out.set_coeff(idx, out.coeff(idx) + a * v);
        }
    }
    return out;
}

std::string XYPolynomial::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        os << '(' << c.str() << ')';
        for (int i = 0; i < r_; ++i) {
            if (k.x[i] != 0) {
                os << "*x[" << (i + 1) << ']';
                if (k.x[i] != 1) os << '^' << k.x[i];
            }
        }
        if (k.y >= 1) {
            os << "*y";
            if (k.y > 1) os << '^' << k.y;
        }
        first = false;
    }
    return os.str();
}

SubstitutionResult xy_substitute(const XYPolynomial& p, const TruncatedSeries& z,
                                 const MultiIndex& s) {
    if (z.r() != p.r()) throw dimension_error("xy_substitute: dimension mismatch");
    if (z.mode() != p.mode()) throw mode_error("xy_substitute: scalar mode mismatch");
    const unsigned dy = p.deg_y();
    std::vector<TruncatedSeries> zpow;
    zpow.push_back(TruncatedSeries::zero(p.r(), p.mode()));
    if (dy >= 1) zpow.push_back(z);
    for (unsigned e = 2; e <= dy; ++e) zpow.push_back(zpow.back() * z);

    // a_{i,j} x^i (z + x^s y)^j
    //   = sum_m binom(j,m) a_{i,j} z^(j-m) x^(i + m s) y^m.
    std::optional<MultiIndex> bound;
    for (const auto& [k, a] : p.terms()) {
        const auto binom = binomial_row(k.y);
        for (unsigned m = 0; m < k.y; ++m) { // z^(j-m) with j-m >= 1
            const auto& zb = zpow[k.y - m].bound();
            if (!zb) continue;
            const MultiIndex b = *zb + k.x + s * static_cast<std::int64_t>(m);
            if (!bound || grlex_less(b, *bound)) bound = b;
        }
        (void)binom;
    }
    XYPolynomial out(p.r(), p.mode());
    auto keep = [&](const MultiIndex& x) { return !bound || grlex_le(x, *bound); };
    for (const auto& [k, a] : p.terms()) {
        const auto binom = binomial_row(k.y);
        for (unsigned m = 0; m <= k.y; ++m) {
            const MultiIndex base = k.x + s * static_cast<std::int64_t>(m);
            const Scalar w = a.mul_int(binom[m]);
            if (m == k.y) {
                if (keep(base)) out.add_term(base, m, w);
                continue;
            }
            for (const auto& [n, v] : zpow[k.y - m].coeffs()) {
                const MultiIndex x = base + n;
                if (keep(x)) out.add_term(x, m, w * v);
            }
        }
    }
    return SubstitutionResult{std::move(out), std::move(bound)};
}

Scalar eval_y_poly(const std::vector<Scalar>& pi, const Scalar& at, ScalarMode mode) {
    Scalar acc = Scalar::zero(mode);
    for (auto it = pi.rbegin(); it != pi.rend(); ++it) acc = acc * at + *it;
    return acc;
}

Scalar eval_y_poly_derivative(const std::vector<Scalar>& pi, const Scalar& at, ScalarMode mode) {
    Scalar acc = Scalar::zero(mode);
    for (std::size_t d = pi.size(); d-- > 1;) acc = acc * at + pi[d].mul_int(static_cast<long>(d));
    return acc;
}

} // namespace puiseux
