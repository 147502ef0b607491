#include <puiseux/reduction.hpp>

#include <puiseux/wilczynski.hpp>

namespace puiseux::reduction {

ShiftedPolynomial shift(const XYPolynomial& p, const TruncatedSeries& series,
                        const MultiIndex& k) {
    if (p.is_zero()) throw precondition_error("shift: polynomial must be nonzero");
    if (!series.determined(k))
        throw truncation_error("shift: prefix not known through " + k.str());
    const TruncatedSeries zk = series.prefix(k);
    const auto sub = xy_substitute(p, zk, grlex_successor(k));
    ShiftedPolynomial out{sub.poly, k, MultiIndex::zero(p.r()), {}};
    const auto w = out.pk.w_valuation();
    if (!w) throw precondition_error("shift: substituted polynomial vanished");
    out.ik = *w;
    out.pi = out.pk.pi_map();
    return out;
}

MultiIndex SeparationResult::ik_at(const MultiIndex& k) const {
    // i_k - S(k) is constant from k0 on.
    return ik0 - grlex_successor(k0) + grlex_successor(k);
}

SeparationOutcome find_separation(const XYPolynomial& p, const TruncatedSeries& series) {
    if (p.is_zero()) throw precondition_error("find_separation: polynomial must be nonzero");
    if (p.has_negative_x_exponent())
        throw precondition_error("find_separation: polynomial must have exponents in N^r");
    const int r = p.r();
    const ScalarMode mode = p.mode();
    const std::int64_t kmax = 2 * p.deg_x_total() * static_cast<std::int64_t>(p.deg_y());

    MultiIndex k = MultiIndex::zero(r);
    XYPolynomial cur = p.subst_y_affine(Scalar::zero(mode), MultiIndex::last_unit(r));
    while (true) {
        const auto wv = cur.w_valuation();
        if (!wv) throw precondition_error("find_separation: shifted polynomial vanished");
        const MultiIndex ik = *wv;

        // z_k already a root and the series carries nothing beyond it.
        bool constSliceZero = true;
        for (const auto& [key, c] : cur.terms())
            if (key.y == 0) constSliceZero = false;
        if (constSliceZero) {
            bool more = false;
            for (const auto& [n, c] : series.coeffs())
                if (grlex_less(k, n)) more = true;
            if (!more) return RootIsPolynomial{k};
        }

        const MultiIndex sk = grlex_successor(k);
        if (!series.determined(sk))
            throw truncation_error("find_separation: series not known through " + sk.str() +
                                   " and no verdict reached");
        const Scalar cs = series.coeff(sk);
        const auto slice = cur.y_slice(ik);
        const Scalar val0 = eval_y_poly(slice, cs, mode);
        if (!val0.is_zero())
            return NotASimpleRoot{sk, "valuation sequence stalls at " + ik.str()};
        const Scalar deriv = eval_y_poly_derivative(slice, cs, mode);
        if (!deriv.is_zero()) return SeparationResult{k, deriv, ik};

        if (sk.total() > kmax)
            return NotASimpleRoot{sk, "no separation index within total degree " +
                                          std::to_string(kmax)};
        cur = cur.subst_y_affine(cs, grlex_successor(sk) - sk);
        k = sk;
    }
}

HenselianOutcome to_henselian(const XYPolynomial& p, const TruncatedSeries& series,
                              const MultiIndex& k, const SeparationResult& sep) {
    if (!grlex_less(sep.k0, k))
        throw precondition_error("to_henselian: k must be >_grlex the separation index");
    const MultiIndex sk = grlex_successor(k);
    if (!series.determined(sk))
        throw truncation_error("to_henselian: series not known through " + sk.str());
    const ScalarMode mode = p.mode();
    const ShiftedPolynomial shifted = shift(p, series, k);
    if (shifted.ik != sep.ik_at(k))
        throw precondition_error("to_henselian: valuation of the shifted polynomial is " +
                                 shifted.ik.str() + ", expected " + sep.ik_at(k).str() +
                                 "; separation data does not match the series");
    const Scalar cs = series.coeff(sk);
    const XYPolynomial t = shifted.pk.subst_y_affine(cs, MultiIndex::zero(p.r()));
    // T / (-omega0 x^{i_k}) = -y + Q.
    XYPolynomial q(p.r(), mode);
    const Scalar scale = -(Scalar::one(mode) / sep.omega0);
    for (const auto& [key, c] : t.terms()) {
        const MultiIndex l = key.x - shifted.ik;
        q.add_term(l, key.y, c * scale);
    }
    q.add_term(MultiIndex::zero(p.r()), 1, Scalar::one(mode)); // cancel the -y
    const MultiIndex zero = MultiIndex::zero(p.r());
    for (const auto& [key, c] : q.terms())
        if (!grlex_less(zero, key.x))
            throw precondition_error("to_henselian: residual term at x^" + key.x.str() +
                                     " y^" + std::to_string(key.y) +
                                     "; inputs are not a separated simple-root pair");
    bool hasConst = false;
    for (const auto& [key, c] : q.terms())
        if (key.y == 0) hasConst = true;
    if (!hasConst) return PolynomialRootDetected{k};
    return henselian::HenselianEquation(q);
}

namespace {

mpz_class multinomial_jml(unsigned j, unsigned m, const std::vector<unsigned long>& l) {
    // j! / (m! * prod l_i!) for m + sum l_i = j: a product of binomials.
    mpz_class prod(1);
    unsigned long remaining = j;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), remaining, m);
    prod *= b;
    remaining -= m;
    for (unsigned long li : l) {
        if (li == 0) continue;
        mpz_bin_uiui(b.get_mpz_t(), remaining, li);
        prod *= b;
        remaining -= li;
    }
    return prod;
}

} // namespace

std::map<XYKey, Scalar, XYKeyLess> blm_coefficients(const XYPolynomial& p,
                                                    const TruncatedSeries& series,
                                                    const MultiIndex& k,
                                                    const SeparationResult& sep) {
    if (!grlex_less(sep.k0, k))
        throw precondition_error("blm_coefficients: k must be >_grlex the separation index");
    const MultiIndex sk = grlex_successor(k);
    if (!series.determined(sk))
        throw truncation_error("blm_coefficients: series not known through " + sk.str());
    const int r = p.r();
    const ScalarMode mode = p.mode();
    const MultiIndex ik = sep.ik_at(k);

    // Nonzero prefix coefficients through S(k).
    std::vector<std::pair<MultiIndex, Scalar>> prefix;
    for (const auto& [n, c] : series.coeffs())
        if (grlex_le(n, sk)) prefix.emplace_back(n, c);

    // accum[(lhat, m)] = coefficient of x^lhat y^m in P_k(x, y + c_{S(k)}).
    std::map<XYKey, Scalar, XYKeyLess> accum;
    auto add = [&](const MultiIndex& lhat, unsigned m, const Scalar& v) {
        if (v.is_zero()) return;
        const XYKey key{lhat, m};
        auto it = accum.find(key);
        if (it == accum.end())
            accum.emplace(key, v);
        else {
            it->second = it->second + v;
            if (it->second.is_zero()) accum.erase(it);
        }
    };

    std::vector<unsigned long> l(prefix.size(), 0);
    for (const auto& [key, a] : p.terms()) {
        const unsigned j = key.y;
        for (unsigned m = 0; m <= j; ++m) {
            const unsigned need = j - m; // |L|
            // Compositions of `need` over the prefix slots.
            auto rec = [&](auto&& self, std::size_t slot, unsigned long left, MultiIndex g,
                           Scalar cpow) -> void {
                if (slot == prefix.size()) {
                    if (left != 0) return;
                    const mpz_class w = multinomial_jml(j, m, l);
                    const MultiIndex lhat = g + sk * static_cast<std::int64_t>(m) + key.x;
                    add(lhat, m, a * cpow.mul_int(w));
                    return;
                }
                for (unsigned long take = 0; take <= left; ++take) {
                    l[slot] = take;
                    self(self, slot + 1, left - take,
                         take == 0 ? g
                                   : g + prefix[slot].first * static_cast<std::int64_t>(take),
                         take == 0 ? cpow
                                   : cpow * prefix[slot].second.pow(static_cast<long>(take)));
                }
                l[slot] = 0;
            };
            rec(rec, 0, need, MultiIndex::zero(r), Scalar::one(mode));
        }
    }

    // The slices at and below x^{i_k} must reduce to omega0 * y exactly.
    std::map<XYKey, Scalar, XYKeyLess> out;
    for (const auto& [key, v] : accum) {
        if (grlex_less(ik, key.x)) {
            out.emplace(XYKey{key.x - ik, key.y}, -(v / sep.omega0));
            continue;
        }
        if (key.x == ik && key.y == 1) {
            if (v != sep.omega0)
                throw precondition_error("blm_coefficients: unit slice is " + v.str() +
                                         ", expected " + sep.omega0.str());
            continue;
        }
        throw precondition_error("blm_coefficients: unexpected low-order term at x^" +
                                 key.x.str() + " y^" + std::to_string(key.y));
    }
    return out;
}

ContinueOutcome continue_coefficients(const XYPolynomial& p, const TruncatedSeries& series,
                                      const MultiIndex& k, const SeparationResult& sep,
                                      std::size_t count, const ContinueOptions& opts) {
    const std::int64_t threshold = 2 * p.deg_x_total() * static_cast<std::int64_t>(p.deg_y()) + 1;
    if (!opts.best_effort && k.total() < threshold)
        throw precondition_error("continue_coefficients: |k| < " + std::to_string(threshold) +
                                 "; pass best_effort to waive the prefix-length guarantee");
    const auto bl = blm_coefficients(p, series, k, sep);
    XYPolynomial q(p.r(), p.mode());
    bool hasConst = false;
    for (const auto& [key, c] : bl) {
        q.add_term(key.x, key.y, c);
        if (key.y == 0) hasConst = true;
    }
    if (!hasConst) return PolynomialRootDetected{k};
    henselian::HenselianEquation eq(std::move(q));

    Continuation out;
    const MultiIndex sk = grlex_successor(k);
    MultiIndex pIdx = sk;
    while (out.size() < count) {
        pIdx = grlex_successor(pIdx);
        const MultiIndex nu = pIdx - sk;
        out.emplace_back(pIdx, henselian::fs_coefficient(eq, nu));
    }
    return out;
}

MultiIndex RamifiedChart::m(unsigned dy) const {
    const int rr = r();
    MultiIndex out = MultiIndex::zero(rr);
    for (int k = 0; k + 1 < rr; ++k)
        out[k] = std::max<std::int64_t>(0, -n0[k] * static_cast<std::int64_t>(dy));
    out[rr - 1] = std::max<std::int64_t>(0, (1 - n0[rr - 1]) * static_cast<std::int64_t>(dy));
    return out;
}

MultiIndex RamifiedChart::x_image(int k) const {
    const int rr = r();
    MultiIndex e = MultiIndex::zero(rr);
    e[k] = p;
    std::int64_t factor = p;
    for (int t = k + 1; t < rr; ++t) {
        factor *= q[static_cast<std::size_t>(t - 1)];
        e[t] = factor;
    }
    return e;
}

XYPolynomial ramified_substitute(const XYPolynomial& pt, const RamifiedChart& chart) {
    const int r = pt.r();
    if (chart.n0.r() != r) throw dimension_error("ramified_substitute: chart dimension mismatch");
    if (static_cast<int>(chart.q.size()) != r - 1)
        throw precondition_error("ramified_substitute: chart needs r-1 ramification exponents");
    if (chart.p < 1) throw precondition_error("ramified_substitute: p must be >= 1");
    for (auto v : chart.q)
        if (v < 0) throw precondition_error("ramified_substitute: q entries must be >= 0");
    if (pt.has_negative_x_exponent())
        throw precondition_error("ramified_substitute: input must have exponents in N^r");

    const unsigned dy = pt.deg_y();
    const MultiIndex m = chart.m(dy);
    std::vector<MultiIndex> images;
    images.reserve(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) images.push_back(chart.x_image(k));
    const MultiIndex yshift = chart.n0 - MultiIndex::last_unit(r);

    XYPolynomial out(r, pt.mode());
    for (const auto& [key, c] : pt.terms()) {
        MultiIndex e = m + yshift * static_cast<std::int64_t>(key.y);
        for (int k = 0; k < r; ++k)
            if (key.x[k] != 0) e = e + images[static_cast<std::size_t>(k)] * key.x[k];
        if (!e.is_nonnegative())
            throw precondition_error("ramified_substitute: term lands at negative exponent " +
                                     e.str() + "; chart is invalid for this polynomial");
        out.add_term(e, key.y, c);
    }
    return out;
}

bool R2SupportPredicate::operator()(std::int64_t k1, std::int64_t k2, std::int64_t j) const {
    auto modp = [this](std::int64_t v) {
        std::int64_t m = v % p;
        return m < 0 ? m + p : m;
    };
    std::int64_t c1, c2;
    if (n1 >= 0 && n2 >= 1) {
        c1 = j * n1;
        c2 = q1 * k1 + j * (n2 - 1 - q1 * n1);
    } else if (n1 >= 0 && n2 < 1) {
        c1 = j * n1;
        c2 = q1 * k1 + j * (n2 - 1 - q1 * n1) - dy * (n2 - 1);
    } else if (n1 < 0 && n2 >= 1) {
        c1 = (j - dy) * n1;
        c2 = q1 * k1 + j * (n2 - 1) - (j - dy) * q1 * n1;
    } else {
        c1 = (j - dy) * n1;
        c2 = q1 * k1 + (j - dy) * (n2 - 1 - q1 * n1);
    }
    return modp(k1) == modp(c1) && modp(k2) == modp(c2);
}

R2SupportPredicate support_constraints_r2(const RamifiedChart& chart, unsigned dy) {
    if (chart.r() != 2)
        throw precondition_error("support_constraints_r2: chart must have r = 2");
    return R2SupportPredicate{chart.p, chart.q[0], chart.n0[0], chart.n0[1],
                              static_cast<std::int64_t>(dy)};
}

ParamRatioBounds param_ratio_bounds(std::int64_t dx, unsigned dy, int r) {
    if (dx < 1 || dy < 1 || r < 1)
        throw precondition_error("param_ratio_bounds: dx, dy, r must be >= 1");
    ParamRatioBounds out;
    mpz_class box;
    mpz_bin_uiui(box.get_mpz_t(), static_cast<unsigned long>(dx + r),
                 static_cast<unsigned long>(r));
    out.m1 = mpz_class(dy) * (dy + 1) * box / 2 + dy - 2;
    mpz_class base = mpz_class(dy) * (2 * static_cast<long>(dy) * dx + 1) + dx + 1;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(r - 1));
    out.m2 = 2 * pw;
    const std::int64_t n = 2 * dx * static_cast<std::int64_t>(dy);
    if (r >= 2) {
        out.k = MultiIndex::zero(r);
        out.k[r - 2] = 1;
        out.k[r - 1] = n;
    } else {
        out.k = MultiIndex(std::vector<std::int64_t>{n + 1});
    }
    return out;
}

std::optional<MultiIndex> verify_eisenstein(const TruncatedSeries& series, const mpz_class& delta0,
                                            const mpz_class& delta, const MultiIndex& horizon) {
    if (series.mode() != ScalarMode::rational)
        throw mode_error("verify_eisenstein: series must have rational coefficients");
    for (const auto& [n, c] : series.coeffs()) {
        if (!grlex_le(n, horizon)) break;
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), delta.get_mpz_t(),
                   static_cast<unsigned long>(std::max<std::int64_t>(n.total(), 0)));
        scale *= delta0;
        // delta0 * delta^|n| * c_n integral <=> den(c_n) divides the scale.
        if (!mpz_divisible_p(scale.get_mpz_t(), c.rat().get_den().get_mpz_t())) return n;
    }
    return std::nullopt;
}

EisensteinWitness eisenstein_witness(const TruncatedSeries& series, std::int64_t dx, unsigned dy,
                                     const MultiIndex& horizon, const EisensteinOptions& opts) {
    if (series.mode() != ScalarMode::rational)
        throw mode_error("eisenstein_witness: series must have rational coefficients");
    if (!series.all_indices_nonnegative())
        throw precondition_error("eisenstein_witness: series support must lie in N^r");
    const int r = horizon.r();
    const auto bounds = param_ratio_bounds(dx, dy, r);
    if (!series.determined(bounds.k))
        throw truncation_error("eisenstein_witness: series must be known through " +
                               bounds.k.str());

    // delta0: common denominator of the prefix through k.
    mpz_class delta0(1);
    for (const auto& [n, c] : series.coeffs()) {
        if (!grlex_le(n, bounds.k)) break;
        mpz_lcm(delta0.get_mpz_t(), delta0.get_mpz_t(), c.rat().get_den().get_mpz_t());
    }

    mpz_class omega;
    if (opts.omega) {
        omega = *opts.omega;
    } else {
        // Scale so the prefix is integral, reconstruct an annihilator with
        // the full-grid shape, then read the separation unit off it.
        const TruncatedSeries scaled = series.scale(Scalar::rational(delta0, mpz_class(1)));
        const auto shape = wilczynski::SupportShape::full_grid(r, dx, dy);
        const auto rec = wilczynski::reconstruct(scaled, shape);
        const XYPolynomial annihilator = rec.polynomial(r, ScalarMode::rational);
        const auto sepOutcome = find_separation(annihilator, scaled);
        const auto* sep = std::get_if<SeparationResult>(&sepOutcome);
        if (!sep)
            throw precondition_error(
                "eisenstein_witness: separation failed on the reconstructed annihilator");
        const mpq_class& w = sep->omega0.rat();
        if (w.get_den() != 1)
            throw divisibility_error("eisenstein_witness: separation unit is not integral");
        omega = abs(w.get_num());
        if (omega == 0) throw precondition_error("eisenstein_witness: zero separation unit");
    }

    EisensteinWitness out;
    out.delta0 = delta0;
    mpz_pow_ui(out.delta.get_mpz_t(), omega.get_mpz_t(), mpz_get_ui(bounds.m2.get_mpz_t()));
    out.verified_horizon = horizon;
    if (auto bad = verify_eisenstein(series, out.delta0, out.delta, horizon))
        throw divisibility_error("eisenstein_witness: integrality fails at " + bad->str() +
                                 "; degree bounds are wrong or the series is not algebraic");
    return out;
}

} // namespace puiseux::reduction
