#include <puiseux/wilczynski.hpp>

#include <algorithm>

namespace puiseux::wilczynski {

std::strong_ordering alex_cmp(const SupportPair& a, const SupportPair& b) {
    if (a.second != b.second) return a.second <=> b.second;
    return grlex_cmp(a.first, b.first);
}

SupportShape::SupportShape(int r, std::vector<SupportPair> f, std::vector<SupportPair> g)
    : r_(r), f_(std::move(f)), g_(std::move(g)) {
    if (f_.empty()) throw precondition_error("SupportShape: F must be nonempty");
    for (const auto& [i, j] : f_) {
        if (i.r() != r_) throw dimension_error("SupportShape: F entry dimension mismatch");
        if (j < 1) throw precondition_error("SupportShape: F pairs need y-degree >= 1");
        if (!i.is_nonnegative())
            throw precondition_error("SupportShape: F exponents must lie in N^r");
    }
    for (const auto& [i, j] : g_) {
        if (i.r() != r_) throw dimension_error("SupportShape: G entry dimension mismatch");
        if (j != 0) throw precondition_error("SupportShape: G pairs must have y-degree 0");
        if (!i.is_nonnegative() || i.total() < 1)
            throw precondition_error("SupportShape: G exponents need total degree >= 1");
    }
    auto strictly_increasing = [](const std::vector<SupportPair>& v) {
        for (std::size_t t = 1; t < v.size(); ++t)
            if (alex_cmp(v[t - 1], v[t]) != std::strong_ordering::less) return false;
        return true;
    };
    if (!strictly_increasing(f_) || !strictly_increasing(g_))
        throw precondition_error("SupportShape: sequences must be strictly alex-increasing");
}

unsigned SupportShape::dy() const {
    unsigned d = 0;
    for (const auto& [i, j] : f_) d = std::max(d, j);
    return d;
}

std::int64_t SupportShape::dx() const {
    std::int64_t d = 0;
    for (const auto& [i, j] : f_) d = std::max(d, i.total());
    for (const auto& [i, j] : g_) d = std::max(d, i.total());
    return d;
}

bool SupportShape::is_g_row(const MultiIndex& n) const {
    for (const auto& [i, j] : g_)
        if (i == n) return true;
    return false;
}

SupportShape SupportShape::of_polynomial(const XYPolynomial& p) {
    std::vector<SupportPair> f, g;
    for (const auto& [k, c] : p.terms()) {
        if (k.y >= 1)
            f.emplace_back(k.x, k.y);
        else
            g.emplace_back(k.x, 0u);
    }
    auto byAlex = [](const SupportPair& a, const SupportPair& b) {
        return alex_cmp(a, b) == std::strong_ordering::less;
    };
    std::sort(f.begin(), f.end(), byAlex);
    std::sort(g.begin(), g.end(), byAlex);
    return SupportShape(p.r(), std::move(f), std::move(g));
}

SupportShape SupportShape::full_grid(int r, std::int64_t dx, unsigned dy) {
    std::vector<SupportPair> f, g;
    const auto xs = grlex_range(r, dx);
    for (unsigned j = 1; j <= dy; ++j)
        for (const auto& i : xs) f.emplace_back(i, j);
    for (const auto& i : xs)
        if (i.total() >= 1) g.emplace_back(i, 0u);
    return SupportShape(r, std::move(f), std::move(g));
}

WilczynskiView::WilczynskiView(SupportShape shape, TruncatedSeries series, MultiIndex rowLimit)
    : shape_(std::move(shape)), series_(std::move(series)), rowLimit_(std::move(rowLimit)) {
    if (series_.r() != shape_.r())
        throw dimension_error("WilczynskiView: series/shape dimension mismatch");
    if (!series_.all_indices_nonnegative() || !series_.all_indices_positive_grlex())
        throw precondition_error("WilczynskiView: series support must lie in N^r \\ {0}");
}

const TruncatedSeries& WilczynskiView::power(unsigned j) const {
    auto it = powers_.find(j);
    if (it != powers_.end()) return it->second;
    TruncatedSeries p = (j == 1) ? series_ : series_.power(j);
    return powers_.emplace(j, std::move(p)).first->second;
}

Scalar WilczynskiView::entry(const MultiIndex& row, const SupportPair& col) const {
    if (grlex_less(rowLimit_, row))
        throw truncation_error("Wilczynski entry at row " + row.str() + " beyond row limit " +
                               rowLimit_.str());
    const auto& [i, j] = col;
    if (j == 0) {
        return (row == i) ? Scalar::one(series_.mode()) : Scalar::zero(series_.mode());
    }
    if (!product_le(i, row)) return Scalar::zero(series_.mode());
    const MultiIndex m = row - i;
    if (m.total() < static_cast<std::int64_t>(j)) return Scalar::zero(series_.mode());
    const TruncatedSeries& p = power(j);
    if (!p.determined(m))
        throw truncation_error("Wilczynski entry needs C^(" + std::to_string(j) + ") at " +
                               m.str() + ", beyond the series truncation");
    auto it = p.coeffs().find(m);
    return it == p.coeffs().end() ? Scalar::zero(series_.mode()) : it->second;
}

std::vector<MultiIndex> WilczynskiView::reduced_rows(std::int64_t maxDegree) const {
    std::vector<MultiIndex> rows;
    for (const auto& n : grlex_range(shape_.r(), maxDegree))
        if (!shape_.is_g_row(n)) rows.push_back(n);
    return rows;
}

ScalarMatrix WilczynskiView::materialize(const std::vector<MultiIndex>& rows) const {
    ScalarMatrix m;
    m.reserve(rows.size());
    for (const auto& n : rows) {
        std::vector<Scalar> row;
        row.reserve(shape_.F().size());
        for (const auto& col : shape_.F()) row.push_back(entry(n, col));
        m.push_back(std::move(row));
    }
    return m;
}

Scalar WilczynskiView::minor(const std::vector<MultiIndex>& rows,
                             const std::vector<SupportPair>& cols) const {
    if (rows.size() != cols.size())
        throw dimension_error("wilczynski_minor: row/column count mismatch");
    for (std::size_t t = 1; t < rows.size(); ++t)
        if (!grlex_less(rows[t - 1], rows[t]))
            throw precondition_error("wilczynski_minor: rows must be strictly grlex-increasing");
    for (const auto& n : rows)
        if (shape_.is_g_row(n))
            throw precondition_error("wilczynski_minor: row " + n.str() +
                                     " indexes a deleted G row");
    ScalarMatrix m;
    m.reserve(rows.size());
    for (const auto& n : rows) {
        std::vector<Scalar> row;
        row.reserve(cols.size());
        for (const auto& col : cols) row.push_back(entry(n, col));
        m.push_back(std::move(row));
    }
    return ff_det(m, series_.mode());
}

Scalar wilczynski_entry(const WilczynskiView& view, const MultiIndex& row, const SupportPair& col) {
    return view.entry(row, col);
}

Scalar wilczynski_minor(const WilczynskiView& view, const std::vector<MultiIndex>& rows,
                        const std::vector<SupportPair>& cols) {
    return view.minor(rows, cols);
}

XYPolynomial ReconstructionResult::polynomial(int r, ScalarMode mode) const {
    XYPolynomial p(r, mode);
    for (const auto& [key, c] : coefficients) p.add_term(key.first, key.second, c);
    return p;
}

namespace {

// Divide rational-mode coefficients by their common integer content.
void normalize_primitive(std::map<SupportPair, Scalar, AlexLess>& coeffs) {
    if (coeffs.empty()) return;
    if (coeffs.begin()->second.mode() != ScalarMode::rational) return;
    mpz_class num_gcd(0), den_lcm(1);
    for (const auto& [k, v] : coeffs) {
        if (v.is_zero()) continue;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.rat().get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), v.rat().get_den().get_mpz_t());
    }
    if (num_gcd == 0) return;
    const Scalar f = Scalar::rational(den_lcm, num_gcd);
    for (auto& [k, v] : coeffs) v = v * f;
}

// ord_x P(x, z) > depth, with z an exact polynomial prefix.
bool order_exceeds(const XYPolynomial& p, const TruncatedSeries& z, std::int64_t depth) {
    const TruncatedSeries val = p.eval_at_series(z);
    for (const auto& [n, c] : val.coeffs()) {
        if (n.total() <= depth) return false;
        break; // grlex-first key has the least total degree
    }
    return true;
}

struct DepthMatrix {
    std::vector<MultiIndex> rows;
    ScalarMatrix m;
};

DepthMatrix depth_matrix(const WilczynskiView& view) {
    DepthMatrix out;
    out.rows = view.reduced_rows(view.shape().depth());
    out.m = view.materialize(out.rows);
    return out;
}

} // namespace

ReconstructionResult reconstruct_from_minor(const WilczynskiView& view,
                                            const std::vector<MultiIndex>& K,
                                            const std::vector<SupportPair>& I,
                                            const SupportPair& pivot) {
    const ScalarMode mode = view.series().mode();
    // F' = I u {pivot}, alex-sorted.
    std::vector<SupportPair> fprime = I;
    fprime.push_back(pivot);
    std::sort(fprime.begin(), fprime.end(), AlexLess{});
    if (K.size() + 1 != fprime.size())
        throw dimension_error("reconstruct_from_minor: |K| must be |I|");

    // Signed maximal minors of the K x F' matrix form a kernel vector:
    // the coefficient at position p (1-based) is (-1)^p det(drop column p).
    ReconstructionResult res;
    for (std::size_t t = 0; t < fprime.size(); ++t) {
        std::vector<SupportPair> cols;
        cols.reserve(fprime.size() - 1);
        for (std::size_t u = 0; u < fprime.size(); ++u)
            if (u != t) cols.push_back(fprime[u]);
        Scalar d = view.minor(K, cols);
        if (t % 2 == 0) d = -d;
        res.coefficients[fprime[t]] = d;
    }
    bool allZero = true;
    for (const auto& [k, v] : res.coefficients)
        if (!v.is_zero()) allZero = false;
    if (allZero)
        throw no_reconstruction_error("reconstruct_from_minor: kernel vector vanished");

    // Constant terms: a_{k,0} = - sum over F' of a_{i,j} C^(j)_{k-i}.
    for (const auto& [g, zero] : view.shape().G()) {
        Scalar acc = Scalar::zero(mode);
        for (const auto& fp : fprime) {
            const Scalar& a = res.coefficients[fp];
            if (a.is_zero()) continue;
            if (!product_le(fp.first, g)) continue;
            const MultiIndex diff = g - fp.first;
            acc = acc + a * series_power_coeff(view.series(), fp.second, diff);
        }
        res.coefficients[SupportPair{g, 0u}] = -acc;
    }
    normalize_primitive(res.coefficients);
    res.used_minor = MinorRef{K, I};
    res.rank = K.size();
    return res;
}

namespace {

ReconstructionResult singleton_reconstruction(const WilczynskiView& view) {
    const ScalarMode mode = view.series().mode();
    ReconstructionResult res;
    const SupportPair& lead = view.shape().F().front();
    res.coefficients[lead] = Scalar::one(mode);
    for (const auto& [g, zero] : view.shape().G()) {
        Scalar acc = Scalar::zero(mode);
        if (product_le(lead.first, g)) {
            const MultiIndex diff = g - lead.first;
            acc = series_power_coeff(view.series(), lead.second, diff);
        }
        res.coefficients[SupportPair{g, 0u}] = -acc;
    }
    normalize_primitive(res.coefficients);
    res.rank = 0;
    return res;
}

} // namespace

ReconstructionResult reconstruct(const TruncatedSeries& series, const SupportShape& shape,
                                 const ReconstructOptions& opts) {
    const int r = shape.r();
    const ScalarMode mode = series.mode();
    const std::int64_t N = shape.depth();
    const MultiIndex depthIdx = [&] {
        MultiIndex d = MultiIndex::zero(r);
        d[0] = N;
        return d;
    }();
    if (!series.determined(depthIdx))
        throw truncation_error("reconstruct: series must be known through total degree " +
                               std::to_string(N));
    if (series.coeff(MultiIndex::last_unit(r)).is_zero())
        throw precondition_error("reconstruct: coefficient at (0,...,0,1) must be nonzero");

    WilczynskiView view(shape, series, depthIdx);
    const auto dm = depth_matrix(view);
    const auto profile = rank_profile(dm.m, mode);
    const std::size_t f = shape.F().size();
    const TruncatedSeries zN = series.prefix(depthIdx);

    auto finish = [&](ReconstructionResult res) {
        res.verified_to_order = depthIdx;
        return res;
    };

    if (profile.rank == f)
        throw no_reconstruction_error(
            "reconstruct: matrix has full rank at depth " + std::to_string(N) +
            "; series is not algebraic relative to the shape at this horizon");

    if (profile.rank == 0) {
        ReconstructionResult res = singleton_reconstruction(view);
        if (!order_exceeds(res.polynomial(r, mode), zN, N))
            throw no_reconstruction_error("reconstruct: singleton candidate failed the order check");
        return finish(std::move(res));
    }

    auto try_minor = [&](const std::vector<std::size_t>& rowIdx,
                         const std::vector<std::size_t>& colIdx)
        -> std::optional<ReconstructionResult> {
        std::vector<MultiIndex> K;
        K.reserve(rowIdx.size());
        for (auto i : rowIdx) K.push_back(dm.rows[i]);
        std::vector<SupportPair> I;
        I.reserve(colIdx.size());
        for (auto j : colIdx) I.push_back(shape.F()[j]);
        // Pivot candidates: columns of F outside I, alex order.
        for (std::size_t t = 0; t < f; ++t) {
            if (std::find(colIdx.begin(), colIdx.end(), t) != colIdx.end()) continue;
            ReconstructionResult res = reconstruct_from_minor(view, K, I, shape.F()[t]);
            if (order_exceeds(res.polynomial(r, mode), zN, N)) return res;
        }
        return std::nullopt;
    };

    // Canonical choice: greedy pivot rows (lex-least independent row set),
    // then the lex-least column subset of that row block.
    {
        const ScalarMatrix rowBlock = submatrix(
            dm.m, profile.pivot_rows,
            [&] {
                std::vector<std::size_t> all(f);
                for (std::size_t j = 0; j < f; ++j) all[j] = j;
                return all;
            }());
        const auto cols = greedy_min_columns(rowBlock, profile.rank, mode);
        if (cols.size() == profile.rank) {
            if (auto res = try_minor(profile.pivot_rows, cols)) return finish(std::move(*res));
        }
    }

    if (opts.exhaustive_fallback) {
        // One canonical row set per column subset of the right size,
        // column subsets enumerated in lex order.
        std::optional<ReconstructionResult> found;
        std::vector<std::size_t> stack;
        auto rec = [&](auto&& self, std::size_t from) -> bool {
            if (stack.size() == profile.rank) {
                ScalarMatrix cut;
                cut.reserve(dm.m.size());
                for (const auto& row : dm.m) {
                    std::vector<Scalar> v;
                    v.reserve(stack.size());
                    for (auto j : stack) v.push_back(row[j]);
                    cut.push_back(std::move(v));
                }
                const auto prof = rank_profile(cut, mode);
                if (prof.rank == profile.rank) {
                    if (auto res = try_minor(prof.pivot_rows, stack)) {
                        found = std::move(res);
                        return true;
                    }
                }
                return false;
            }
            for (std::size_t j = from; j < f; ++j) {
                stack.push_back(j);
                if (self(self, j + 1)) return true;
                stack.pop_back();
            }
            return false;
        };
        if (rec(rec, 0)) return finish(std::move(*found));
    }

    throw no_reconstruction_error(
        "reconstruct: no candidate minor produced a verified annihilator at depth " +
        std::to_string(N));
}

AlgebraicityVerdict check_algebraic(const TruncatedSeries& series, const SupportShape& shape,
                                    const ReconstructOptions& opts) {
    const int r = shape.r();
    const std::int64_t N = shape.depth();
    MultiIndex depthIdx = MultiIndex::zero(r);
    depthIdx[0] = N;
    if (!series.determined(depthIdx))
        throw truncation_error("check_algebraic: series must be known through total degree " +
                               std::to_string(N));
    WilczynskiView view(shape, series, depthIdx);
    const auto dm = depth_matrix(view);
    const auto profile = rank_profile(dm.m, series.mode());
    const std::size_t f = shape.F().size();
    if (profile.rank == f) {
        std::vector<MultiIndex> K;
        for (auto i : profile.pivot_rows) K.push_back(dm.rows[i]);
        Scalar witness = view.minor(K, shape.F());
        return NotAlgebraicAtDepth{N, MinorRef{std::move(K), shape.F()}, std::move(witness)};
    }
    return ConsistentWithReconstruction{reconstruct(series, shape, opts)};
}

ReconstructionBounds reconstruction_bounds(std::int64_t dx, unsigned dy, int r,
                                           const std::optional<SupportShape>& shape) {
    if (dx < 1 || dy < 1 || r < 1)
        throw precondition_error("reconstruction_bounds: dx, dy, r must be >= 1");
    ReconstructionBounds out;
    out.depth = 2 * dx * static_cast<std::int64_t>(dy);

    mpz_class rows;
    mpz_bin_uiui(rows.get_mpz_t(), static_cast<unsigned long>(out.depth + r),
                 static_cast<unsigned long>(r));
    const std::size_t gsize = shape ? shape->G().size() : 0;
    out.reduced_rows = rows - static_cast<long>(gsize);

    mpz_class box; // binom(dx + r, r)
    mpz_bin_uiui(box.get_mpz_t(), static_cast<unsigned long>(dx + r),
                 static_cast<unsigned long>(r));
    out.deg_bound_f = mpz_class(dy) * (dy + 1) * box / 2 - 1;
    std::int64_t worstG = dx;
    if (shape) {
        worstG = 0;
        for (const auto& [i, j] : shape->G()) worstG = std::max(worstG, i.total());
    }
    out.deg_bound_g = out.deg_bound_f + worstG;

    // |Lambda| <= f + sum_{t=1}^{min(D, f-1)} binom(f-1, t) binom(D, t)
    const mpz_class fcount =
        shape ? mpz_class(static_cast<long>(shape->F().size())) : mpz_class(dy) * box;
    const mpz_class D = out.reduced_rows;
    mpz_class lam = fcount;
    const unsigned long fnum = mpz_get_ui(fcount.get_mpz_t());
    unsigned long g = fnum >= 1 ? fnum - 1 : 0;
    if (D >= 0 && D < g) g = mpz_get_ui(D.get_mpz_t());
    for (unsigned long t = 1; t <= g; ++t) {
        mpz_class a, b;
        mpz_bin_uiui(a.get_mpz_t(), fnum - 1, t);
        mpz_bin_ui(b.get_mpz_t(), D.get_mpz_t(), t);
        lam += a * b;
    }
    out.family_bound = lam;
    return out;
}

} // namespace puiseux::wilczynski
