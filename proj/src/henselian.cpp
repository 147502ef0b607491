#include <puiseux/henselian.hpp>

#include <queue>
#include <set>

namespace puiseux::henselian {

StrongReductionCheck is_strongly_reduced(const XYPolynomial& q) {
    StrongReductionCheck out;
    if (q.is_zero()) {
        out.diagnosis = "Q is identically zero";
        return out;
    }
    const MultiIndex zero = MultiIndex::zero(q.r());
    const auto w = q.w_valuation();
    if (!grlex_less(zero, *w))
        out.diagnosis = "w(Q) = " + w->str() + " is not >_grlex 0";
    bool hasConstPart = false;
    for (const auto& [k, c] : q.terms())
        if (k.y == 0) hasConstPart = true;
    if (!hasConstPart) {
        if (!out.diagnosis.empty()) out.diagnosis += "; ";
        out.diagnosis += "Q(x,0) is identically zero";
    }
    out.ok = out.diagnosis.empty();
    return out;
}

HenselianEquation::HenselianEquation(XYPolynomial q) : q_(std::move(q)) {
    for (const auto& [k, c] : q_.terms()) terms_.push_back(EquationTerm{k.x, k.y, c});
    strong_ = is_strongly_reduced(q_).ok;
}

std::int64_t FSBounds::mu(const MultiIndex& n) const {
    std::int64_t s = 0;
    for (int k = 0; k < n.r(); ++k) s += lambda[static_cast<std::size_t>(k)] * n[k];
    return std::max<std::int64_t>(s, 1);
}

FSBounds fs_bounds(const HenselianEquation& eq) {
    if (!eq.strongly_reduced())
        throw precondition_error("fs_bounds: equation must be strongly reduced");
    const int r = eq.r();
    FSBounds out;
    out.iota0 = MultiIndex::zero(r);
    for (const auto& t : eq.terms())
        for (int k = 0; k < r; ++k) out.iota0[k] = std::max(out.iota0[k], -t.x[k]);
    out.lambda.assign(static_cast<std::size_t>(r), 0);
    std::int64_t full = 1; // prod_{j=1}^{r-1} (1 + iota0_j)
    for (int j = 0; j + 1 < r; ++j) full *= 1 + out.iota0[j];
    for (int k = 0; k < r; ++k) {
        if (k == r - 1) {
            out.lambda[static_cast<std::size_t>(k)] = full;
        } else if (k == r - 2) {
            out.lambda[static_cast<std::size_t>(k)] = 1 + full;
        } else {
            std::int64_t tail = 1; // prod_{j=k+2}^{r-1} entries (1-based k+1..r-1)
            for (int j = k + 1; j + 1 < r; ++j) tail *= 1 + out.iota0[j];
            out.lambda[static_cast<std::size_t>(k)] = tail + full;
        }
    }
    return out;
}

unsigned long MVector::order(const std::vector<EquationTerm>& terms) const {
    unsigned long s = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) s += mult[t];
    return s;
}

unsigned long MVector::ynorm(const std::vector<EquationTerm>& terms) const {
    unsigned long s = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) s += mult[t] * terms[t].y;
    return s;
}

MultiIndex MVector::gsum(int r, const std::vector<EquationTerm>& terms) const {
    MultiIndex g = MultiIndex::zero(r);
    for (std::size_t t = 0; t < terms.size(); ++t)
        if (mult[t] != 0) g = g + terms[t].x * static_cast<std::int64_t>(mult[t]);
    return g;
}

mpz_class multinomial_weight(unsigned long m, const MVector& mv,
                             const std::vector<EquationTerm>& terms) {
    if (mv.order(terms) != m)
        throw precondition_error("multinomial_weight: |M| != m");
    if (mv.ynorm(terms) + 1 != m)
        throw precondition_error("multinomial_weight: ||M|| != m - 1");
    mpz_class prod(1);
    unsigned long remaining = m;
    for (unsigned long k : mv.mult) {
        if (k == 0) continue;
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), remaining, k);
        prod *= b;
        remaining -= k;
    }
    mpz_class q, rem;
    mpz_tdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), prod.get_mpz_t(), m);
    if (rem != 0)
        throw divisibility_error("multinomial_weight: m!/M! not divisible by m");
    return q;
}

namespace {

struct SearchSpec {
    const std::vector<EquationTerm>& terms;
    int r;
    // Exact order when set; otherwise every order up to max_m.
    std::optional<unsigned long> fixed_m;
    unsigned long max_m;
    // Per-coordinate suffix minima/maxima of the term exponents, and suffix
    // maximum of the term total degrees (all negatives clamped at 0 / 0).
    std::vector<std::vector<std::int64_t>> sufMin, sufMax;
    std::vector<std::int64_t> sufDegMax;
};

// DFS over multiplicities of the canonical term list with running budgets:
// the order |M| (count), the weight ||M|| (norm), and the exponent sum G(M).
void dfs(const SearchSpec& spec, std::size_t t, unsigned long count, unsigned long norm,
         MultiIndex g, std::vector<unsigned long>& mult,
         const std::function<void(const MVector&, unsigned long)>& emit) {
    const std::size_t T = spec.terms.size();
    // Feasibility of the remaining suffix.
    const unsigned long slots = spec.max_m - count;
    const std::int64_t degLeft = g.total();
    if (degLeft < 0) return;
    if (degLeft > static_cast<std::int64_t>(slots) * spec.sufDegMax[t]) return;
    for (int k = 0; k < spec.r; ++k) {
        const std::int64_t lo = static_cast<std::int64_t>(slots) * spec.sufMin[t][static_cast<std::size_t>(k)];
        const std::int64_t hi = static_cast<std::int64_t>(slots) * spec.sufMax[t][static_cast<std::size_t>(k)];
        if (g[k] < lo || g[k] > hi) return;
    }
    if (t == T) {
        if (!g.is_zero()) return;
        if (count == 0) return;
        if (norm + 1 != count) return;
        if (spec.fixed_m && count != *spec.fixed_m) return;
        emit(MVector{mult}, count);
        return;
    }
    const auto& term = spec.terms[t];
    unsigned long cap = slots;
    if (term.y >= 1) {
        // Final norm equals count - 1 <= max_m - 1.
        const unsigned long normRoom = (spec.max_m - 1 >= norm) ? (spec.max_m - 1 - norm) : 0;
        cap = std::min(cap, normRoom / term.y);
    }
    const std::int64_t tdeg = term.x.total();
    if (tdeg > 0) cap = std::min<unsigned long>(cap, static_cast<unsigned long>(degLeft / tdeg));
    for (unsigned long m = 0; m <= cap; ++m) {
        mult[t] = m;
        dfs(spec, t + 1, count + m, norm + m * term.y,
            m == 0 ? g : g - term.x * static_cast<std::int64_t>(m), mult, emit);
    }
    mult[t] = 0;
}

void enumerate_core(const HenselianEquation& eq, const MultiIndex& n,
                    std::optional<unsigned long> fixed_m, unsigned long max_m,
                    const std::function<void(const MVector&, unsigned long)>& emit) {
    if (n.r() != eq.r()) throw dimension_error("enumerate_M: dimension mismatch");
    const auto& terms = eq.terms();
    const std::size_t T = terms.size();
    SearchSpec spec{terms, eq.r(), fixed_m, max_m, {}, {}, {}};
    spec.sufMin.assign(T + 1, std::vector<std::int64_t>(static_cast<std::size_t>(eq.r()), 0));
    spec.sufMax.assign(T + 1, std::vector<std::int64_t>(static_cast<std::size_t>(eq.r()), 0));
    spec.sufDegMax.assign(T + 1, 0);
    for (std::size_t t = T; t-- > 0;) {
        spec.sufDegMax[t] = std::max(spec.sufDegMax[t + 1], terms[t].x.total());
        for (int k = 0; k < eq.r(); ++k) {
            spec.sufMin[t][static_cast<std::size_t>(k)] =
                std::min(spec.sufMin[t + 1][static_cast<std::size_t>(k)],
                         std::min<std::int64_t>(terms[t].x[k], 0));
            spec.sufMax[t][static_cast<std::size_t>(k)] =
                std::max(spec.sufMax[t + 1][static_cast<std::size_t>(k)],
                         std::max<std::int64_t>(terms[t].x[k], 0));
        }
    }
    std::vector<unsigned long> mult(T, 0);
    dfs(spec, 0, 0, 0, n, mult, emit);
}

} // namespace

std::vector<MVector> enumerate_M(const HenselianEquation& eq, const MultiIndex& n,
                                 unsigned long m) {
    if (m < 1) throw precondition_error("enumerate_M: m must be >= 1");
    std::vector<MVector> out;
    enumerate_core(eq, n, m, m, [&](const MVector& mv, unsigned long) { out.push_back(mv); });
    return out;
}

Scalar fs_coefficient(const HenselianEquation& eq, const MultiIndex& n) {
    if (!eq.strongly_reduced())
        throw precondition_error("fs_coefficient: equation must be strongly reduced");
    if (!grlex_less(MultiIndex::zero(eq.r()), n))
        throw precondition_error("fs_coefficient: index must be >_grlex 0");
    const FSBounds bounds = fs_bounds(eq);
    const std::int64_t mu = bounds.mu(n);
    Scalar acc = Scalar::zero(eq.mode());
    enumerate_core(eq, n, std::nullopt, static_cast<unsigned long>(mu),
                   [&](const MVector& mv, unsigned long m) {
                       const mpz_class w = multinomial_weight(m, mv, eq.terms());
                       Scalar prod = Scalar::integer(eq.mode(), w);
                       for (std::size_t t = 0; t < mv.mult.size(); ++t) {
                           if (mv.mult[t] == 0) continue;
                           prod = prod * eq.terms()[t].coeff.pow(static_cast<long>(mv.mult[t]));
                       }
                       acc = acc + prod;
                   });
    return acc;
}

Scalar fs_univariate(const XYPolynomial& q, unsigned long n) {
    if (q.r() != 1) throw precondition_error("fs_univariate: equation must be univariate");
    if (q.has_negative_x_exponent())
        throw precondition_error("fs_univariate: exponents must lie in N");
    if (n < 1) throw precondition_error("fs_univariate: n must be >= 1");
    const MultiIndex zero = MultiIndex::zero(1);
    bool constAtOrigin = !q.coeff(zero, 0).is_zero();
    bool linearAtOrigin = !q.coeff(zero, 1).is_zero();
    if (constAtOrigin || linearAtOrigin)
        throw precondition_error("fs_univariate: Q(0,0) and dQ/dy(0,0) must vanish");
    bool hasConstPart = false;
    bool pureYTerm = false;
    for (const auto& [k, c] : q.terms()) {
        if (k.y == 0) hasConstPart = true;
        if (k.x.is_zero() && k.y >= 1) pureYTerm = true;
    }
    if (!hasConstPart) throw precondition_error("fs_univariate: Q(x,0) must be nonzero");

    const unsigned long maxM = pureYTerm ? 2 * n - 1 : n;
    HenselianEquation eq(q);
    MultiIndex target(std::vector<std::int64_t>{static_cast<std::int64_t>(n)});
    Scalar acc = Scalar::zero(q.mode());
    enumerate_core(eq, target, std::nullopt, maxM, [&](const MVector& mv, unsigned long m) {
        const mpz_class w = multinomial_weight(m, mv, eq.terms());
        Scalar prod = Scalar::integer(q.mode(), w);
        for (std::size_t t = 0; t < mv.mult.size(); ++t) {
            if (mv.mult[t] == 0) continue;
            prod = prod * eq.terms()[t].coeff.pow(static_cast<long>(mv.mult[t]));
        }
        acc = acc + prod;
    });
    return acc;
}

namespace {

// Incrementally maintained powers of the partial solution, windowed.
struct PowerTable {
    int r;
    ScalarMode mode;
    unsigned dy;
    MultiIndex window;
    // pow[j] for j = 1..dy as plain coefficient maps.
    std::vector<std::map<MultiIndex, Scalar, GrlexLess>> pow;

    PowerTable(int r_, ScalarMode mode_, unsigned dy_, MultiIndex window_)
        : r(r_), mode(mode_), dy(dy_), window(std::move(window_)), pow(dy_ + 1) {}

    // z += c x^n, with pow[j] updated via the binomial expansion. Descending
    // j keeps pow[j-m] at its previous value while pow[j] is rewritten.
    void add_term(const MultiIndex& n, const Scalar& c) {
        for (unsigned j = dy; j >= 1; --j) {
            mpz_class binom;
            Scalar cm = Scalar::one(mode);
            for (unsigned m = 1; m <= j; ++m) {
                cm = cm * c;
                mpz_bin_uiui(binom.get_mpz_t(), j, m);
                const MultiIndex shift = n * static_cast<std::int64_t>(m);
                const Scalar factor = cm.mul_int(binom);
                if (m == j) {
                    if (grlex_le(shift, window)) accumulate(pow[j], shift, factor);
                } else {
                    for (const auto& [idx0, v] : pow[j - m]) {
                        const MultiIndex idx = idx0 + shift;
                        if (grlex_le(idx, window)) accumulate(pow[j], idx, factor * v);
                    }
                }
            }
        }
    }

    static void accumulate(std::map<MultiIndex, Scalar, GrlexLess>& m, const MultiIndex& idx,
                           const Scalar& v) {
        auto it = m.find(idx);
        if (it == m.end()) {
            if (!v.is_zero()) m.emplace(idx, v);
        } else {
            it->second = it->second + v;
            if (it->second.is_zero()) m.erase(it);
        }
    }

    // Coefficient of x^nu in z^j.
    Scalar coeff(unsigned j, const MultiIndex& nu) const {
        auto it = pow[j].find(nu);
        return it == pow[j].end() ? Scalar::zero(mode) : it->second;
    }
};

// Grlex-ordered candidate indices for the solution support.
class CandidateStream {
public:
    CandidateStream(const HenselianEquation& eq, const MultiIndex& horizon, bool monoid)
        : horizon_(horizon), monoid_(monoid) {
        const int r = eq.r();
        if (monoid_) {
            for (const auto& t : eq.terms()) generators_.insert(t.x);
            for (const auto& g : generators_)
                if (grlex_le(g, horizon_)) frontier_.insert(g);
        } else {
            cursor_ = MultiIndex::zero(r);
        }
    }

    std::optional<MultiIndex> next() {
        if (monoid_) {
            if (frontier_.empty()) return std::nullopt;
            MultiIndex n = *frontier_.begin();
            frontier_.erase(frontier_.begin());
            for (const auto& g : generators_) {
                const MultiIndex m = n + g;
                if (grlex_le(m, horizon_)) frontier_.insert(m);
            }
            return n;
        }
        cursor_ = grlex_successor(cursor_);
        if (!grlex_le(cursor_, horizon_)) return std::nullopt;
        return cursor_;
    }

private:
    MultiIndex horizon_;
    bool monoid_;
    std::set<MultiIndex, GrlexLess> generators_;
    std::set<MultiIndex, GrlexLess> frontier_;
    MultiIndex cursor_;
};

// Classical polynomial Hensel conditions over N^r exponents; this is the
// accepted fallback class when the strong w(Q) > 0 condition fails.
StrongReductionCheck relaxed_check(const XYPolynomial& q) {
    StrongReductionCheck out;
    if (q.has_negative_x_exponent()) {
        out.diagnosis = "not strongly reduced and has Laurent exponents";
        return out;
    }
    XYPolynomial constPart(q.r(), q.mode());
    for (const auto& [k, c] : q.terms())
        if (k.y == 0) constPart.add_term(k.x, 0, c);
    if (constPart.is_zero()) {
        out.diagnosis = "Q(x,0) is identically zero";
        return out;
    }
    const MultiIndex v0 = *constPart.w_valuation();
    const MultiIndex zero = MultiIndex::zero(q.r());
    if (!grlex_less(zero, v0)) {
        out.diagnosis = "Q(x,0) has a term at x^0";
        return out;
    }
    for (const auto& [k, c] : q.terms()) {
        if (k.y == 0) continue;
        const MultiIndex gap = k.x + v0 * static_cast<std::int64_t>(k.y - 1);
        if (!grlex_less(zero, gap)) {
            out.diagnosis = "term at x^" + k.x.str() + " y^" + std::to_string(k.y) +
                            " blocks the fixed-point iteration";
            return out;
        }
    }
    out.ok = true;
    return out;
}

} // namespace

std::vector<MultiIndex> support_monoid_segment(const HenselianEquation& eq,
                                               const MultiIndex& horizon,
                                               std::size_t max_terms) {
    CandidateStream stream(eq, horizon, true);
    std::vector<MultiIndex> out;
    while (auto n = stream.next()) {
        out.push_back(*n);
        if (out.size() > max_terms)
            throw resource_error("support_monoid_segment: more than " +
                                 std::to_string(max_terms) + " candidates below the horizon");
    }
    return out;
}

TruncatedSeries hensel_solve(const HenselianEquation& eq, const MultiIndex& horizon,
                             const SolveOptions& opts) {
    if (horizon.r() != eq.r()) throw dimension_error("hensel_solve: dimension mismatch");
    const bool strong = eq.strongly_reduced();
    if (!strong) {
        const auto relaxed = relaxed_check(eq.q());
        if (!relaxed.ok)
            throw precondition_error("hensel_solve: " + relaxed.diagnosis);
    }
    const int r = eq.r();
    const ScalarMode mode = eq.mode();
    const unsigned dy = eq.q().deg_y();

    // Window for the power table: every slice n - i with n <= horizon and
    // i an exponent of Q stays inside horizon - w(Q).
    MultiIndex window = horizon;
    if (strong) window = horizon - *eq.q().w_valuation();

    PowerTable powers(r, mode, dy, window);
    TruncatedSeries sol(r, mode, horizon);
    CandidateStream stream(eq, horizon, strong);
    std::size_t processed = 0;
    while (auto n = stream.next()) {
        if (++processed > opts.max_terms)
            throw resource_error("hensel_solve: candidate support below the horizon exceeds " +
                                 std::to_string(opts.max_terms) + " indices");
        // c_n = [x^n] Q(x, z_n).
        Scalar c = Scalar::zero(mode);
        for (const auto& t : eq.terms()) {
            if (t.y == 0) {
                if (t.x == *n) c = c + t.coeff;
                continue;
            }
            const MultiIndex nu = *n - t.x;
            const Scalar z = powers.coeff(t.y, nu);
            if (!z.is_zero()) c = c + t.coeff * z;
        }
        if (!c.is_zero()) {
            sol.set_coeff(*n, c);
            powers.add_term(*n, c);
        }
    }
    return sol;
}

} // namespace puiseux::henselian
