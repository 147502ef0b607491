#include <puiseux/sympoly.hpp>

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace puiseux {

namespace {

struct SymbolRegistry {
    std::mutex mu;
    std::unordered_map<std::string, symbol_id> ids;
    std::vector<std::string> names;
};

SymbolRegistry& registry() {
    static SymbolRegistry reg;
    return reg;
}

std::vector<SymbolRule>& rules_storage() {
    static std::vector<SymbolRule> rules;
    return rules;
}

void guard_mpz(const mpz_class& v) {
    const std::size_t limit = max_bigint_bits();
    if (limit != 0 && mpz_sizeinbase(v.get_mpz_t(), 2) > limit)
        throw resource_error("big integer exceeds PUISEUX_MAX_BIGINT_BITS");
}

} // namespace

symbol_id intern_symbol(const std::string& name) {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    auto it = reg.ids.find(name);
    if (it != reg.ids.end()) return it->second;
    const symbol_id id = static_cast<symbol_id>(reg.names.size());
    reg.names.push_back(name);
    reg.ids.emplace(name, id);
    return id;
}

const std::string& symbol_name(symbol_id id) {
    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mu);
    return reg.names.at(id);
}

std::int64_t mono_degree(const Monomial& m) {
    std::int64_t d = 0;
    for (const auto& [id, e] : m) d += e;
    return d;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            out.push_back(a[i++]);
        } else {
            out.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back(b[j]);
    return out;
}

std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0;
    for (const auto& [id, e] : b) {
        while (i < a.size() && a[i].first < id) out.push_back(a[i++]);
        if (i >= a.size() || a[i].first != id || a[i].second < e) return std::nullopt;
        if (a[i].second > e) out.emplace_back(id, a[i].second - e);
        ++i;
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    return out;
}

std::strong_ordering mono_cmp(const Monomial& a, const Monomial& b) {
    const std::int64_t da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da <=> db;
    // Degrees tie: scan ids in increasing order; higher exponent on the
    // earlier id means the larger monomial.
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second) return a[i].second <=> b[j].second;
            ++i;
            ++j;
        } else if (a[i].first < b[j].first) {
            return std::strong_ordering::greater;
        } else {
            return std::strong_ordering::less;
        }
    }
    if (i < a.size()) return std::strong_ordering::greater;
    if (j < b.size()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

SparsePoly SparsePoly::constant(const mpz_class& c) {
    SparsePoly p;
    if (c != 0) p.t_.emplace(Monomial{}, c);
    return p;
}

SparsePoly SparsePoly::variable(symbol_id id, std::uint32_t exp) {
    SparsePoly p;
    if (exp == 0) return constant(1);
    p.t_.emplace(Monomial{{id, exp}}, mpz_class(1));
    return p;
}

bool SparsePoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty());
}

const mpz_class& SparsePoly::constant_value() const {
    static const mpz_class zero(0);
    if (t_.empty()) return zero;
    return t_.begin()->second;
}

bool SparsePoly::is_one() const {
    return t_.size() == 1 && t_.begin()->first.empty() && t_.begin()->second == 1;
}

std::int64_t SparsePoly::degree() const {
    if (t_.empty()) return -1;
    return mono_degree(t_.rbegin()->first);
}

void SparsePoly::guard_size(const mpz_class& c) const { guard_mpz(c); }

void SparsePoly::add_term(const Monomial& m, const mpz_class& c) {
    if (c == 0) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second += c;
        guard_size(it->second);
        if (it->second == 0) t_.erase(it);
    }
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    SparsePoly out(*this);
    for (const auto& [m, c] : o.t_) out.add_term(m, c);
    return out;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
    SparsePoly out(*this);
    for (const auto& [m, c] : o.t_) out.add_term(m, -c);
    return out;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly out;
    for (const auto& [m, c] : t_) out.t_.emplace(m, -c);
    return out;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    SparsePoly out;
    for (const auto& [ma, ca] : t_)
        for (const auto& [mb, cb] : o.t_) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
}

SparsePoly SparsePoly::mul_int(const mpz_class& k) const {
    if (k == 0) return SparsePoly();
    SparsePoly out;
    for (const auto& [m, c] : t_) {
        mpz_class v = c * k;
        guard_size(v);
        out.t_.emplace(m, std::move(v));
    }
    return out;
}

SparsePoly SparsePoly::mul_mono(const Monomial& m, const mpz_class& c) const {
    if (c == 0) return SparsePoly();
    SparsePoly out;
    for (const auto& [ma, ca] : t_) out.add_term(mono_mul(ma, m), ca * c);
    return out;
}

SparsePoly SparsePoly::pow(unsigned long e) const {
    SparsePoly out = constant(1);
    SparsePoly base(*this);
    while (e > 0) {
        if (e & 1UL) out = out * base;
        e >>= 1UL;
        if (e > 0) base = base * base;
    }
    return out;
}

mpz_class SparsePoly::content() const {
    mpz_class g(0);
    for (const auto& [m, c] : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Monomial SparsePoly::monomial_content() const {
    if (t_.empty()) return Monomial{};
    auto it = t_.begin();
    Monomial g = it->first;
    for (++it; it != t_.end() && !g.empty(); ++it) {
        const Monomial& m = it->first;
        Monomial next;
        std::size_t i = 0, j = 0;
        while (i < g.size() && j < m.size()) {
            if (g[i].first == m[j].first) {
                next.emplace_back(g[i].first, std::min(g[i].second, m[j].second));
                ++i;
                ++j;
            } else if (g[i].first < m[j].first) {
                ++i;
            } else {
                ++j;
            }
        }
        g = std::move(next);
    }
    return g;
}

SparsePoly SparsePoly::divexact_mono(const Monomial& m, const mpz_class& c) const {
    SparsePoly out;
    for (const auto& [ma, ca] : t_) {
        auto q = mono_div(ma, m);
        if (!q) throw divisibility_error("divexact_mono: monomial does not divide");
        mpz_class qc;
        mpz_class rem;
        mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), ca.get_mpz_t(), c.get_mpz_t());
        if (rem != 0) throw divisibility_error("divexact_mono: coefficient not divisible");
        out.t_.emplace(*q, qc);
    }
    return out;
}

const std::pair<const Monomial, mpz_class>& SparsePoly::leading() const {
    if (t_.empty()) throw precondition_error("leading term of zero polynomial");
    return *t_.rbegin();
}

std::optional<SparsePoly> SparsePoly::exact_div(const SparsePoly& d) const {
    if (d.is_zero()) throw divisibility_error("exact_div: division by zero polynomial");
    if (is_zero()) return SparsePoly();
    if (d.is_constant()) {
        const mpz_class& c = d.constant_value();
        SparsePoly out;
        for (const auto& [m, v] : t_) {
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
            if (rem != 0) return std::nullopt;
            out.t_.emplace(m, q);
        }
        return out;
    }
    SparsePoly rem(*this);
    SparsePoly quot;
    const auto& dl = d.leading();
    while (!rem.is_zero()) {
        const auto& rl = rem.leading();
        auto qm = mono_div(rl.first, dl.first);
        if (!qm) return std::nullopt;
        mpz_class qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rl.second.get_mpz_t(), dl.second.get_mpz_t());
        if (r != 0) return std::nullopt;
        quot.add_term(*qm, qc);
        rem = rem - d.mul_mono(*qm, qc);
    }
    return quot;
}

SparsePoly SparsePoly::substitute_int(
    const std::vector<std::pair<symbol_id, mpz_class>>& vals) const {
    SparsePoly out;
    for (const auto& [m, c] : t_) {
        mpz_class coeff = c;
        Monomial rest;
        for (const auto& [id, e] : m) {
            const auto* hit = [&]() -> const mpz_class* {
                for (const auto& [vid, v] : vals)
                    if (vid == id) return &v;
                return nullptr;
            }();
            if (hit) {
                mpz_class p;
                mpz_pow_ui(p.get_mpz_t(), hit->get_mpz_t(), e);
                coeff *= p;
            } else {
                rest.emplace_back(id, e);
            }
        }
        out.add_term(rest, coeff);
    }
    return out;
}

std::string SparsePoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Leading (largest) terms first.
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpz_class a = c;
        if (first) {
            if (a < 0) {
                os << '-';
                a = -a;
            }
            first = false;
        } else {
            if (a < 0) {
                os << " - ";
                a = -a;
            } else {
                os << " + ";
            }
        }
        const bool unitCoeff = (a == 1) && !m.empty();
        if (!unitCoeff) os << a.get_str();
        bool needStar = !unitCoeff;
        for (const auto& [id, e] : m) {
            if (needStar) os << '*';
            os << symbol_name(id);
            if (e != 1) os << '^' << e;
            needStar = true;
        }
    }
    return os.str();
}

void set_symbol_rules(std::vector<SymbolRule> rules) {
    for (const auto& rule : rules) {
        if (rule.pow == 0) throw precondition_error("symbol rule with zero exponent");
        if (rule.den.is_zero()) throw precondition_error("symbol rule with zero denominator");
        // Replacements must be free of every ruled symbol, or rewriting
        // would not terminate.
        for (const auto& part : {rule.num, rule.den})
            for (const auto& [m, c] : part.terms())
                for (const auto& [id, e] : m)
                    for (const auto& other : rules)
                        if (id == other.sym)
                            throw precondition_error(
                                "symbol rule replacement mentions a ruled symbol");
    }
    rules_storage() = std::move(rules);
}

void clear_symbol_rules() { rules_storage().clear(); }

const std::vector<SymbolRule>& symbol_rules() { return rules_storage(); }

RelationScope::RelationScope(std::vector<SymbolRule> rules) : saved_(rules_storage()) {
    set_symbol_rules(std::move(rules));
}

RelationScope::~RelationScope() { rules_storage() = std::move(saved_); }

namespace {

// Rewrite p modulo the installed rules; the result is num/den with den a
// product of rule denominators.
void rewrite_rules(const SparsePoly& p, SparsePoly& num, SparsePoly& den) {
    num = p;
    den = SparsePoly::constant(1);
    const auto& rules = rules_storage();
    if (rules.empty()) return;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rule : rules) {
            // Max number of replacements needed for this rule in num.
            unsigned long maxq = 0;
            for (const auto& [m, c] : num.terms()) {
                for (const auto& [id, e] : m) {
                    if (id == rule.sym && e >= rule.pow)
                        maxq = std::max<unsigned long>(maxq, e / rule.pow);
                }
            }
            if (maxq == 0) continue;
            changed = true;
            SparsePoly next;
            for (const auto& [m, c] : num.terms()) {
                unsigned long q = 0;
                Monomial rest;
                for (const auto& [id, e] : m) {
                    if (id == rule.sym) {
                        q = e / rule.pow;
                        const std::uint32_t remExp = e % rule.pow;
                        if (remExp > 0) rest.emplace_back(id, remExp);
                    } else {
                        rest.emplace_back(id, e);
                    }
                }
                // term * den^maxq = c * rest * num_rule^q * den_rule^(maxq-q)
                SparsePoly t = SparsePoly::constant(c).mul_mono(rest, 1);
                t = t * rule.num.pow(q) * rule.den.pow(maxq - q);
                next = next + t;
            }
            num = std::move(next);
            den = den * rule.den.pow(maxq);
        }
    }
}

} // namespace

SymScalar::SymScalar(SparsePoly num, SparsePoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw divisibility_error("SymScalar: zero denominator");
    normalize();
}

SymScalar SymScalar::rational(const mpz_class& p, const mpz_class& q) {
    return SymScalar(SparsePoly::constant(p), SparsePoly::constant(q));
}

SymScalar SymScalar::symbol(const std::string& name) {
    return from_poly(SparsePoly::variable(intern_symbol(name)));
}

void SymScalar::normalize() {
    // Apply declared relations to both parts.
    if (!symbol_rules().empty()) {
        SparsePoly nn, nd, dn, dd;
        rewrite_rules(num_, nn, nd);
        rewrite_rules(den_, dn, dd);
        if (dn.is_zero()) throw divisibility_error("SymScalar: denominator vanishes under relations");
        num_ = nn * dd;
        den_ = dn * nd;
    }
    if (num_.is_zero()) {
        den_ = SparsePoly::constant(1);
        return;
    }
    if (!den_.is_one()) {
        // Common monomial content.
        const Monomial mc = [&] {
            Monomial a = num_.monomial_content();
            Monomial b = den_.monomial_content();
            Monomial g;
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i].first == b[j].first) {
                    g.emplace_back(a[i].first, std::min(a[i].second, b[j].second));
                    ++i;
                    ++j;
                } else if (a[i].first < b[j].first) {
                    ++i;
                } else {
                    ++j;
                }
            }
            return g;
        }();
        if (!mc.empty()) {
            num_ = num_.divexact_mono(mc, 1);
            den_ = den_.divexact_mono(mc, 1);
        }
        // Full polynomial quotient when available.
        if (auto q = num_.exact_div(den_)) {
            num_ = std::move(*q);
            den_ = SparsePoly::constant(1);
        }
    }
    // Integer content across num and den.
    mpz_class g = num_.content();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.content().get_mpz_t());
    if (g > 1) {
        num_ = num_.divexact_mono(Monomial{}, g);
        den_ = den_.divexact_mono(Monomial{}, g);
    }
    if (den_.leading().second < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

SymScalar SymScalar::operator+(const SymScalar& o) const {
    if (den_ == o.den_) return SymScalar(num_ + o.num_, den_);
    return SymScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

SymScalar SymScalar::operator-(const SymScalar& o) const {
    if (den_ == o.den_) return SymScalar(num_ - o.num_, den_);
    return SymScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

SymScalar SymScalar::operator-() const {
    SymScalar out(*this);
    out.num_ = -out.num_;
    return out;
}

SymScalar SymScalar::operator*(const SymScalar& o) const {
    return SymScalar(num_ * o.num_, den_ * o.den_);
}

SymScalar SymScalar::operator/(const SymScalar& o) const {
    if (o.is_zero()) throw divisibility_error("SymScalar: division by zero");
    return SymScalar(num_ * o.den_, den_ * o.num_);
}

SymScalar SymScalar::mul_int(const mpz_class& k) const {
    return SymScalar(num_.mul_int(k), den_);
}

SymScalar SymScalar::pow(long e) const {
    if (e == 0) return integer(1);
    const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    SymScalar out(num_.pow(a), den_.pow(a));
    if (e < 0) {
        if (out.is_zero()) throw divisibility_error("SymScalar: zero to a negative power");
        return integer(1) / out;
    }
    return out;
}

bool SymScalar::operator==(const SymScalar& o) const {
    if (den_ == o.den_) return num_ == o.num_;
    // Cross-multiplication; normalization has already applied the rules.
    SymScalar diff = *this - o;
    return diff.is_zero();
}

SymScalar SymScalar::substitute_int(
    const std::vector<std::pair<symbol_id, mpz_class>>& vals) const {
    return SymScalar(num_.substitute_int(vals), den_.substitute_int(vals));
}

std::string SymScalar::str() const {
    if (den_.is_one()) return num_.str();
    std::ostringstream os;
    const bool wrapNum = num_.size() > 1;
    if (wrapNum) os << '(' << num_.str() << ')';
    else os << num_.str();
    os << '/';
    if (den_.size() > 1 || !den_.monomial_content().empty() ||
        (den_.size() == 1 && !den_.terms().begin()->first.empty()))
        os << '(' << den_.str() << ')';
    else
        os << den_.str();
    return os.str();
}

} // namespace puiseux
