#ifndef PUISEUX_SYMPOLY_HPP
#define PUISEUX_SYMPOLY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <puiseux/errors.hpp>

namespace puiseux {

using symbol_id = std::uint32_t;

// Process-wide interning of symbol names. Ids are assigned in first-use
// order and stay stable for the lifetime of the process.
symbol_id intern_symbol(const std::string& name);
const std::string& symbol_name(symbol_id id);

// A monomial in the symbols: sorted (id, exponent) pairs, exponents > 0.
using Monomial = std::vector<std::pair<symbol_id, std::uint32_t>>;

std::int64_t mono_degree(const Monomial& m);
Monomial mono_mul(const Monomial& a, const Monomial& b);
// Componentwise quotient if a is divisible by b.
std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b);
// Graded order: total degree first, then lexicographic with lower symbol
// ids more significant (higher exponent on the earliest id wins).
std::strong_ordering mono_cmp(const Monomial& a, const Monomial& b);

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return mono_cmp(a, b) == std::strong_ordering::less;
    }
};

// Sparse multivariate polynomial over Z in interned symbols.
// Invariant: no stored zero coefficients; the zero polynomial has no terms.
class SparsePoly {
public:
    using TermMap = std::map<Monomial, mpz_class, MonoLess>;

    SparsePoly() = default;

    static SparsePoly constant(const mpz_class& c);
    static SparsePoly variable(symbol_id id, std::uint32_t exp = 1);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    // Only valid when is_constant().
    const mpz_class& constant_value() const;
    bool is_one() const;

    const TermMap& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    std::int64_t degree() const; // -1 for zero

    void add_term(const Monomial& m, const mpz_class& c);

    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator-() const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly mul_int(const mpz_class& k) const;
    SparsePoly mul_mono(const Monomial& m, const mpz_class& c) const;
    SparsePoly pow(unsigned long e) const;

    bool operator==(const SparsePoly& o) const { return t_ == o.t_; }

    // gcd of all coefficients (0 for the zero polynomial).
    mpz_class content() const;
    // Componentwise minimum exponent over all terms.
    Monomial monomial_content() const;
    // Quotient by a monomial times an integer; requires exact divisibility.
    SparsePoly divexact_mono(const Monomial& m, const mpz_class& c) const;

    // Leading term w.r.t. mono_cmp (largest monomial). Poly must be nonzero.
    const std::pair<const Monomial, mpz_class>& leading() const;

    // Exact polynomial quotient, or nullopt when the division has a remainder.
    std::optional<SparsePoly> exact_div(const SparsePoly& d) const;

    // Replace every occurrence of each listed symbol by an integer constant
    // (used by fixtures to specialize free symbols).
    SparsePoly substitute_int(const std::vector<std::pair<symbol_id, mpz_class>>& vals) const;

    std::string str() const;

private:
    TermMap t_;
    void guard_size(const mpz_class& c) const;
};

// A declared algebraic relation used as a rewrite rule:
//   sym^pow -> num/den  (num, den free of sym and of other ruled symbols).
struct SymbolRule {
    symbol_id sym;
    std::uint32_t pow;
    SparsePoly num;
    SparsePoly den; // nonzero
};

// Installs rules for the current computation context. Rules apply inside
// fraction normalization; exponents of a ruled symbol are reduced below pow.
void set_symbol_rules(std::vector<SymbolRule> rules);
void clear_symbol_rules();
const std::vector<SymbolRule>& symbol_rules();

// RAII: installs rules on construction, restores the previous set on exit.
class RelationScope {
public:
    explicit RelationScope(std::vector<SymbolRule> rules);
    ~RelationScope();
    RelationScope(const RelationScope&) = delete;
    RelationScope& operator=(const RelationScope&) = delete;

private:
    std::vector<SymbolRule> saved_;
};

// Element of the fraction field of Z[symbols], normalized modulo the
// installed rewrite rules. Invariants: den nonzero with positive leading
// coefficient, no common integer or monomial content between num and den,
// zero is 0/1. Equality is normal-form equality via cross-multiplication.
class SymScalar {
public:
    SymScalar() : num_(), den_(SparsePoly::constant(1)) {}
    SymScalar(SparsePoly num, SparsePoly den);

    static SymScalar from_poly(SparsePoly p) { return SymScalar(std::move(p), SparsePoly::constant(1)); }
    static SymScalar integer(const mpz_class& c) { return from_poly(SparsePoly::constant(c)); }
    static SymScalar rational(const mpz_class& p, const mpz_class& q);
    static SymScalar symbol(const std::string& name);

    const SparsePoly& num() const { return num_; }
    const SparsePoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    SymScalar operator+(const SymScalar& o) const;
    SymScalar operator-(const SymScalar& o) const;
    SymScalar operator-() const;
    SymScalar operator*(const SymScalar& o) const;
    SymScalar operator/(const SymScalar& o) const;
    SymScalar mul_int(const mpz_class& k) const;
    SymScalar pow(long e) const;

    bool operator==(const SymScalar& o) const;
    bool operator!=(const SymScalar& o) const { return !(*this == o); }

    SymScalar substitute_int(const std::vector<std::pair<symbol_id, mpz_class>>& vals) const;

    std::string str() const;

private:
    SparsePoly num_;
    SparsePoly den_;
    void normalize();
};

} // namespace puiseux

#endif
