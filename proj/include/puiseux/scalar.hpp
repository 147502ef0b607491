#ifndef PUISEUX_SCALAR_HPP
#define PUISEUX_SCALAR_HPP

#include <string>
#include <variant>

#include <gmpxx.h>

#include <puiseux/errors.hpp>
#include <puiseux/sympoly.hpp>

namespace puiseux {

enum class ScalarMode { rational, symbolic };

inline const char* mode_name(ScalarMode m) {
    return m == ScalarMode::rational ? "rational" : "symbolic";
}

// Element of the exact coefficient ring: either a rational number in lowest
// terms or a symbolic fraction over Z in named symbols. Mixing the two in
// one operation is an error.
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}

    static Scalar zero(ScalarMode m);
    static Scalar one(ScalarMode m);
    static Scalar integer(ScalarMode m, const mpz_class& v);
    static Scalar rational(const mpq_class& q);
    static Scalar rational(const mpz_class& num, const mpz_class& den);
    static Scalar symbolic(SymScalar s) { return Scalar(std::move(s)); }
    static Scalar symbol(const std::string& name) { return Scalar(SymScalar::symbol(name)); }

    ScalarMode mode() const {
        return std::holds_alternative<mpq_class>(v_) ? ScalarMode::rational : ScalarMode::symbolic;
    }
    bool is_rational() const { return mode() == ScalarMode::rational; }

    const mpq_class& rat() const;
    const SymScalar& sym() const;

    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar mul_int(const mpz_class& k) const;
    Scalar pow(long e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) { canon(); }
    explicit Scalar(SymScalar s) : v_(std::move(s)) {}
    void canon();
    std::variant<mpq_class, SymScalar> v_;
};

void check_same_mode(const Scalar& a, const Scalar& b, const char* where);

} // namespace puiseux

#endif
