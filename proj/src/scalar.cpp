#include <puiseux/scalar.hpp>

namespace puiseux {

Scalar Scalar::zero(ScalarMode m) {
    return m == ScalarMode::rational ? Scalar(mpq_class(0)) : Scalar(SymScalar());
}

Scalar Scalar::one(ScalarMode m) {
    return m == ScalarMode::rational ? Scalar(mpq_class(1)) : Scalar(SymScalar::integer(1));
}

Scalar Scalar::integer(ScalarMode m, const mpz_class& v) {
    return m == ScalarMode::rational ? Scalar(mpq_class(v)) : Scalar(SymScalar::integer(v));
}

Scalar Scalar::rational(const mpq_class& q) { return Scalar(q); }

Scalar Scalar::rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw divisibility_error("rational with zero denominator");
    mpq_class q(num, den);
    return Scalar(std::move(q));
}

void Scalar::canon() {
    if (auto* q = std::get_if<mpq_class>(&v_)) {
        q->canonicalize();
        const std::size_t limit = max_bigint_bits();
        if (limit != 0 &&
            (mpz_sizeinbase(q->get_num().get_mpz_t(), 2) > limit ||
             mpz_sizeinbase(q->get_den().get_mpz_t(), 2) > limit))
            throw resource_error("rational exceeds PUISEUX_MAX_BIGINT_BITS");
    }
}

const mpq_class& Scalar::rat() const {
    if (!is_rational()) throw mode_error("expected a rational scalar");
    return std::get<mpq_class>(v_);
}

const SymScalar& Scalar::sym() const {
    if (is_rational()) throw mode_error("expected a symbolic scalar");
    return std::get<SymScalar>(v_);
}

bool Scalar::is_zero() const {
    if (is_rational()) return std::get<mpq_class>(v_) == 0;
    return std::get<SymScalar>(v_).is_zero();
}

bool Scalar::is_one() const {
    if (is_rational()) return std::get<mpq_class>(v_) == 1;
    return std::get<SymScalar>(v_).is_one();
}

void check_same_mode(const Scalar& a, const Scalar& b, const char* where) {
    if (a.mode() != b.mode())
        throw mode_error(std::string(where) + ": cannot mix " + mode_name(a.mode()) + " and " +
                         mode_name(b.mode()) + " scalars");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_mode(*this, o, "Scalar::operator+");
    if (is_rational()) return Scalar(mpq_class(rat() + o.rat()));
    return Scalar(sym() + o.sym());
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_mode(*this, o, "Scalar::operator-");
    if (is_rational()) return Scalar(mpq_class(rat() - o.rat()));
    return Scalar(sym() - o.sym());
}

Scalar Scalar::operator-() const {
    if (is_rational()) return Scalar(mpq_class(-rat()));
    return Scalar(-sym());
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_mode(*this, o, "Scalar::operator*");
    if (is_rational()) return Scalar(mpq_class(rat() * o.rat()));
    return Scalar(sym() * o.sym());
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same_mode(*this, o, "Scalar::operator/");
    if (o.is_zero()) throw divisibility_error("Scalar: division by zero");
    if (is_rational()) return Scalar(mpq_class(rat() / o.rat()));
    return Scalar(sym() / o.sym());
}

Scalar Scalar::mul_int(const mpz_class& k) const {
    if (is_rational()) return Scalar(mpq_class(rat() * mpq_class(k)));
    return Scalar(sym().mul_int(k));
}

Scalar Scalar::pow(long e) const {
    if (is_rational()) {
        if (e == 0) return Scalar(mpq_class(1));
        const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
        mpq_class out;
        mpz_pow_ui(out.get_num().get_mpz_t(), rat().get_num().get_mpz_t(), a);
        mpz_pow_ui(out.get_den().get_mpz_t(), rat().get_den().get_mpz_t(), a);
        out.canonicalize();
        if (e < 0) {
            if (out == 0) throw divisibility_error("Scalar: zero to a negative power");
            out = 1 / out;
        }
        return Scalar(std::move(out));
    }
    return Scalar(sym().pow(e));
}

bool Scalar::operator==(const Scalar& o) const {
    if (mode() != o.mode()) return false;
    if (is_rational()) return rat() == o.rat();
    return sym() == o.sym();
}

std::string Scalar::str() const {
    if (is_rational()) return rat().get_str();
    return sym().str();
}

} // namespace puiseux
