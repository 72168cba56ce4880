#ifndef DERCAT_SCALAR_HPP
#define DERCAT_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace dercat {

/// The ground field: the rationals (characteristic 0) or F_p.
class Field {
public:
    constexpr Field() = default;

    static Field rationals() { return Field{}; }
    /// Throws std::invalid_argument unless p is prime and below 2^31.
    static Field prime(std::uint64_t p);
    /// Accepts "q" or "fp:<prime>".
    static Field parse(std::string_view text);

    bool is_prime_field() const { return modulus_ != 0; }
    std::uint64_t modulus() const { return modulus_; }
    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit constexpr Field(std::uint64_t p) : modulus_(p) {}
    std::uint64_t modulus_ = 0;
};

/// Field in effect for Scalar arithmetic on the calling thread.
Field active_field();

/// Selects the ground field for the lifetime of the scope (per thread).
/// Scalars created under different fields must not be mixed.
class FieldScope {
public:
    explicit FieldScope(Field field);
    ~FieldScope();
    FieldScope(const FieldScope&) = delete;
    FieldScope& operator=(const FieldScope&) = delete;

private:
    Field previous_;
};

/// Exact element of the active field. Over F_p the value is kept as its
/// canonical residue in [0, p); rationals are reduced on construction and a
/// denominator divisible by p is rejected.
class Scalar {
public:
    Scalar() = default;
    Scalar(long value);  // NOLINT(google-explicit-constructor)
    Scalar(long num, long den);
    explicit Scalar(mpq_class value);

    /// Integer or "a/b", optional sign, surrounding whitespace ignored.
    static Scalar parse(std::string_view text);

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    const mpq_class& value() const { return value_; }
    /// Throws InternalError if the value is not an integer fitting in long.
    long to_long() const;
    std::string to_string() const;

    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Rational ordering (meaningless over F_p, used only for canonical sorting).
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.value_ < b.value_; }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

private:
    void reduce();
    mpq_class value_;
};

/// Binomial coefficient C(n, k); zero when k < 0 or k > n or n < 0.
long binomial(long n, long k);

}  // namespace dercat

#endif  // DERCAT_SCALAR_HPP
