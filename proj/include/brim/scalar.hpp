#ifndef BRIM_SCALAR_HPP
#define BRIM_SCALAR_HPP

#include <gmpxx.h>

#include <Eigen/Core>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>

#include "brim/error.hpp"

namespace brim {

/// Which coefficient field a ring is built over.  Exactly one of the two
/// scalar types below realises each kind.
struct FieldSpec {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint32_t prime = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime_field(std::uint32_t q);

  bool operator==(const FieldSpec&) const = default;
  std::string name() const {
    return kind == Kind::Rationals ? std::string("QQ") : "GF(" + std::to_string(prime) + ")";
  }
};

constexpr std::uint32_t kDefaultPrime = 32003;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

inline FieldSpec FieldSpec::prime_field(std::uint32_t q) {
  require(q < (1u << 31) && is_prime(q), ErrorKind::InvalidInput,
          "field characteristic " + std::to_string(q) + " is not a prime below 2^31");
  return {Kind::Prime, q};
}

// ---------------------------------------------------------------------------
// Rational: arbitrary precision, always canonical (lowest terms, den > 0).

class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT: integer literals must convert
  Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    require(den != 0, ErrorKind::InvalidInput, "zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_negative() const { return sgn(q_) < 0; }

  Rational inverse() const {
    require(!is_zero(), ErrorKind::Undefined, "inverse of zero");
    return Rational(mpq_class(1) / q_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(!b.is_zero(), ErrorKind::Undefined, "division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  std::string to_string() const { return q_.get_str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  mpq_class q_;
};

// ---------------------------------------------------------------------------
// Modular: residue in [0, q).  A value built from a bare integer carries no
// modulus yet; it adopts the modulus of the first typed operand it meets.
// This keeps `Modular(0)` usable as the additive identity inside Eigen.

class Modular {
 public:
  Modular() = default;
  Modular(long v) : raw_(v) {}  // NOLINT: untyped integer
  Modular(long v, std::uint32_t q) : mod_(q), val_(reduce(v, q)) {}

  std::uint32_t modulus() const { return mod_; }
  std::uint64_t residue() const { return typed() ? val_ : reduce(raw_, 0); }

  bool is_zero() const { return typed() ? val_ == 0 : raw_ == 0; }
  bool is_one() const { return typed() ? val_ == 1 : raw_ == 1; }
  bool is_negative() const { return false; }

  Modular inverse() const {
    require(!is_zero(), ErrorKind::Undefined, "inverse of zero");
    require(typed() || raw_ == 1 || raw_ == -1, ErrorKind::Internal, "inverse of an untyped residue");
    if (!typed()) return *this;
    // Fermat: q is prime.
    return make(mod_, pow_mod(val_, mod_ - 2, mod_));
  }

  friend Modular operator+(const Modular& a, const Modular& b) {
    auto q = unify(a, b);
    if (q == 0) return Modular(a.raw_ + b.raw_);
    return make(q, (a.as(q) + b.as(q)) % q);
  }
  friend Modular operator-(const Modular& a, const Modular& b) {
    auto q = unify(a, b);
    if (q == 0) return Modular(a.raw_ - b.raw_);
    return make(q, (a.as(q) + q - b.as(q)) % q);
  }
  friend Modular operator*(const Modular& a, const Modular& b) {
    auto q = unify(a, b);
    if (q == 0) return Modular(a.raw_ * b.raw_);
    return make(q, (a.as(q) * b.as(q)) % q);
  }
  friend Modular operator/(const Modular& a, const Modular& b) {
    require(!b.is_zero(), ErrorKind::Undefined, "division by zero");
    auto q = unify(a, b);
    if (q == 0) {
      require(a.raw_ % b.raw_ == 0, ErrorKind::Internal, "inexact division of untyped residues");
      return Modular(a.raw_ / b.raw_);
    }
    return a * make(q, b.as(q)).inverse();
  }
  Modular operator-() const { return Modular(0) - *this; }
  Modular& operator+=(const Modular& o) { return *this = *this + o; }
  Modular& operator-=(const Modular& o) { return *this = *this - o; }
  Modular& operator*=(const Modular& o) { return *this = *this * o; }
  Modular& operator/=(const Modular& o) { return *this = *this / o; }

  friend bool operator==(const Modular& a, const Modular& b) {
    auto q = unify(a, b);
    if (q == 0) return a.raw_ == b.raw_;
    return a.as(q) == b.as(q);
  }

  std::string to_string() const { return typed() ? std::to_string(val_) : std::to_string(raw_); }
  friend std::ostream& operator<<(std::ostream& os, const Modular& r) { return os << r.to_string(); }

 private:
  static Modular make(std::uint32_t q, std::uint64_t residue) {
    Modular m;
    m.mod_ = q;
    m.val_ = residue;
    return m;
  }

  bool typed() const { return mod_ != 0; }
  std::uint64_t as(std::uint32_t q) const { return typed() ? val_ : reduce(raw_, q); }

  static std::uint64_t reduce(long v, std::uint32_t q) {
    if (q == 0) return static_cast<std::uint64_t>(v);
    long r = v % static_cast<long>(q);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(q) : r);
  }
  static std::uint32_t unify(const Modular& a, const Modular& b) {
    if (a.typed() && b.typed())
      require(a.mod_ == b.mod_, ErrorKind::InvalidInput, "mixed moduli in one expression");
    return a.typed() ? a.mod_ : b.mod_;
  }
  static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1;
    b %= q;
    while (e) {
      if (e & 1) r = r * b % q;
      b = b * b % q;
      e >>= 1;
    }
    return r;
  }

  std::uint32_t mod_ = 0;
  std::uint64_t val_ = 0;
  long raw_ = 0;
};

// ---------------------------------------------------------------------------

template <class K>
concept FieldScalar = requires(const K a, const K b) {
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::same_as<K>;
  { a.to_string() } -> std::convertible_to<std::string>;
};

template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr FieldSpec::Kind kind = FieldSpec::Kind::Rationals;
  static Rational from_fraction(const mpz_class& num, const mpz_class& den, const FieldSpec&) {
    return Rational(num, den);
  }
  static Rational from_int(long v, const FieldSpec&) { return Rational(v); }
  /// Integer multiplier that clears the denominator of `a`.
  static Rational denominator(const Rational& a) { return Rational(a.denominator(), 1); }
};

template <>
struct scalar_traits<Modular> {
  static constexpr FieldSpec::Kind kind = FieldSpec::Kind::Prime;
  static Modular from_fraction(const mpz_class& num, const mpz_class& den, const FieldSpec& f) {
    mpz_class q(f.prime);
    mpz_class n = num % q, d = den % q;
    if (n < 0) n += q;
    if (d < 0) d += q;
    require(d != 0, ErrorKind::InvalidInput, "denominator vanishes modulo " + std::to_string(f.prime));
    return Modular(static_cast<long>(n.get_si()), f.prime) / Modular(static_cast<long>(d.get_si()), f.prime);
  }
  static Modular from_int(long v, const FieldSpec& f) { return Modular(v, f.prime); }
  static Modular denominator(const Modular&) { return Modular(1); }
};

}  // namespace brim

namespace Eigen {

template <>
struct NumTraits<brim::Rational> : GenericNumTraits<brim::Rational> {
  using Real = brim::Rational;
  using NonInteger = brim::Rational;
  using Literal = brim::Rational;
  using Nested = brim::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<brim::Modular> : GenericNumTraits<brim::Modular> {
  using Real = brim::Modular;
  using NonInteger = brim::Modular;
  using Literal = brim::Modular;
  using Nested = brim::Modular;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // BRIM_SCALAR_HPP
