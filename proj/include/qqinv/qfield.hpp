#pragma once

// Exact arithmetic in Q(q), the field of rational functions in one
// indeterminate, plus evaluation into Z/p for fast rank estimates.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qqinv {

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("division by zero in Q(q)") {}
};

class BadEvaluationPoint : public std::domain_error {
public:
    explicit BadEvaluationPoint(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Dense integer polynomial, coefficient of q^k at index k. Never has a
/// zero leading coefficient; the zero polynomial is the empty vector.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<mpz_class> coeffs);
    static Poly constant(const mpz_class& c);
    static Poly monomial(const mpz_class& c, int degree);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& lc() const { return c_.back(); }
    const mpz_class& operator[](std::size_t k) const { return c_[k]; }
    std::size_t size() const { return c_.size(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    /// Number of trailing zero coefficients (the q-adic valuation).
    int valuation() const;
    Poly shifted_down(int k) const;
    Poly shifted_up(int k) const;

    mpz_class content() const;
    Poly primitive_part() const;
    Poly div_scalar(const mpz_class& d) const;
    Poly negated() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Exact division; the caller guarantees b divides a in Z[q].
    static Poly div_exact(const Poly& a, const Poly& b);
    /// Primitive gcd (content 1, positive leading coefficient).
    static Poly gcd_primitive(const Poly& a, const Poly& b);

    /// Sparse "c*q^k" term list, highest degree first; "0" for zero.
    std::string to_string() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

class ModScalar;

/// Element of Q(q) kept in the canonical form q^shift * num/den with
/// num(0) != 0, den(0) != 0, gcd(num, den) = 1, contents of num and den
/// coprime, and lc(den) > 0. Zero is stored as 0/1 with shift 0.
class QScalar {
public:
    QScalar() : den_(Poly::constant(1)) {}
    QScalar(long v);  // NOLINT: implicit integer embedding is intended
    static QScalar from_mpz(const mpz_class& v);
    static QScalar q_pow(int k);
    static QScalar q() { return q_pow(1); }
    /// xi = q - 1/q
    static QScalar xi();
    static QScalar from_parts(int shift, Poly num, Poly den);
    static QScalar parse(std::string_view text);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
    /// True when the value is a Laurent polynomial (no nontrivial denominator).
    bool is_laurent() const { return den_.is_one(); }

    /// Numerator and denominator as ordinary polynomials (q-powers folded in).
    Poly numerator() const;
    Poly denominator() const;
    int shift() const { return shift_; }
    const Poly& num_core() const { return num_; }
    const Poly& den_core() const { return den_; }

    QScalar operator-() const;
    friend QScalar operator+(const QScalar& a, const QScalar& b);
    friend QScalar operator-(const QScalar& a, const QScalar& b);
    friend QScalar operator*(const QScalar& a, const QScalar& b);
    /// Throws DivisionByZero when b == 0.
    friend QScalar operator/(const QScalar& a, const QScalar& b);
    QScalar& operator+=(const QScalar& b) { return *this = *this + b; }
    QScalar& operator-=(const QScalar& b) { return *this = *this - b; }
    QScalar& operator*=(const QScalar& b) { return *this = *this * b; }

    QScalar inverse() const;
    std::optional<QScalar> try_inverse() const;

    friend bool operator==(const QScalar& a, const QScalar& b) {
        return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
    }

    /// Serialization "(num)/(den)" with sparse term lists.
    std::string to_string() const;

    /// Homomorphic image in Z/p at q = q0; throws BadEvaluationPoint when the
    /// denominator vanishes there.
    ModScalar eval_mod(std::uint64_t p, std::uint64_t q0) const;

private:
    static QScalar normalize(int shift, Poly num, Poly den);
    int shift_ = 0;
    Poly num_;
    Poly den_;
};

std::ostream& operator<<(std::ostream& os, const QScalar& a);

/// Residue modulo a prime p < 2^63. A default-constructed value is a zero
/// without a modulus; it adopts the modulus of the other operand.
class ModScalar {
public:
    ModScalar() = default;
    ModScalar(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}
    static ModScalar from_signed(long long value, std::uint64_t p);

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    ModScalar operator-() const {
        ModScalar r;
        r.p_ = p_;
        r.v_ = v_ == 0 ? 0 : p_ - v_;
        return r;
    }
    friend ModScalar operator+(const ModScalar& a, const ModScalar& b);
    friend ModScalar operator-(const ModScalar& a, const ModScalar& b);
    friend ModScalar operator*(const ModScalar& a, const ModScalar& b);
    friend ModScalar operator/(const ModScalar& a, const ModScalar& b);
    ModScalar& operator+=(const ModScalar& b) { return *this = *this + b; }
    ModScalar& operator-=(const ModScalar& b) { return *this = *this - b; }
    ModScalar& operator*=(const ModScalar& b) { return *this = *this * b; }
    ModScalar inverse() const;
    ModScalar pow(long long e) const;

    friend bool operator==(const ModScalar& a, const ModScalar& b) {
        return a.v_ == b.v_ && (a.p_ == b.p_ || a.p_ == 0 || b.p_ == 0);
    }
    std::string to_string() const { return std::to_string(v_); }

private:
    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ModScalar& a);

/// 2^61 - 1, the prime used by the modular fast path.
inline constexpr std::uint64_t kFastPrime = (std::uint64_t{1} << 61) - 1;

bool is_prime_u64(std::uint64_t n);

}  // namespace qqinv
