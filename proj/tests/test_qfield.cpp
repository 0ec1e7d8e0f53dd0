#include "doctest.h"

#include <random>

#include "qqinv/qfield.hpp"

using qqinv::ModScalar;
using qqinv::Poly;
using qqinv::QScalar;

namespace {

QScalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<int> sh(-3, 3);
    auto poly = [&](bool nonzero) {
        while (true) {
            std::vector<mpz_class> c(static_cast<std::size_t>(deg(rng)) + 1);
            for (auto& x : c) x = coef(rng);
            Poly p(c);
            if (!nonzero || !p.is_zero()) return p;
        }
    };
    return QScalar::from_parts(sh(rng), poly(false), poly(true));
}

}  // namespace

TEST_CASE("q times its inverse is one") {
    CHECK((QScalar::q() * QScalar::q_pow(-1)).is_one());
    CHECK(QScalar::q().inverse() == QScalar::q_pow(-1));
}

TEST_CASE("xi as a fraction") {
    QScalar x = QScalar::q() + (-QScalar::q_pow(-1));
    CHECK(x == QScalar::xi());
    CHECK(x.numerator() == Poly({-1, 0, 1}));
    CHECK(x.denominator() == Poly({0, 1}));
}

TEST_CASE("xi squared") {
    QScalar x2 = QScalar::xi() * QScalar::xi();
    CHECK(x2.numerator() == Poly({1, 0, -2, 0, 1}));
    CHECK(x2.denominator() == Poly({0, 0, 1}));
}

TEST_CASE("canonical form cancels common factors") {
    // (q^2 - 1)/(q - 1) = q + 1
    QScalar a = QScalar::from_parts(0, Poly({-1, 0, 1}), Poly({-1, 1}));
    CHECK(a == QScalar(1) + QScalar::q());
    CHECK(a.is_laurent());
    // (2q + 2)/(4q^2 - 4) = 1/(2q - 2)
    QScalar b = QScalar::from_parts(0, Poly({2, 2}), Poly({-4, 0, 4}));
    CHECK(b.numerator() == Poly({1}));
    CHECK(b.denominator() == Poly({-2, 2}));
    // sign normalization puts the sign in the numerator
    QScalar c = QScalar::from_parts(0, Poly({1}), Poly({-3}));
    CHECK(c.numerator() == Poly({-1}));
    CHECK(c.denominator() == Poly({3}));
    CHECK(QScalar(1) / QScalar(2) + QScalar(1) / QScalar(2) == QScalar(1));
}

TEST_CASE("zero is stored as 0/1") {
    QScalar z = QScalar::q() - QScalar::q();
    CHECK(z.is_zero());
    CHECK(z == QScalar());
    CHECK(z.to_string() == "(0)/(1*q^0)");
}

TEST_CASE("division by zero is an error value") {
    CHECK_THROWS_AS((void)QScalar().inverse(), qqinv::DivisionByZero);
    CHECK_FALSE(QScalar().try_inverse().has_value());
    CHECK_THROWS_AS((void)(QScalar(1) / QScalar(0)), qqinv::DivisionByZero);
}

TEST_CASE("string round trip") {
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200; ++k) {
        QScalar a = random_scalar(rng);
        CHECK(QScalar::parse(a.to_string()) == a);
    }
    CHECK(QScalar::parse("1*q^1-1*q^-1") == QScalar::xi());
    CHECK(QScalar::parse(" ( 1*q^2 - 1*q^0 ) / ( 1*q^1 ) ") == QScalar::xi());
    CHECK(QScalar::parse("-3*q^0") == QScalar(-3));
    CHECK_THROWS_AS(QScalar::parse("(1*q^0"), qqinv::ParseError);
    CHECK_THROWS_AS(QScalar::parse("1*x^2"), qqinv::ParseError);
    CHECK_THROWS_AS(QScalar::parse("(1*q^0)/(0)"), qqinv::DivisionByZero);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(12345);
    for (int k = 0; k < 150; ++k) {
        QScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("modular evaluation") {
    CHECK(QScalar(1).eval_mod(101, 3).value() == 1);
    CHECK(QScalar::q_pow(2).eval_mod(101, 3).value() == 9);
    CHECK(QScalar::xi().eval_mod(101, 3).value() == 70);
    CHECK(QScalar(-1).eval_mod(101, 3).value() == 100);
    QScalar bad = QScalar(1) / (QScalar::q() - QScalar(3));
    CHECK_THROWS_AS((void)bad.eval_mod(101, 3), qqinv::BadEvaluationPoint);
    CHECK_THROWS_AS((void)QScalar::q_pow(-1).eval_mod(101, 0), qqinv::BadEvaluationPoint);
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937_64 rng(99);
    const std::uint64_t p = qqinv::kFastPrime;
    std::uniform_int_distribution<std::uint64_t> pick(2, p - 2);
    for (int k = 0; k < 100; ++k) {
        QScalar a = random_scalar(rng), b = random_scalar(rng);
        std::uint64_t q0 = pick(rng);
        try {
            ModScalar ea = a.eval_mod(p, q0), eb = b.eval_mod(p, q0);
            CHECK((a + b).eval_mod(p, q0) == ea + eb);
            CHECK((a * b).eval_mod(p, q0) == ea * eb);
        } catch (const qqinv::BadEvaluationPoint&) {
        }
    }
}

TEST_CASE("modular arithmetic") {
    const std::uint64_t p = 101;
    ModScalar a(3, p);
    CHECK((a * a.inverse()).is_one());
    CHECK(a.inverse().value() == 34);
    CHECK(ModScalar::from_signed(-1, p).value() == 100);
    CHECK((a - a).is_zero());
    CHECK(a.pow(-1) == a.inverse());
    ModScalar big(qqinv::kFastPrime - 1, qqinv::kFastPrime);
    CHECK((big + big).value() == qqinv::kFastPrime - 2);
    CHECK((big * big).is_one());
}

TEST_CASE("primality") {
    CHECK(qqinv::is_prime_u64(101));
    CHECK(qqinv::is_prime_u64(qqinv::kFastPrime));
    CHECK_FALSE(qqinv::is_prime_u64(qqinv::kFastPrime - 2));
    CHECK_FALSE(qqinv::is_prime_u64(1));
    CHECK(qqinv::is_prime_u64(2));
}
