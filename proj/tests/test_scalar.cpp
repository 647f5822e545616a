#include <catch2/catch_amalgamated.hpp>

#include <homdec/scalar.hpp>

#include <random>

using homdec::Fp;
using homdec::Rational;

TEST_CASE("rational arithmetic and canonical form") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));

    Rational r(-2, 4);
    CHECK(r.num() == -1);
    CHECK(r.den() == 2);

    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK((Rational(1, 3) * Rational(3, 1)) == Rational(1));
    CHECK_THROWS_AS(Rational(1, 0), homdec::error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), homdec::error);
}

TEST_CASE("rational canonical invariant survives random arithmetic") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 12);
    for (int i = 0; i < 300; ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        for (Rational x : {a + b, a - b, a * b}) {
            CHECK(x.den() > 0);
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
            CHECK(g == 1);
        }
    }
}

TEST_CASE("prime field arithmetic") {
    CHECK(Fp(2, 5) * Fp(3, 5) == Fp(1, 5));
    CHECK(Fp(4, 5) + Fp(3, 5) == Fp(2, 5));
    CHECK(-Fp(1, 7) == Fp(6, 7));

    // unbound constants attach to the first bound operand
    Fp unbound(3);
    CHECK(unbound * Fp(4, 5) == Fp(2, 5));
    CHECK(Fp(0) == Fp(0, 11));
    CHECK(Fp(1) / Fp(3, 7) == Fp(5, 7));

    CHECK_THROWS_AS(Fp(1, 5) + Fp(1, 7), homdec::error);
    CHECK_THROWS_AS(Fp(1, 5) / Fp(0, 5), homdec::error);
}

TEST_CASE("prime field inverses over several moduli") {
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 13ull, 101ull}) {
        for (std::uint64_t v = 1; v < p; ++v) {
            Fp x(static_cast<long long>(v), p);
            CHECK(x * x.inverse() == Fp(1, p));
        }
    }
}
