#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ratmaps/motive.hpp"
#include "ratmaps/strata.hpp"

using namespace ratmaps;

namespace {
MotiveClass L(unsigned k) { return MotiveClass::lefschetz(k); }
}  // namespace

TEST_CASE("ring arithmetic in Z[L]") {
    MotiveClass a = L(2) - MotiveClass(3);
    MotiveClass b = L(1) + MotiveClass(1);
    CHECK((a * b).coeff(3) == 1);
    CHECK((a * b).coeff(2) == 1);
    CHECK((a * b).coeff(1) == -3);
    CHECK((a * b).coeff(0) == -3);
    CHECK((a - a).is_zero());
    CHECK(MotiveClass(0).is_zero());
    CHECK((L(1) - MotiveClass(2)).str() == "L - 2");
    CHECK(class_poly(2, 3, 1).str() == "L^3 - L^2");
    CHECK(projective_space(2).str() == "L^2 + L + 1");
}

TEST_CASE("specialization is evaluation") {
    CHECK(specialize(L(3) - L(2), 3) == 18);
    CHECK(specialize(MotiveClass(1), 97) == 1);
    CHECK(specialize((L(1) - MotiveClass(2)) * (L(1) - MotiveClass(3)) * (L(1) - MotiveClass(4)),
                     5) == 6);
    // Values beyond 64 bits stay exact.
    const BigInt q = BigInt(1) << 20;
    BigInt expected = 1;
    for (int i = 0; i < 150; ++i) expected *= q;
    CHECK(specialize(L(150), q) == expected);
}

TEST_CASE("class_poly piecewise closed form") {
    CHECK(class_poly(2, 3, 1) == L(3) - L(2));
    CHECK(class_poly(3, 2, 5) == L(10));           // n > d
    CHECK(class_poly(2, 2, 2) == L(4) - L(1));     // n = d
    CHECK(class_poly(1, 1, 1).is_zero());          // L - L
    CHECK(class_poly(1, 0, 3) == MotiveClass(1));  // degree zero
    CHECK_THROWS_AS(class_poly(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(class_poly(1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(class_poly(1, -1, 1), std::invalid_argument);
}

TEST_CASE("recursion examples") {
    CHECK(class_poly_recursive(1, 1, 1).is_zero());
    CHECK(class_poly_recursive(2, 4, 1) == L(4) - L(3));
    CHECK(class_poly_recursive(2, 3, 2) == L(6) - L(3));
}

TEST_CASE("recursion agrees with the closed form everywhere") {
    for (int d = 1; d <= 30; ++d)
        for (int n = 1; n <= d; ++n)
            for (int m = 1; m <= 5; ++m) {
                CAPTURE(n);
                CAPTURE(d);
                CAPTURE(m);
                CHECK(class_poly_recursive(n, d, m) == class_poly(n, d, m));
            }
}

TEST_CASE("class_rat") {
    CHECK(class_rat(1, 2) == L(3) - L(1));
    CHECK(class_rat(1, 1) == L(2) - L(1));
    for (int d = 1; d <= 10; ++d)
        for (int n = 1; n <= 10; ++n)
            CHECK(class_rat(d, n) == class_poly(n + 1, d * (n + 1), 1));
    CHECK_THROWS_AS(class_rat(0, 1), std::invalid_argument);
}

TEST_CASE("class_pconf") {
    CHECK(class_pconf(L(1), 0) == MotiveClass(1));
    MotiveClass c = class_pconf(L(1) - MotiveClass(2), 3);
    CHECK(c == (L(1) - MotiveClass(2)) * (L(1) - MotiveClass(3)) * (L(1) - MotiveClass(4)));
    FieldCtx f5 = make_field(5, 1);
    CHECK(BigInt(count_pconf_bruteforce(3, {0, 1}, *f5)) == specialize(c, 5));
    CHECK_THROWS_AS(class_pconf(L(1), -1), std::invalid_argument);
}

TEST_CASE("class_m0m_star and class_m0m") {
    CHECK(class_m0m_star(3, 1, 1) == L(2) - L(1));  // empty configuration factor
    CHECK(class_m0m_star(4, 1, 1) == (L(1) - MotiveClass(2)) * (L(2) - L(1)));
    CHECK(class_m0m(3, 1, 1) == (L(2) - L(1)) * (L(1) + MotiveClass(1)));
    CHECK(specialize(class_m0m(3, 1, 1), 2) == 6);
    CHECK_THROWS_AS(class_m0m_star(2, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(class_m0m(3, 0, 1), std::invalid_argument);

    // Product structure against the enumerated factors at q = 5.
    FieldCtx f5 = make_field(5, 1);
    const BigInt conf = count_pconf_bruteforce(1, {0, 1}, *f5);
    const BigInt rat = count_poly_bruteforce(1, 1, 2, *f5);
    CHECK(conf == 3);
    CHECK(rat == 20);
    CHECK(specialize(class_m0m_star(4, 1, 1), 5) == conf * rat);
}

TEST_CASE("class_r_stratum") {
    CHECK(class_r_stratum(2, 2, 1, 1) == L(1));
    CHECK(class_r_stratum(2, 2, 1, 0) == L(2));
    CHECK(class_r_stratum(2, 5, 1, 2) == L(3));
    CHECK(class_r_stratum(2, 5, 1, 3).is_zero());
    // Telescoping: k = 0 recovers the ambient affine space for many shapes.
    for (int n = 1; n <= 4; ++n)
        for (int d = 0; d <= 9; ++d)
            for (int m = 1; m <= 3; ++m)
                CHECK(class_r_stratum(n, d, m, 0) ==
                      MotiveClass::lefschetz(static_cast<unsigned>(d * m)));
}

TEST_CASE("count agreement on small grids") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
        FieldCtx ctx = q == 4 ? make_field(2, 2) : make_field(q, 1);
        for (int m = 1; m <= 2; ++m)
            for (int d = 1; d <= (m == 1 ? 6 : 3); ++d)
                for (int n = 1; n <= d + 1; ++n) {
                    CAPTURE(q);
                    CAPTURE(d);
                    CAPTURE(n);
                    CAPTURE(m);
                    CHECK(BigInt(count_poly_bruteforce(d, n, m, *ctx, {1 << 22, 1})) ==
                          specialize(class_poly(n, d, m), q));
                    for (int k = 0; k <= d / n + 1; ++k)
                        CHECK(BigInt(count_stratum_bruteforce({d, n, m, k}, *ctx,
                                                              {1 << 22, 1})) ==
                              specialize(class_r_stratum(n, d, m, k), q));
                }
    }
}
