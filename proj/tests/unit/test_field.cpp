#include "doctest.h"
#include "support.hpp"

#include "hhks/errors.hpp"
#include "hhks/field.hpp"
#include "hhks/family.hpp"

#include <numeric>
#include <random>

using namespace hhks;
using hhks::test::random_element;

namespace {

const unsigned kConductors[] = {1, 2, 3, 4, 5, 6, 8, 9, 12};

FieldElement reparse(const FieldElement &x) {
    FamilySpec f;
    f.conductor = x.field().conductor();
    return evaluate_constant_expr(f, parse_expression(x.to_string()));
}

} // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
    CHECK(cyclotomic_polynomial(2) == std::vector<long>{1, 1});
    CHECK(cyclotomic_polynomial(3) == std::vector<long>{1, 1, 1});
    CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
    CHECK(cyclotomic_polynomial(9) == std::vector<long>{1, 0, 0, 1, 0, 0, 1});
    CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
    for (unsigned n : kConductors)
        CHECK(cyclotomic_polynomial(n).size() - 1 == euler_phi(n));
}

TEST_CASE("zeta has exact multiplicative order n") {
    for (unsigned n : kConductors) {
        const auto &F = CyclotomicField::get(n);
        CAPTURE(n);
        CHECK(F.zeta().pow(n) == F.one());
        for (unsigned k = 1; k < n; ++k)
            CHECK_FALSE(F.zeta().pow(k).is_one());
    }
}

TEST_CASE("fields are interned per conductor") {
    CHECK(&CyclotomicField::get(9) == &CyclotomicField::get(9));
    CHECK(&CyclotomicField::rationals() == &CyclotomicField::get(1));
}

TEST_CASE("i squared is -1 in conductor 4") {
    const auto &F = CyclotomicField::get(4);
    CHECK(F.zeta() * F.zeta() == -F.one());
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(11);
    for (unsigned n : kConductors) {
        const auto &F = CyclotomicField::get(n);
        CAPTURE(n);
        for (int t = 0; t < 20; ++t) {
            const auto a = random_element(rng, F), b = random_element(rng, F),
                       c = random_element(rng, F);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + b - b == a);
            if (!b.is_zero()) {
                CHECK((a * b) / b == a);
                CHECK(b * b.inverse() == F.one());
                CHECK(b.pow(-3) * b.pow(3) == F.one());
            }
            FieldElement acc = a;
            acc.add_mul(b, c);
            CHECK(acc == a + b * c);
            acc.sub_mul(b, c);
            CHECK(acc == a);
        }
    }
}

TEST_CASE("printing round-trips through the expression parser") {
    std::mt19937_64 rng(5);
    for (unsigned n : kConductors) {
        const auto &F = CyclotomicField::get(n);
        for (int t = 0; t < 10; ++t) {
            const auto a = random_element(rng, F);
            CAPTURE(a.to_string());
            CHECK(reparse(a) == a);
        }
    }
    CHECK(CyclotomicField::get(3).zeta().pow(2).to_string() == "-zeta - 1");
    CHECK(CyclotomicField::rationals().from_rational(mpq_class(-5, 12)).to_string() == "-5/12");
}

TEST_CASE("errors") {
    const auto &Q = CyclotomicField::rationals();
    const auto &K = CyclotomicField::get(4);
    CHECK_THROWS_AS(Q.zero().inverse(), DivisionByZero);
    CHECK_THROWS_AS(Q.one() / Q.zero(), DivisionByZero);
    CHECK_THROWS_AS(Q.one() + K.one(), FieldMismatch);
}

TEST_CASE("dual numbers follow the differentiation rules") {
    const auto &F = CyclotomicField::rationals();
    const auto two = F.from_int(2), three = F.from_int(3);
    const DualNumber x = DualNumber::variable(two, 0, 2);
    const DualNumber y = DualNumber::variable(three, 1, 2);

    const DualNumber cube = x.pow(3);
    CHECK(cube.value() == F.from_int(8));
    CHECK(cube.deriv()[0] == F.from_int(12));
    CHECK(cube.deriv()[1].is_zero());

    const DualNumber q = x / y;
    CHECK(q.value() == F.from_rational(mpq_class(2, 3)));
    CHECK(q.deriv()[0] == F.from_rational(mpq_class(1, 3)));
    CHECK(q.deriv()[1] == F.from_rational(mpq_class(-2, 9)));

    const DualNumber inv = x.pow(-2);
    CHECK(inv.value() == F.from_rational(mpq_class(1, 4)));
    CHECK(inv.deriv()[0] == F.from_rational(mpq_class(-1, 4)));

    const DualNumber prod = x * y - y * x;
    CHECK(prod.is_zero());
    CHECK(DualNumber(two, 2).is_constant());
}

TEST_CASE("dual numbers agree with exact difference quotients on polynomials") {
    // For a quadratic in x the symmetric difference quotient is exact.
    std::mt19937_64 rng(3);
    const auto &F = CyclotomicField::get(5);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_element(rng, F), b = random_element(rng, F),
                   c = random_element(rng, F), x0 = random_element(rng, F);
        auto f = [&](const FieldElement &x) { return a * x * x + b * x + c; };
        const DualNumber x = DualNumber::variable(x0, 0, 1);
        const DualNumber fx = DualNumber(a, 1) * x * x + DualNumber(b, 1) * x + DualNumber(c, 1);
        const auto h = F.one();
        CHECK(fx.value() == f(x0));
        CHECK(fx.deriv()[0] == (f(x0 + h) - f(x0 - h)) / F.from_int(2));
    }
}
