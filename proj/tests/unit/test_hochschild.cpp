#include "doctest.h"
#include "support.hpp"

#include "hhks/errors.hpp"
#include "hhks/hochschild.hpp"

using namespace hhks;
using hhks::test::algebra_at_default;

namespace {

CohomologyTable strand_dims(const std::string &name, int r, std::size_t d_max) {
    const QuadraticAlgebra a = algebra_at_default(name);
    const GradedAlgebra g = GradedAlgebra::build(a, d_max);
    const DualAlgebra d = quadratic_dual(a);
    const StrandComplex s = build_strand(g, d, r);
    REQUIRE(s.squares_to_zero());
    return cohomology_dims(s);
}

using Dims = std::vector<std::size_t>;

} // namespace

TEST_CASE("polynomial ring at r = 0") {
    // HH^i_0 of K[x1..x4] is Lambda^i V* (x) Sym^i V.
    const auto t = strand_dims("polynomial", 0, 4);
    CHECK(t.dims == Dims{1, 16, 60, 80, 35});
    CHECK(euler_check(t).pass);
}

TEST_CASE("polynomial ring strand dims are the Koszul complex ranks") {
    const QuadraticAlgebra a = algebra_at_default("polynomial");
    const GradedAlgebra g = GradedAlgebra::build(a, 5);
    const StrandComplex s = build_strand(g, quadratic_dual(a), 1);
    CHECK(s.dims() == Dims{1 * 4, 4 * 10, 6 * 20, 4 * 35, 1 * 56});
}

TEST_CASE("bottom strand is one-dimensional") {
    for (const char *name : {"polynomial", "sklyanin", "kq", "lie1"}) {
        CAPTURE(name);
        const auto t = strand_dims(name, -4, 4);
        CHECK(t.dims == Dims{0, 0, 0, 0, 1});
        CHECK(euler_check(t).expected == 1);
        CHECK(euler_check(t).pass);
    }
}

TEST_CASE("known r = 0 tables") {
    CHECK(strand_dims("kq", 0, 4).dims == Dims{1, 4, 6, 4, 1});
    CHECK(strand_dims("sklyanin", 0, 4).dims == Dims{1, 1, 2, 9, 7});
    CHECK(strand_dims("B", 0, 4).dims == Dims{1, 2, 1, 0, 0});
    CHECK(strand_dims("lie1", 0, 4).dims[3] == 53);
}

TEST_CASE("Euler law on every strand r in -4..1") {
    for (const char *name : {"polynomial", "sklyanin", "kq", "D", "ore_b1", "cext_s2"}) {
        for (int r = -4; r <= 1; ++r) {
            CAPTURE(name);
            CAPTURE(r);
            const auto t = strand_dims(name, r, 5);
            CHECK(euler_check(t).pass);
            CHECK(euler_check(t).expected == (r == -4 ? 1 : 0));
        }
    }
}

TEST_CASE("HH^0_0 is one-dimensional and delta^2 = 0 across the registry") {
    for (const auto &e : hhks::test::registry().entries) {
        CAPTURE(e.spec.name);
        const auto t = strand_dims(e.spec.name, 0, 4);
        CHECK(t.dims.at(0) == 1);
    }
}

TEST_CASE("strands need enough degrees of A") {
    const QuadraticAlgebra a = algebra_at_default("sklyanin");
    const GradedAlgebra g = GradedAlgebra::build(a, 3);
    CHECK_THROWS_AS(build_strand(g, quadratic_dual(a), 2), DegreeUnavailable);
    CHECK_NOTHROW(build_strand(g, quadratic_dual(a), -1));
}
