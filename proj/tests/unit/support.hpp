#pragma once

#include "hhks/deformation.hpp"
#include "hhks/errors.hpp"
#include "hhks/family.hpp"

#include <filesystem>
#include <random>
#include <string>

namespace hhks::test {

inline std::filesystem::path data_dir() { return HHKS_TEST_DATA; }
inline std::filesystem::path registry_dir() { return HHKS_TEST_REGISTRY; }

inline const Registry &registry() {
    static const Registry reg = load_registry(registry_dir());
    return reg;
}

inline const FamilySpec &family(const std::string &name) {
    const RegistryEntry *e = registry().find(name);
    if (!e)
        throw Error("no family " + name);
    return e->spec;
}

inline QuadraticAlgebra algebra_at_default(const std::string &name) {
    const FamilySpec &f = family(name);
    return evaluate_family(f, default_point(f));
}

inline FieldElement rational(long num, long den = 1) {
    return CyclotomicField::rationals().from_rational(mpq_class(num, den));
}

inline FieldElement random_element(std::mt19937_64 &rng, const CyclotomicField &F) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    std::vector<mpq_class> c;
    for (std::size_t k = 0; k < F.degree(); ++k)
        c.emplace_back(num(rng), den(rng));
    for (auto &q : c)
        q.canonicalize();
    return FieldElement(F, std::move(c));
}

inline Mat random_matrix(std::mt19937_64 &rng, const CyclotomicField &F, std::size_t rows,
                         std::size_t cols, double zero_fraction = 0.3) {
    std::bernoulli_distribution zero(zero_fraction);
    Mat m(F, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = zero(rng) ? F.zero() : random_element(rng, F);
    return m;
}

} // namespace hhks::test
