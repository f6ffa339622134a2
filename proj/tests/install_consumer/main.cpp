#include <hhks/deformation.hpp>

#include <iostream>

int main() {
    using namespace hhks;
    const auto &Q = CyclotomicField::rationals();
    std::vector<FieldElement> q;
    for (long v : {2, 3, 5, 7, 11, 13})
        q.push_back(Q.from_int(v));
    const SkewParams skew(Q, 4, q);
    const Fibre fibre = build_fibre(skew.algebra());
    const CohomologyTable t = cohomology_dims(fibre.strand);
    std::cout << to_string(t) << "\n";
    return t.dims == std::vector<std::size_t>{1, 4, 6, 4, 1} ? 0 : 1;
}
