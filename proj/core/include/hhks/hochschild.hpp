#pragma once

// Internal-degree strands of the Koszul model of the Hochschild cochain
// complex: K^i_r = A^!_i (x) A_{i+r} with
//   delta_i(a (x) b) = sum_j (x^j a) (x) (x_j b) - (-1)^i (a x^j) (x) (b x_j).

#include "hhks/quadratic.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hhks {

class StrandComplex {
  public:
    int internal_degree() const noexcept { return r_; }
    std::size_t top() const noexcept { return dims_.size() - 1; }
    // dim K^i_r for i = 0..n.
    const std::vector<std::size_t> &dims() const noexcept { return dims_; }
    // delta_i : K^i_r -> K^{i+1}_r for i = 0..n-1. Coordinates on K^i_r are
    // (dual index, algebra index) row-major with the dual index outer.
    const Mat &differential(std::size_t i) const { return delta_.at(i); }
    std::size_t differential_count() const noexcept { return delta_.size(); }

    // True iff delta_{i+1} delta_i = 0 for every i.
    bool squares_to_zero() const;

  private:
    friend StrandComplex build_strand(const GradedAlgebra &, const DualAlgebra &, int);
    int r_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<Mat> delta_;
};

// Needs A through degree n + r. Throws DegreeUnavailable otherwise.
StrandComplex build_strand(const GradedAlgebra &a, const DualAlgebra &dual, int r);

struct CohomologyTable {
    int r = 0;
    std::vector<std::size_t> dims; // HH^i_r, i = 0..n
    long euler = 0;
};

CohomologyTable cohomology_dims(const StrandComplex &s);

struct EulerVerdict {
    long alternating_sum = 0;
    long expected = 0;
    bool pass = false;
};

// Sum (-1)^i dim HH^i_r equals (-1)^d when r + d = 0 and 0 otherwise.
EulerVerdict euler_check(const CohomologyTable &t, int global_dim = 4);

std::string to_string(const CohomologyTable &t);

} // namespace hhks
