#pragma once

// Families evaluated at a point, their first-order relation perturbations,
// and the map from perturbations to classes in HH^2_0.

#include "hhks/family.hpp"
#include "hhks/hochschild.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hhks {

// Parameter values in the family's declaration order.
using Point = std::vector<std::pair<std::string, FieldElement>>;

Point default_point(const FamilySpec &f);
// Applies "name=value,name=value" overrides; values are coefficient
// expressions over the family's constants. Throws UnboundParameter for names
// that are not parameters.
Point with_overrides(const FamilySpec &f, Point p, std::string_view overrides);
std::string to_string(const Point &p);

// Throws UnboundParameter, PoleAtPoint, ConstraintViolated.
QuadraticAlgebra evaluate_family(const FamilySpec &f, const Point &p);

// Entry m is the relation matrix differentiated along parameter m
// (same shape as the relation matrix).
std::vector<Mat> relation_jacobian(const FamilySpec &f, const Point &p);

// Everything needed at one point: the algebra, its dual and the r = 0 strand.
struct Fibre {
    QuadraticAlgebra algebra;
    GradedAlgebra graded;
    DualAlgebra dual;
    StrandComplex strand;
};

Fibre build_fibre(const QuadraticAlgebra &a, std::size_t d_max = 4);

// Fixed basis of HH^2_0 = ker delta_2 / im delta_1 and a coordinate map.
class ClassBasis {
  public:
    explicit ClassBasis(const StrandComplex &s);

    std::size_t dim() const noexcept { return reps_.rows(); }
    const Mat &representatives() const noexcept { return reps_; }
    const SubspaceBasis &boundaries() const noexcept { return image_; }
    // Coordinates of a cocycle in the representative basis.
    std::vector<FieldElement> coordinates(std::span<const FieldElement> cocycle) const;

  private:
    SubspaceBasis image_;
    Mat reps_;
    Mat combined_t_; // columns: boundary basis then representatives
};

struct KSClass {
    std::vector<FieldElement> lift;     // in K^2_0 coordinates
    std::vector<FieldElement> residual; // delta_2(lift)
    std::vector<FieldElement> coordinates;
};

// `perturbation` has one row per relation. Throws NotACocycle (direction 0)
// when the residual is nonzero.
KSClass ks_class(const Fibre &fibre, const ClassBasis &basis, const Mat &perturbation);

struct KSReport {
    std::string family;
    Point point;
    CohomologyTable hh;
    std::size_t para = 0;
    Mat matrix{CyclotomicField::rationals(), 0, 0}; // dim HH^2_0 x para
    std::size_t rank = 0;
    bool injective = false;
    bool surjective = false;
    std::vector<std::vector<FieldElement>> residuals;
};

// Throws NotACocycle naming the first non-flat parameter direction.
KSReport ks_report(const FamilySpec &f, const Point &p);
KSReport ks_report(const FamilySpec &f, const Point &p, const Fibre &fibre);

// Multiplicatively skew-symmetric 4x4 (or n x n) matrix.
class SkewParams {
  public:
    // Upper-triangle entries q_ij, i < j, in row order.
    SkewParams(const CyclotomicField &field, std::size_t n, std::vector<FieldElement> upper);

    const CyclotomicField &field() const noexcept { return *field_; }
    std::size_t size() const noexcept { return n_; }
    const FieldElement &operator()(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }

    // Relations x_j x_i - q_ij x_i x_j for i < j in row order.
    QuadraticAlgebra algebra() const;
    bool generic() const;

  private:
    const CyclotomicField *field_;
    std::size_t n_;
    std::vector<FieldElement> q_;
};

// Unknowns alpha_{ij}^{lm}: pair index (i<j in row order) major, ordered
// monomial x_l x_m (l <= m, lexicographic) minor.
std::size_t skew_unknown_count(std::size_t n);
// The perturbation x_j x_i = q_ij x_i x_j + eps * a_ij written as a change of
// the relation rows of SkewParams::algebra().
Mat skew_perturbation(const SkewParams &q, std::span<const FieldElement> alpha);

struct SkewOracleResult {
    bool generic = false;
    std::size_t cocycle_dim = 0;   // solutions of the flatness equations
    std::size_t coboundary_dim = 0;
    std::size_t dimension = 0;     // cocycle_dim - coboundary_dim
    Mat flat_basis;                // representatives, one unknown vector per row
    Mat cocycles;
    Mat coboundaries;
};

SkewOracleResult skew_oracle(const SkewParams &q);

} // namespace hhks
