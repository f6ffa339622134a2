#pragma once

// Quadratic algebras T(V)/<R>: graded components with normal forms,
// multiplication maps, the quadratic dual and checks on the dual.

#include "hhks/linalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hhks {

// Words of length d in n letters are indexed in radix-n with the first letter
// most significant, so index order is lexicographic order on words.
std::size_t word_index(std::span<const std::size_t> letters, std::size_t n);
std::vector<std::size_t> word_letters(std::size_t index, std::size_t length, std::size_t n);
std::size_t ipow(std::size_t base, std::size_t e);

class QuadraticAlgebra {
  public:
    // Each row of `relations` is a vector in V (x) V (n*n coordinates).
    QuadraticAlgebra(std::size_t generators, Mat relations);

    const CyclotomicField &field() const noexcept { return relations_.field(); }
    std::size_t generators() const noexcept { return n_; }
    std::size_t relation_count() const noexcept { return relations_.rows(); }
    const Mat &relations() const noexcept { return relations_; }

    // The row span of the relations, i.e. R.
    SubspaceBasis relation_span() const { return SubspaceBasis::span_of(relations_); }

  private:
    std::size_t n_;
    Mat relations_;
};

// Graded components A_0..A_{d_max} with normal-form projections.
class GradedAlgebra {
  public:
    // Throws RelationDependence when the relations are linearly dependent.
    static GradedAlgebra build(const QuadraticAlgebra &a, std::size_t d_max);

    const CyclotomicField &field() const noexcept { return *field_; }
    std::size_t generators() const noexcept { return n_; }
    std::size_t max_degree() const noexcept { return basis_.size() - 1; }
    std::size_t dim(std::size_t d) const;
    std::vector<std::size_t> dims() const;

    // Basis of A_d as word indices of V^{(x)d}, increasing.
    const std::vector<std::size_t> &basis(std::size_t d) const;
    // dim A_d x n^d: coordinates of the normal form of every word.
    const Mat &projection(std::size_t d) const;
    // Right multiplication A_d (x) V -> A_{d+1}; column a*n + j is basis(d)[a] * x_j.
    const Mat &right_generator_action(std::size_t d) const;

    // A_{d1} (x) A_{d2} -> A_{d1+d2}; column i1 * dim(d2) + i2.
    Mat mult_matrix(std::size_t d1, std::size_t d2) const;

    // Normal-form coordinates of an arbitrary tensor of degree d.
    std::vector<FieldElement> normal_form(std::size_t d, std::span<const FieldElement> tensor) const;

  private:
    void require(std::size_t d) const;

    const CyclotomicField *field_ = nullptr;
    std::size_t n_ = 0;
    std::vector<std::vector<std::size_t>> basis_;
    std::vector<Mat> projection_;
    std::vector<Mat> right_; // right_[d] : A_d (x) V -> A_{d+1}
};

// The quadratic dual T(V*)/<R^perp> under <a (x) b, v (x) w> = a(v) b(w).
struct DualAlgebra {
    QuadraticAlgebra algebra;
    GradedAlgebra graded;
};

DualAlgebra quadratic_dual(const QuadraticAlgebra &a);

// Coefficients of h_A(t) h_{A^!}(-t) in degrees 0..upto.
std::vector<long> koszul_identity_coefficients(const GradedAlgebra &a, const GradedAlgebra &dual,
                                               std::size_t upto);

struct FrobeniusReport {
    std::vector<std::size_t> dims;
    bool dims_ok = false;
    // alpha_i zeta_j = u_ij delta, zeta_i alpha_j = r_ij delta, beta_i beta_j = v_ij delta.
    std::optional<Mat> u, r, v;
    // beta_i alpha_j = sum_k t_ij^k zeta_k as a dim A^!_3 x (6*4) matrix.
    std::optional<Mat> t;
    bool u_invertible = false;
    bool r_invertible = false;
    bool v_invertible = false;
    bool t_full_rank = false;
    bool pass = false;
    std::string diagnostic;
};

FrobeniusReport frobenius_check(const DualAlgebra &d);

// Structure constants of a finite-dimensional graded algebra on its combined
// homogeneous basis: x_i x_j = sum_k c[i][j][k] x_k.
class StructureConstants {
  public:
    explicit StructureConstants(const GradedAlgebra &g);

    std::size_t dim() const noexcept { return dim_; }
    FieldElement &at(std::size_t i, std::size_t j, std::size_t k) {
        return c_[(i * dim_ + j) * dim_ + k];
    }
    const FieldElement &at(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }
    const CyclotomicField &field() const noexcept { return *field_; }

  private:
    const CyclotomicField *field_;
    std::size_t dim_;
    std::vector<FieldElement> c_;
};

struct AssociativityWitness {
    std::size_t i, j, k, n;
};

// First (i, j, k, n) violating sum_l c_ij^l c_lk^n = sum_m c_jk^m c_im^n.
std::optional<AssociativityWitness> associativity_violation(const StructureConstants &c);
bool associativity_check(const DualAlgebra &d);

} // namespace hhks
