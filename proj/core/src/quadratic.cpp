#include "hhks/quadratic.hpp"

#include "hhks/errors.hpp"

#include <stdexcept>

namespace hhks {

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0)
        r *= base;
    return r;
}

std::size_t word_index(std::span<const std::size_t> letters, std::size_t n) {
    std::size_t idx = 0;
    for (auto l : letters)
        idx = idx * n + l;
    return idx;
}

std::vector<std::size_t> word_letters(std::size_t index, std::size_t length, std::size_t n) {
    std::vector<std::size_t> w(length);
    for (std::size_t k = length; k-- > 0;) {
        w[k] = index % n;
        index /= n;
    }
    return w;
}

QuadraticAlgebra::QuadraticAlgebra(std::size_t generators, Mat relations)
    : n_(generators), relations_(std::move(relations)) {
    if (relations_.cols() != n_ * n_)
        throw std::invalid_argument("relation vectors must live in V (x) V");
}

void GradedAlgebra::require(std::size_t d) const {
    if (d >= basis_.size())
        throw DegreeUnavailable("degree " + std::to_string(d) +
                                " not built (d_max = " + std::to_string(max_degree()) + ")");
}

std::size_t GradedAlgebra::dim(std::size_t d) const {
    require(d);
    return basis_[d].size();
}

std::vector<std::size_t> GradedAlgebra::dims() const {
    std::vector<std::size_t> out;
    for (const auto &b : basis_)
        out.push_back(b.size());
    return out;
}

const std::vector<std::size_t> &GradedAlgebra::basis(std::size_t d) const {
    require(d);
    return basis_[d];
}

const Mat &GradedAlgebra::projection(std::size_t d) const {
    require(d);
    return projection_[d];
}

const Mat &GradedAlgebra::right_generator_action(std::size_t d) const {
    require(d + 1);
    return right_[d];
}

// A_d = (A_{d-1} (x) V) / image(A_{d-2} (x) R). Lexicographic order on words is
// compatible with concatenation, so pivots of this reduced system coincide with
// the pivots of the full U_d inside V^{(x)d}.
GradedAlgebra GradedAlgebra::build(const QuadraticAlgebra &a, std::size_t d_max) {
    const auto &F = a.field();
    const std::size_t n = a.generators();
    GradedAlgebra g;
    g.field_ = &F;
    g.n_ = n;

    g.basis_.push_back({0});
    g.projection_.push_back(Mat::identity(F, 1));
    if (d_max >= 1) {
        std::vector<std::size_t> b(n);
        for (std::size_t i = 0; i < n; ++i)
            b[i] = i;
        g.basis_.push_back(std::move(b));
        g.projection_.push_back(Mat::identity(F, n));
        g.right_.push_back(Mat::identity(F, n));
    }

    const Mat &rel = a.relations();
    for (std::size_t d = 2; d <= d_max; ++d) {
        const auto &prev = g.basis_[d - 1];
        const std::size_t s_dim = prev.size() * n;
        const auto &pp = g.projection_[d - 1];
        const auto &b2 = g.basis_[d - 2];

        Mat gens(F, b2.size() * rel.rows(), s_dim);
        std::size_t row = 0;
        for (std::size_t wb : b2) {
            for (std::size_t k = 0; k < rel.rows(); ++k, ++row) {
                for (std::size_t x = 0; x < n; ++x)
                    for (std::size_t y = 0; y < n; ++y) {
                        const FieldElement &c = rel(k, x * n + y);
                        if (c.is_zero())
                            continue;
                        const std::size_t col = wb * n + x;
                        for (std::size_t t = 0; t < prev.size(); ++t) {
                            const FieldElement &lam = pp(t, col);
                            if (!lam.is_zero())
                                gens(row, t * n + y).add_mul(c, lam);
                        }
                    }
            }
        }
        SubspaceBasis sub = SubspaceBasis::span_of(gens);
        if (d == 2 && sub.dim() != rel.rows())
            throw RelationDependence("relations span a space of dimension " +
                                     std::to_string(sub.dim()) + ", expected " +
                                     std::to_string(rel.rows()));
        QuotientBasis q = quotient_basis(s_dim, sub);

        std::vector<std::size_t> basis;
        for (auto s : q.complement)
            basis.push_back(prev[s / n] * n + s % n);

        const std::size_t words = ipow(n, d);
        Mat proj(F, basis.size(), words);
        for (std::size_t w = 0; w < words; ++w) {
            const std::size_t u = w / n, j = w % n;
            for (std::size_t t = 0; t < prev.size(); ++t) {
                const FieldElement &lam = pp(t, u);
                if (lam.is_zero())
                    continue;
                const std::size_t s = t * n + j;
                for (std::size_t r = 0; r < basis.size(); ++r) {
                    const FieldElement &e = q.projection(r, s);
                    if (!e.is_zero())
                        proj(r, w).add_mul(lam, e);
                }
            }
        }
        g.basis_.push_back(std::move(basis));
        g.projection_.push_back(std::move(proj));
        g.right_.push_back(std::move(q.projection));
    }
    return g;
}

Mat GradedAlgebra::mult_matrix(std::size_t d1, std::size_t d2) const {
    require(d1 + d2);
    const auto &F = *field_;
    const std::size_t m1 = dim(d1), m2 = dim(d2), m = dim(d1 + d2);
    Mat out(F, m, m1 * m2);
    for (std::size_t i2 = 0; i2 < m2; ++i2) {
        const auto letters = word_letters(basis_[d2][i2], d2, n_);
        for (std::size_t i1 = 0; i1 < m1; ++i1) {
            std::vector<FieldElement> x(m1, F.zero());
            x[i1] = F.one();
            std::size_t deg = d1;
            for (auto j : letters) {
                const Mat &q = right_[deg];
                std::vector<FieldElement> y(q.rows(), F.zero());
                for (std::size_t a = 0; a < x.size(); ++a) {
                    if (x[a].is_zero())
                        continue;
                    const std::size_t col = a * n_ + j;
                    for (std::size_t r = 0; r < q.rows(); ++r)
                        if (!q(r, col).is_zero())
                            y[r].add_mul(x[a], q(r, col));
                }
                x = std::move(y);
                ++deg;
            }
            for (std::size_t r = 0; r < m; ++r)
                out(r, i1 * m2 + i2) = x[r];
        }
    }
    return out;
}

std::vector<FieldElement> GradedAlgebra::normal_form(std::size_t d,
                                                     std::span<const FieldElement> tensor) const {
    return projection(d).apply(tensor);
}

DualAlgebra quadratic_dual(const QuadraticAlgebra &a) {
    const std::size_t n = a.generators();
    // Validates independence of R before forming the complement.
    if (a.relation_span().dim() != a.relation_count())
        throw RelationDependence("relations are linearly dependent");
    SubspaceBasis perp = kernel_basis(a.relations());
    QuadraticAlgebra dual(n, perp.basis());
    GradedAlgebra g = GradedAlgebra::build(dual, n + 1);
    return DualAlgebra{std::move(dual), std::move(g)};
}

std::vector<long> koszul_identity_coefficients(const GradedAlgebra &a, const GradedAlgebra &dual,
                                               std::size_t upto) {
    std::vector<long> out(upto + 1, 0);
    for (std::size_t k = 0; k <= upto; ++k) {
        long s = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            const long hd = i <= dual.max_degree() ? static_cast<long>(dual.dim(i)) : 0;
            const long sign = (i % 2 == 0) ? 1 : -1;
            s += sign * hd * static_cast<long>(a.dim(k - i));
        }
        out[k] = s;
    }
    return out;
}

FrobeniusReport frobenius_check(const DualAlgebra &d) {
    FrobeniusReport rep;
    const auto &g = d.graded;
    const auto &F = g.field();
    rep.dims = g.dims();
    const std::vector<std::size_t> want{1, 4, 6, 4, 1, 0};
    rep.dims_ok = g.generators() == 4 && rep.dims.size() >= 5;
    for (std::size_t i = 0; rep.dims_ok && i < rep.dims.size() && i < want.size(); ++i)
        rep.dims_ok = rep.dims[i] == want[i];
    if (!rep.dims_ok) {
        rep.diagnostic = "dual Hilbert series is not (1,4,6,4,1)";
        return rep;
    }
    auto pairing = [&](std::size_t d1, std::size_t d2) {
        Mat m = g.mult_matrix(d1, d2);
        const std::size_t a = g.dim(d1), b = g.dim(d2);
        Mat p(F, a, b);
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < b; ++j)
                p(i, j) = m(0, i * b + j);
        return p;
    };
    rep.u = pairing(1, 3);
    rep.r = pairing(3, 1);
    rep.v = pairing(2, 2);
    rep.t = g.mult_matrix(2, 1);
    rep.u_invertible = rank(*rep.u) == 4;
    rep.r_invertible = rank(*rep.r) == 4;
    rep.v_invertible = rank(*rep.v) == 6;
    rep.t_full_rank = rank(*rep.t) == 4;
    rep.pass = rep.u_invertible && rep.r_invertible && rep.v_invertible;
    if (!rep.pass)
        rep.diagnostic = "degenerate top-degree pairing";
    return rep;
}

StructureConstants::StructureConstants(const GradedAlgebra &g) : field_(&g.field()), dim_(0) {
    std::vector<std::size_t> offset;
    for (std::size_t d = 0; d <= g.max_degree(); ++d) {
        offset.push_back(dim_);
        dim_ += g.dim(d);
    }
    c_.assign(dim_ * dim_ * dim_, field_->zero());
    for (std::size_t d1 = 0; d1 <= g.max_degree(); ++d1)
        for (std::size_t d2 = 0; d1 + d2 <= g.max_degree(); ++d2) {
            const Mat m = g.mult_matrix(d1, d2);
            const std::size_t m2 = g.dim(d2);
            for (std::size_t i = 0; i < g.dim(d1); ++i)
                for (std::size_t j = 0; j < m2; ++j)
                    for (std::size_t k = 0; k < m.rows(); ++k)
                        at(offset[d1] + i, offset[d2] + j, offset[d1 + d2] + k) = m(k, i * m2 + j);
        }
}

std::optional<AssociativityWitness> associativity_violation(const StructureConstants &c) {
    const std::size_t D = c.dim();
    const auto &F = c.field();
    for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
            for (std::size_t k = 0; k < D; ++k)
                for (std::size_t n = 0; n < D; ++n) {
                    FieldElement lhs = F.zero(), rhs = F.zero();
                    for (std::size_t l = 0; l < D; ++l) {
                        if (!c.at(i, j, l).is_zero() && !c.at(l, k, n).is_zero())
                            lhs.add_mul(c.at(i, j, l), c.at(l, k, n));
                        if (!c.at(j, k, l).is_zero() && !c.at(i, l, n).is_zero())
                            rhs.add_mul(c.at(j, k, l), c.at(i, l, n));
                    }
                    if (lhs != rhs)
                        return AssociativityWitness{i, j, k, n};
                }
    return std::nullopt;
}

bool associativity_check(const DualAlgebra &d) {
    return !associativity_violation(StructureConstants(d.graded)).has_value();
}

} // namespace hhks
