#include "hhks/linalg.hpp"

#include <stdexcept>

namespace hhks {

Mat::Mat(const CyclotomicField &field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

Mat Mat::identity(const CyclotomicField &field, std::size_t n) {
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = field.one();
    return m;
}

std::vector<FieldElement> Mat::column(std::size_t c) const {
    std::vector<FieldElement> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        v.push_back((*this)(r, c));
    return v;
}

bool Mat::is_zero() const noexcept {
    for (const auto &e : a_)
        if (!e.is_zero())
            return false;
    return true;
}

Mat Mat::transpose() const {
    Mat t(*field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Mat Mat::select_columns(std::span<const std::size_t> idx) const {
    Mat s(*field_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < idx.size(); ++j)
            s(r, j) = (*this)(r, idx[j]);
    return s;
}

Mat Mat::vstack(const Mat &other) const {
    if (other.cols_ != cols_ || other.field_ != field_)
        throw std::invalid_argument("vstack: shape or field mismatch");
    Mat s(*field_, rows_ + other.rows_, cols_);
    std::copy(a_.begin(), a_.end(), s.a_.begin());
    std::copy(other.a_.begin(), other.a_.end(), s.a_.begin() + a_.size());
    return s;
}

Mat Mat::hstack(const Mat &other) const {
    if (other.rows_ != rows_ || other.field_ != field_)
        throw std::invalid_argument("hstack: shape or field mismatch");
    Mat s(*field_, rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            s(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < other.cols_; ++c)
            s(r, cols_ + c) = other(r, c);
    }
    return s;
}

std::vector<FieldElement> Mat::apply(std::span<const FieldElement> v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("apply: dimension mismatch");
    std::vector<FieldElement> out(rows_, field_->zero());
    for (std::size_t c = 0; c < cols_; ++c) {
        if (v[c].is_zero())
            continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const FieldElement &e = (*this)(r, c);
            if (!e.is_zero())
                out[r].add_mul(e, v[c]);
        }
    }
    return out;
}

Mat operator*(const Mat &a, const Mat &b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product: dimension mismatch");
    Mat p(*a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const FieldElement &aik = a(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const FieldElement &bkj = b(k, j);
                if (!bkj.is_zero())
                    p(i, j).add_mul(aik, bkj);
            }
        }
    return p;
}

bool operator==(const Mat &a, const Mat &b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

RrefResult rref(Mat m) {
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t c = 0; c < cols && lead_row < rows; ++c) {
        std::size_t piv = lead_row;
        while (piv < rows && m(piv, c).is_zero())
            ++piv;
        if (piv == rows)
            continue;
        if (piv != lead_row)
            for (std::size_t k = c; k < cols; ++k)
                std::swap(m(piv, k), m(lead_row, k));
        const FieldElement inv = m(lead_row, c).inverse();
        for (std::size_t k = c; k < cols; ++k)
            if (!m(lead_row, k).is_zero())
                m(lead_row, k) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead_row || m(r, c).is_zero())
                continue;
            const FieldElement f = m(r, c);
            for (std::size_t k = c; k < cols; ++k) {
                const FieldElement &src = m(lead_row, k);
                if (!src.is_zero())
                    m(r, k).sub_mul(f, src);
            }
        }
        pivots.push_back(c);
        ++lead_row;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Mat &m) { return rref(m).pivots.size(); }

SubspaceBasis::SubspaceBasis(const CyclotomicField &field, std::size_t ambient)
    : basis_(field, 0, ambient) {}

SubspaceBasis SubspaceBasis::span_of(const Mat &generators) {
    auto [r, piv] = rref(generators);
    Mat basis(r.field(), piv.size(), r.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t c = 0; c < r.cols(); ++c)
            basis(i, c) = r(i, c);
    return SubspaceBasis(std::move(basis), std::move(piv));
}

bool SubspaceBasis::contains(std::span<const FieldElement> v) const {
    if (v.size() != ambient_dim())
        throw std::invalid_argument("contains: dimension mismatch");
    std::vector<FieldElement> w(v.begin(), v.end());
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const FieldElement f = w[pivots_[i]];
        if (f.is_zero())
            continue;
        for (std::size_t c = 0; c < w.size(); ++c)
            if (!basis_(i, c).is_zero())
                w[c].sub_mul(f, basis_(i, c));
    }
    for (const auto &e : w)
        if (!e.is_zero())
            return false;
    return true;
}

SubspaceBasis kernel_basis(const Mat &m) {
    auto [r, piv] = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : piv)
        is_pivot[p] = true;
    Mat gens(m.field(), cols - piv.size(), cols);
    std::size_t g = 0;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        gens(g, free) = m.field().one();
        for (std::size_t i = 0; i < piv.size(); ++i)
            gens(g, piv[i]) = -r(i, free);
        ++g;
    }
    return SubspaceBasis::span_of(gens);
}

QuotientBasis quotient_basis(std::size_t ambient_dim, const SubspaceBasis &sub) {
    if (sub.ambient_dim() != ambient_dim)
        throw std::invalid_argument("quotient_basis: ambient dimension mismatch");
    const auto &field = sub.basis().field();
    std::vector<long> slot(ambient_dim, -1);
    for (auto p : sub.pivots())
        slot[p] = -2;
    QuotientBasis q{{}, Mat(field, ambient_dim - sub.dim(), ambient_dim)};
    for (std::size_t c = 0; c < ambient_dim; ++c)
        if (slot[c] == -1) {
            slot[c] = static_cast<long>(q.complement.size());
            q.complement.push_back(c);
        }
    for (std::size_t j = 0; j < q.complement.size(); ++j)
        q.projection(j, q.complement[j]) = field.one();
    // A pivot coordinate p_i rewrites as minus the rest of basis row i.
    for (std::size_t i = 0; i < sub.dim(); ++i) {
        const std::size_t p = sub.pivots()[i];
        for (std::size_t c = p + 1; c < ambient_dim; ++c) {
            const FieldElement &e = sub.basis()(i, c);
            if (slot[c] >= 0 && !e.is_zero())
                q.projection(static_cast<std::size_t>(slot[c]), p) = -e;
        }
    }
    return q;
}

bool solve(const Mat &m, std::span<const FieldElement> b, std::vector<FieldElement> &x) {
    if (b.size() != m.rows())
        throw std::invalid_argument("solve: dimension mismatch");
    Mat aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    auto [red, piv] = rref(std::move(aug));
    if (!piv.empty() && piv.back() == m.cols())
        return false;
    x.assign(m.cols(), m.field().zero());
    for (std::size_t i = 0; i < piv.size(); ++i)
        x[piv[i]] = red(i, m.cols());
    return true;
}

} // namespace hhks
