#include "hhks/hochschild.hpp"

#include "hhks/errors.hpp"

#include <sstream>

namespace hhks {

bool StrandComplex::squares_to_zero() const {
    for (std::size_t i = 0; i + 1 < delta_.size(); ++i)
        if (!(delta_[i + 1] * delta_[i]).is_zero())
            return false;
    return true;
}

StrandComplex build_strand(const GradedAlgebra &a, const DualAlgebra &dual, int r) {
    const auto &g = dual.graded;
    const auto &F = a.field();
    const std::size_t n = a.generators();
    if (r < -static_cast<int>(n))
        throw DegreeUnavailable("internal degree below -n");
    if (static_cast<long>(a.max_degree()) < static_cast<long>(n) + r)
        throw DegreeUnavailable("strand r = " + std::to_string(r) + " needs A through degree " +
                                std::to_string(static_cast<long>(n) + r) + ", built through " +
                                std::to_string(a.max_degree()));

    auto adim = [&](long d) -> std::size_t {
        return d < 0 ? 0 : a.dim(static_cast<std::size_t>(d));
    };

    StrandComplex s;
    s.r_ = r;
    for (std::size_t i = 0; i <= n; ++i)
        s.dims_.push_back(g.dim(i) * adim(static_cast<long>(i) + r));

    for (std::size_t i = 0; i < n; ++i) {
        const long ai = static_cast<long>(i) + r;
        const std::size_t di = g.dim(i), di1 = g.dim(i + 1);
        const std::size_t ma = adim(ai), ma1 = adim(ai + 1);
        Mat delta(F, di1 * ma1, di * ma);
        if (ai >= 0 && di > 0 && ma > 0) {
            const std::size_t da = static_cast<std::size_t>(ai);
            const Mat dl = g.mult_matrix(1, i); // x^j alpha, column j*di + p
            const Mat dr = g.mult_matrix(i, 1); // alpha x^j, column p*n + j
            const Mat al = a.mult_matrix(1, da); // x_j a
            const Mat ar = a.mult_matrix(da, 1); // a x_j
            const bool odd = (i % 2) == 1;
            for (std::size_t p = 0; p < di; ++p)
                for (std::size_t q = 0; q < ma; ++q) {
                    const std::size_t col = p * ma + q;
                    for (std::size_t j = 0; j < n; ++j) {
                        const std::size_t cl = j * di + p, cla = j * ma + q;
                        const std::size_t cr = p * n + j, cra = q * n + j;
                        for (std::size_t u = 0; u < di1; ++u) {
                            const FieldElement &left = dl(u, cl);
                            const FieldElement &right = dr(u, cr);
                            if (left.is_zero() && right.is_zero())
                                continue;
                            for (std::size_t v = 0; v < ma1; ++v) {
                                FieldElement &e = delta(u * ma1 + v, col);
                                if (!left.is_zero() && !al(v, cla).is_zero())
                                    e.add_mul(left, al(v, cla));
                                // -(-1)^i: subtract for even i, add for odd i.
                                if (!right.is_zero() && !ar(v, cra).is_zero()) {
                                    if (odd)
                                        e.add_mul(right, ar(v, cra));
                                    else
                                        e.sub_mul(right, ar(v, cra));
                                }
                            }
                        }
                    }
                }
        }
        s.delta_.push_back(std::move(delta));
    }
    return s;
}

CohomologyTable cohomology_dims(const StrandComplex &s) {
    CohomologyTable t;
    t.r = s.internal_degree();
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < s.differential_count(); ++i)
        ranks.push_back(rank(s.differential(i)));
    for (std::size_t i = 0; i <= s.top(); ++i) {
        std::size_t d = s.dims()[i];
        if (i < ranks.size())
            d -= ranks[i];
        if (i > 0)
            d -= ranks[i - 1];
        t.dims.push_back(d);
        t.euler += (i % 2 == 0 ? 1 : -1) * static_cast<long>(d);
    }
    return t;
}

EulerVerdict euler_check(const CohomologyTable &t, int global_dim) {
    EulerVerdict v;
    for (std::size_t i = 0; i < t.dims.size(); ++i)
        v.alternating_sum += (i % 2 == 0 ? 1 : -1) * static_cast<long>(t.dims[i]);
    v.expected = (t.r + global_dim == 0) ? (global_dim % 2 == 0 ? 1 : -1) : 0;
    v.pass = v.alternating_sum == v.expected;
    return v;
}

std::string to_string(const CohomologyTable &t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.dims.size(); ++i)
        os << (i ? " " : "") << t.dims[i];
    return os.str();
}

} // namespace hhks
