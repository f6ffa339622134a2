#include "hhks/deformation.hpp"

#include "hhks/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hhks {

namespace {

std::size_t param_index(const FamilySpec &f, const std::string &name) {
    for (std::size_t m = 0; m < f.params.size(); ++m)
        if (f.params[m].name == name)
            return m;
    throw UnboundParameter("'" + name + "' is not a parameter of " + f.name);
}

struct Evaluated {
    Mat relations;
    std::vector<Mat> jacobian;
};

Evaluated evaluate(const FamilySpec &f, const Point &p, bool with_derivatives) {
    const std::size_t P = f.params.size();
    std::vector<const FieldElement *> values(P, nullptr);
    for (const auto &[name, v] : p)
        values[param_index(f, name)] = &v;
    for (std::size_t m = 0; m < P; ++m)
        if (!values[m])
            throw UnboundParameter("no value for parameter '" + f.params[m].name + "'");

    const std::size_t slots = with_derivatives ? P : 0;
    Scope s = constant_scope(f, slots);
    const auto &F = s.field();
    for (std::size_t m = 0; m < P; ++m) {
        if (&values[m]->field() != &F)
            throw FieldMismatch(values[m]->field().conductor(), F.conductor());
        s.bind(f.params[m].name, with_derivatives ? DualNumber::variable(*values[m], m, P)
                                                  : DualNumber(*values[m], 0));
    }
    for (const auto &l : f.lets)
        s.bind(l.name, evaluate_scalar(l.value, s));
    for (const auto &c : f.constraints)
        if (!evaluate_scalar(c, s).value().is_zero())
            throw ConstraintViolated("constraint '" + print_expression(c) + "' fails at " +
                                     to_string(p));
    const std::size_t n = f.generators.size();
    for (std::size_t g = 0; g < n; ++g)
        s.bind_generator(f.generators[g], g);

    Evaluated out{Mat(F, f.relations.size(), n * n), {}};
    if (with_derivatives)
        out.jacobian.assign(P, Mat(F, f.relations.size(), n * n));
    for (std::size_t k = 0; k < f.relations.size(); ++k) {
        for (const auto &[w, c] : evaluate_polynomial(f.relations[k], s)) {
            if (w.size() != 2)
                throw NonQuadraticTerm("relation has a term of degree " + std::to_string(w.size()),
                                       f.relations[k].line, f.relations[k].col);
            const std::size_t col = w[0] * n + w[1];
            out.relations(k, col) = c.value();
            for (std::size_t m = 0; m < slots; ++m)
                out.jacobian[m](k, col) = c.deriv()[m];
        }
    }
    return out;
}

} // namespace

Point default_point(const FamilySpec &f) {
    Point p;
    for (const auto &b : f.params)
        p.emplace_back(b.name, evaluate_constant_expr(f, b.value));
    return p;
}

Point with_overrides(const FamilySpec &f, Point p, std::string_view overrides) {
    std::stringstream ss{std::string(overrides)};
    for (std::string item; std::getline(ss, item, ',');) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw UnboundParameter("expected name=value, got '" + item + "'");
        std::string name = item.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
        const std::size_t m = param_index(f, name);
        FieldElement v = evaluate_constant_expr(f, parse_expression(item.substr(eq + 1)));
        auto it = std::find_if(p.begin(), p.end(), [&](const auto &kv) { return kv.first == name; });
        if (it == p.end())
            p.emplace_back(f.params[m].name, std::move(v));
        else
            it->second = std::move(v);
    }
    return p;
}

std::string to_string(const Point &p) {
    std::string out;
    for (const auto &[name, v] : p) {
        if (!out.empty())
            out += ',';
        out += name + "=" + v.to_string();
    }
    return out;
}

QuadraticAlgebra evaluate_family(const FamilySpec &f, const Point &p) {
    return QuadraticAlgebra(f.generators.size(), evaluate(f, p, false).relations);
}

std::vector<Mat> relation_jacobian(const FamilySpec &f, const Point &p) {
    return evaluate(f, p, true).jacobian;
}

Fibre build_fibre(const QuadraticAlgebra &a, std::size_t d_max) {
    GradedAlgebra g = GradedAlgebra::build(a, d_max);
    DualAlgebra dual = quadratic_dual(a);
    StrandComplex s = build_strand(g, dual, 0);
    return Fibre{a, std::move(g), std::move(dual), std::move(s)};
}

ClassBasis::ClassBasis(const StrandComplex &s)
    : image_(SubspaceBasis::span_of(s.differential(1).transpose())),
      reps_(s.differential(1).field(), 0, s.dims()[2]),
      combined_t_(s.differential(1).field(), 0, 0) {
    const SubspaceBasis cycles = kernel_basis(s.differential(2));
    Mat current = image_.basis();
    std::size_t have = image_.dim();
    for (std::size_t r = 0; r < cycles.dim(); ++r) {
        Mat v(cycles.basis().field(), 1, cycles.ambient_dim());
        for (std::size_t c = 0; c < v.cols(); ++c)
            v(0, c) = cycles.basis()(r, c);
        Mat trial = current.vstack(v);
        if (rank(trial) > have) {
            current = std::move(trial);
            reps_ = reps_.vstack(v);
            ++have;
        }
    }
    combined_t_ = current.transpose();
}

std::vector<FieldElement> ClassBasis::coordinates(std::span<const FieldElement> cocycle) const {
    std::vector<FieldElement> x;
    if (!solve(combined_t_, cocycle, x))
        throw NotACocycle("vector is not a cocycle of the strand", 0);
    return {x.begin() + static_cast<std::ptrdiff_t>(image_.dim()), x.end()};
}

KSClass ks_class(const Fibre &fibre, const ClassBasis &basis, const Mat &perturbation) {
    const auto &a = fibre.graded;
    const auto &d = fibre.dual.graded;
    const auto &F = a.field();
    const Mat &rel = fibre.algebra.relations();
    const std::size_t k = rel.rows();
    if (perturbation.rows() != k || perturbation.cols() != rel.cols())
        throw std::invalid_argument("perturbation shape does not match the relations");
    const std::size_t d2 = d.dim(2), a2 = a.dim(2);

    KSClass out;
    out.lift.assign(d2 * a2, F.zero());
    for (std::size_t r = 0; r < k; ++r) {
        std::vector<FieldElement> target(k, F.zero()), phi;
        target[r] = F.one();
        if (!solve(rel, target, phi))
            throw RelationDependence("relations are linearly dependent");
        const auto u = d.normal_form(2, phi);
        const auto v = a.normal_form(2, perturbation.row(r));
        for (std::size_t p = 0; p < d2; ++p) {
            if (u[p].is_zero())
                continue;
            for (std::size_t q = 0; q < a2; ++q)
                if (!v[q].is_zero())
                    out.lift[p * a2 + q].add_mul(u[p], v[q]);
        }
    }
    out.residual = fibre.strand.differential(2).apply(out.lift);
    if (std::any_of(out.residual.begin(), out.residual.end(),
                    [](const FieldElement &e) { return !e.is_zero(); }))
        throw NotACocycle("perturbation is not a Hochschild 2-cocycle", 0);
    out.coordinates = basis.coordinates(out.lift);
    return out;
}

KSReport ks_report(const FamilySpec &f, const Point &p) {
    return ks_report(f, p, build_fibre(evaluate_family(f, p)));
}

KSReport ks_report(const FamilySpec &f, const Point &p, const Fibre &fibre) {
    const auto &F = fibre.algebra.field();
    KSReport rep;
    rep.family = f.name;
    rep.point = p;
    rep.hh = cohomology_dims(fibre.strand);
    rep.para = f.params.size();
    const ClassBasis basis(fibre.strand);
    rep.matrix = Mat(F, basis.dim(), rep.para);
    const auto jac = relation_jacobian(f, p);
    for (std::size_t m = 0; m < rep.para; ++m) {
        KSClass c = [&] {
            try {
                return ks_class(fibre, basis, jac[m]);
            } catch (const NotACocycle &) {
                throw NotACocycle("direction '" + f.params[m].name + "' of " + f.name +
                                      " is not flat at " + to_string(p),
                                  m);
            }
        }();
        for (std::size_t r = 0; r < basis.dim(); ++r)
            rep.matrix(r, m) = c.coordinates[r];
        rep.residuals.push_back(std::move(c.residual));
    }
    rep.rank = rank(rep.matrix);
    rep.injective = rep.rank == rep.para;
    rep.surjective = rep.rank == rep.hh.dims.at(2);
    return rep;
}

SkewParams::SkewParams(const CyclotomicField &field, std::size_t n, std::vector<FieldElement> upper)
    : field_(&field), n_(n), q_(n * n, field.one()) {
    if (upper.size() != n * (n - 1) / 2)
        throw std::invalid_argument("expected n(n-1)/2 skew entries");
    std::size_t t = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++t) {
            if (upper[t].is_zero())
                throw DivisionByZero("skew parameters must be nonzero");
            q_[i * n + j] = upper[t];
            q_[j * n + i] = upper[t].inverse();
        }
}

QuadraticAlgebra SkewParams::algebra() const {
    Mat rel(*field_, n_ * (n_ - 1) / 2, n_ * n_);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j, ++row) {
            rel(row, j * n_ + i) = field_->one();
            rel(row, i * n_ + j) = -(*this)(i, j);
        }
    return QuadraticAlgebra(n_, std::move(rel));
}

bool SkewParams::generic() const {
    const auto &q = *this;
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k)
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t l = i; l < n_; ++l) {
                    if (i == j || i == k || l == j || l == k)
                        continue;
                    if (q(i, j) * q(i, k) == q(i, l))
                        return false;
                }
    for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t l = 0; l < n_; ++l) {
            if (l == k)
                continue;
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i + 1; j < n_; ++j) {
                    if (i == k || j == k)
                        continue;
                    if (q(i, l) == q(i, k) && q(j, l) == q(j, k) && q(k, l).is_one())
                        return false;
                }
        }
    return true;
}

namespace {

// Ordered monomial indices: x_l x_m with l <= m in lexicographic order.
std::vector<std::pair<std::size_t, std::size_t>> ordered_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = l; m < n; ++m)
            out.emplace_back(l, m);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> relation_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.emplace_back(i, j);
    return out;
}

// Sorts a word into nondecreasing order inside K_Q, returning the scalar.
FieldElement reorder(const SkewParams &q, std::vector<std::size_t> &w) {
    FieldElement c = q.field().one();
    for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t r = p + 1; r < w.size(); ++r)
            if (w[p] > w[r])
                c = c * q(w[r], w[p]);
    std::sort(w.begin(), w.end());
    return c;
}

} // namespace

std::size_t skew_unknown_count(std::size_t n) { return n * (n - 1) / 2 * (n * (n + 1) / 2); }

Mat skew_perturbation(const SkewParams &q, std::span<const FieldElement> alpha) {
    const std::size_t n = q.size();
    const auto mons = ordered_pairs(n);
    const std::size_t pairs = n * (n - 1) / 2;
    if (alpha.size() != skew_unknown_count(n))
        throw std::invalid_argument("wrong number of skew unknowns");
    Mat out(q.field(), pairs, n * n);
    for (std::size_t p = 0; p < pairs; ++p)
        for (std::size_t t = 0; t < mons.size(); ++t)
            out(p, mons[t].first * n + mons[t].second) = -alpha[p * mons.size() + t];
    return out;
}

SkewOracleResult skew_oracle(const SkewParams &q) {
    const auto &F = q.field();
    const std::size_t n = q.size();
    const auto mons = ordered_pairs(n);
    const auto pairs = relation_pairs(n);
    const std::size_t M = mons.size(), unknowns = skew_unknown_count(n);
    auto pair_index = [&](std::size_t i, std::size_t j) {
        return static_cast<std::size_t>(
            std::find(pairs.begin(), pairs.end(), std::make_pair(i, j)) - pairs.begin());
    };

    std::map<std::vector<std::size_t>, std::size_t> cubic;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c)
                cubic.emplace(std::vector<std::size_t>{a, b, c}, cubic.size());

    std::vector<std::vector<FieldElement>> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                std::vector<std::vector<FieldElement>> eq(cubic.size(),
                                                          std::vector<FieldElement>(unknowns, F.zero()));
                // coeff * (left letter) a_pair (right letter), summed over monomials.
                auto add = [&](const FieldElement &coeff, std::size_t pair, long left, long right) {
                    for (std::size_t t = 0; t < M; ++t) {
                        std::vector<std::size_t> w;
                        if (left >= 0)
                            w.push_back(static_cast<std::size_t>(left));
                        w.push_back(mons[t].first);
                        w.push_back(mons[t].second);
                        if (right >= 0)
                            w.push_back(static_cast<std::size_t>(right));
                        FieldElement c = coeff * reorder(q, w);
                        eq[cubic.at(w)][pair * M + t] += c;
                    }
                };
                const long I = static_cast<long>(i), J = static_cast<long>(j),
                           K = static_cast<long>(k);
                const std::size_t ij = pair_index(i, j), ik = pair_index(i, k), jk = pair_index(j, k);
                add(q(i, j) * q(i, k), jk, I, -1);
                add(q(i, j), ik, -1, J);
                add(F.one(), ij, K, -1);
                add(-(q(j, k) * q(i, k)), ij, -1, K);
                add(-q(j, k), ik, J, -1);
                add(-F.one(), jk, -1, I);
                for (auto &r : eq)
                    rows.push_back(std::move(r));
            }
    Mat system(F, rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < unknowns; ++c)
            system(r, c) = rows[r][c];

    // Linear changes of generators x_a -> x_a + eps x_b.
    Mat cob(F, n * n, unknowns);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t row = a * n + b;
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                const auto [i, j] = pairs[p];
                // Derivative of x_j x_i - q_ij x_i x_j; a_ij is its negative.
                std::vector<std::pair<FieldElement, std::vector<std::size_t>>> terms;
                if (j == a)
                    terms.push_back({F.one(), {b, i}});
                if (i == a)
                    terms.push_back({F.one(), {j, b}});
                if (i == a)
                    terms.push_back({-q(i, j), {b, j}});
                if (j == a)
                    terms.push_back({-q(i, j), {i, b}});
                for (auto &[c, w] : terms) {
                    FieldElement s = -(c * reorder(q, w));
                    const auto t = static_cast<std::size_t>(
                        std::find(mons.begin(), mons.end(), std::make_pair(w[0], w[1])) -
                        mons.begin());
                    cob(row, p * M + t) += s;
                }
            }
        }

    SkewOracleResult out{q.generic(), 0, 0, 0, Mat(F, 0, unknowns), Mat(F, 0, unknowns),
                         Mat(F, 0, unknowns)};
    const SubspaceBasis cycles = kernel_basis(system);
    const SubspaceBasis bounds = SubspaceBasis::span_of(cob);
    out.cocycles = cycles.basis();
    out.coboundaries = bounds.basis();
    out.cocycle_dim = cycles.dim();
    out.coboundary_dim = bounds.dim();
    out.dimension = out.cocycle_dim - out.coboundary_dim;

    Mat current = bounds.basis();
    std::size_t have = bounds.dim();
    for (std::size_t r = 0; r < cycles.dim(); ++r) {
        Mat v(F, 1, unknowns);
        for (std::size_t c = 0; c < unknowns; ++c)
            v(0, c) = cycles.basis()(r, c);
        Mat trial = current.vstack(v);
        if (rank(trial) > have) {
            current = std::move(trial);
            out.flat_basis = out.flat_basis.vstack(v);
            ++have;
        }
    }
    return out;
}

} // namespace hhks
