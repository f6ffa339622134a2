#include "hhks/field.hpp"

#include "hhks/errors.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hhks {

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0)
                m /= p;
            result -= result / p;
        }
    }
    if (m > 1)
        result -= result / m;
    return result;
}

std::vector<long> cyclotomic_polynomial(unsigned n) {
    if (n == 0)
        throw std::invalid_argument("cyclotomic conductor must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d; exact integer division
    // by monic polynomials.
    std::vector<long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d != 0)
            continue;
        std::vector<long> den = cyclotomic_polynomial(d);
        const std::size_t dd = den.size() - 1;
        std::vector<long> quot(num.size() - dd, 0);
        for (std::size_t k = num.size() - 1; k + 1 > dd; --k) {
            const long q = num[k];
            quot[k - dd] = q;
            for (std::size_t j = 0; j <= dd; ++j)
                num[k - dd + j] -= q * den[j];
            if (k == dd)
                break;
        }
        num = std::move(quot);
    }
    return num;
}

CyclotomicField::CyclotomicField(unsigned n) : conductor_(n), phi_(cyclotomic_polynomial(n)) {}

const CyclotomicField &CyclotomicField::get(unsigned conductor) {
    if (conductor == 0)
        throw std::invalid_argument("cyclotomic conductor must be positive");
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<CyclotomicField>> cache;
    std::lock_guard lock(mu);
    auto &slot = cache[conductor];
    if (!slot)
        slot.reset(new CyclotomicField(conductor));
    return *slot;
}

FieldElement CyclotomicField::zero() const {
    return FieldElement(*this, std::vector<mpq_class>(degree()));
}

FieldElement CyclotomicField::one() const { return from_int(1); }

FieldElement CyclotomicField::from_rational(const mpq_class &q) const {
    std::vector<mpq_class> c(degree());
    c[0] = q;
    return FieldElement(*this, std::move(c));
}

FieldElement CyclotomicField::from_int(long v) const { return from_rational(mpq_class(v)); }

FieldElement CyclotomicField::zeta() const {
    // x reduced modulo Phi_n; for degree 1 fields x = -phi_[0].
    std::vector<mpq_class> c(degree());
    if (degree() == 1)
        c[0] = -phi_[0];
    else
        c[1] = 1;
    return FieldElement(*this, std::move(c));
}

std::string CyclotomicField::name() const {
    if (conductor_ == 1)
        return "Q";
    return "Q(zeta_" + std::to_string(conductor_) + ")";
}

FieldElement::FieldElement() : field_(&CyclotomicField::rationals()), c_(1) {}

FieldElement::FieldElement(const CyclotomicField &field, std::vector<mpq_class> coeffs)
    : field_(&field), c_(std::move(coeffs)) {
    if (c_.size() > field.degree())
        reduce(c_);
    c_.resize(field.degree());
}

bool FieldElement::is_zero() const noexcept {
    for (const auto &q : c_)
        if (sgn(q) != 0)
            return false;
    return true;
}

bool FieldElement::is_one() const noexcept {
    if (c_[0] != 1)
        return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0)
            return false;
    return true;
}

bool FieldElement::is_rational() const noexcept {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0)
            return false;
    return true;
}

void FieldElement::check_same(const FieldElement &o) const {
    if (field_ != o.field_)
        throw FieldMismatch(field_->conductor(), o.field_->conductor());
}

// Reduce a coefficient vector of arbitrary length modulo the monic Phi_n.
void FieldElement::reduce(std::vector<mpq_class> &p) const {
    const auto &phi = field_->min_poly();
    const std::size_t d = phi.size() - 1;
    for (std::size_t k = p.size(); k-- > d;) {
        if (sgn(p[k]) == 0)
            continue;
        const mpq_class lead = p[k];
        for (std::size_t j = 0; j < d; ++j)
            if (phi[j] != 0)
                p[k - d + j] -= lead * phi[j];
        p[k] = 0;
    }
    p.resize(d);
}

FieldElement &FieldElement::operator+=(const FieldElement &o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

FieldElement &FieldElement::operator-=(const FieldElement &o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] -= o.c_[i];
    return *this;
}

FieldElement &FieldElement::operator*=(const FieldElement &o) {
    check_same(o);
    const std::size_t d = c_.size();
    if (d == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<mpq_class> prod(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        if (sgn(c_[i]) == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j)
            if (sgn(o.c_[j]) != 0)
                prod[i + j] += c_[i] * o.c_[j];
    }
    reduce(prod);
    c_ = std::move(prod);
    return *this;
}

void FieldElement::add_mul(const FieldElement &b, const FieldElement &c) {
    check_same(b);
    check_same(c);
    if (c_.size() == 1) {
        c_[0] += b.c_[0] * c.c_[0];
        return;
    }
    *this += b * c;
}

void FieldElement::sub_mul(const FieldElement &b, const FieldElement &c) {
    check_same(b);
    check_same(c);
    if (c_.size() == 1) {
        c_[0] -= b.c_[0] * c.c_[0];
        return;
    }
    *this -= b * c;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto &q : r.c_)
        q = -q;
    return r;
}

FieldElement FieldElement::inverse() const {
    if (is_zero())
        throw DivisionByZero();
    const std::size_t d = c_.size();
    if (d == 1 || is_rational()) {
        std::vector<mpq_class> c(d);
        c[0] = 1 / c_[0];
        return FieldElement(*field_, std::move(c));
    }
    // Solve M y = e_0 where column j of M is this * x^j reduced mod Phi_n.
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1));
    FieldElement basis = field_->one();
    FieldElement x = field_->zeta();
    for (std::size_t j = 0; j < d; ++j) {
        FieldElement col = *this * basis;
        for (std::size_t i = 0; i < d; ++i)
            m[i][j] = col.c_[i];
        basis *= x;
    }
    m[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (piv < d && sgn(m[piv][col]) == 0)
            ++piv;
        if (piv == d)
            throw DivisionByZero("singular multiplication matrix");
        std::swap(m[piv], m[col]);
        const mpq_class inv = 1 / m[col][col];
        for (std::size_t k = col; k <= d; ++k)
            m[col][k] *= inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || sgn(m[r][col]) == 0)
                continue;
            const mpq_class f = m[r][col];
            for (std::size_t k = col; k <= d; ++k)
                m[r][k] -= f * m[col][k];
        }
    }
    std::vector<mpq_class> y(d);
    for (std::size_t i = 0; i < d; ++i)
        y[i] = m[i][d];
    return FieldElement(*field_, std::move(y));
}

FieldElement &FieldElement::operator/=(const FieldElement &o) {
    check_same(o);
    if (o.is_zero())
        throw DivisionByZero();
    if (c_.size() == 1) {
        c_[0] /= o.c_[0];
        return *this;
    }
    return *this *= o.inverse();
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0)
        return inverse().pow(-e);
    FieldElement result = field_->one();
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

bool operator==(const FieldElement &a, const FieldElement &b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
}

std::string FieldElement::to_string() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const mpq_class &q = c_[k];
        if (sgn(q) == 0)
            continue;
        mpq_class mag = abs(q);
        if (first) {
            if (sgn(q) < 0)
                os << "-";
        } else {
            os << (sgn(q) < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1)
            os << mag.get_str() << "*";
        os << "zeta";
        if (k > 1)
            os << "^" << k;
    }
    return os.str();
}

std::ostream &operator<<(std::ostream &os, const FieldElement &e) { return os << e.to_string(); }

DualNumber::DualNumber(FieldElement value, std::size_t slots)
    : value_(std::move(value)), d_(slots, value_.field().zero()) {}

DualNumber::DualNumber(FieldElement value, std::vector<FieldElement> deriv)
    : value_(std::move(value)), d_(std::move(deriv)) {}

DualNumber DualNumber::variable(const FieldElement &value, std::size_t slot, std::size_t slots) {
    DualNumber r(value, slots);
    r.d_.at(slot) = value.field().one();
    return r;
}

bool DualNumber::is_zero() const noexcept { return value_.is_zero() && is_constant(); }

bool DualNumber::is_constant() const noexcept {
    for (const auto &e : d_)
        if (!e.is_zero())
            return false;
    return true;
}

void DualNumber::check_slots(const DualNumber &o) const {
    if (d_.size() != o.d_.size())
        throw std::invalid_argument("dual number slot count mismatch");
}

DualNumber &DualNumber::operator+=(const DualNumber &o) {
    check_slots(o);
    value_ += o.value_;
    for (std::size_t i = 0; i < d_.size(); ++i)
        d_[i] += o.d_[i];
    return *this;
}

DualNumber &DualNumber::operator-=(const DualNumber &o) {
    check_slots(o);
    value_ -= o.value_;
    for (std::size_t i = 0; i < d_.size(); ++i)
        d_[i] -= o.d_[i];
    return *this;
}

DualNumber &DualNumber::operator*=(const DualNumber &o) {
    check_slots(o);
    for (std::size_t i = 0; i < d_.size(); ++i) {
        FieldElement t = d_[i] * o.value_;
        t.add_mul(value_, o.d_[i]);
        d_[i] = std::move(t);
    }
    value_ *= o.value_;
    return *this;
}

DualNumber &DualNumber::operator/=(const DualNumber &o) {
    check_slots(o);
    if (o.value_.is_zero())
        throw DivisionByZero("dual division by a number with zero value part");
    const FieldElement inv = o.value_.inverse();
    // (a + a'e)/(b + b'e) = a/b + (a' b - a b')/b^2 e
    const FieldElement q = value_ * inv;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        FieldElement t = d_[i];
        t.sub_mul(q, o.d_[i]);
        d_[i] = t * inv;
    }
    value_ = q;
    return *this;
}

DualNumber DualNumber::operator-() const {
    DualNumber r = *this;
    r.value_ = -r.value_;
    for (auto &e : r.d_)
        e = -e;
    return r;
}

DualNumber DualNumber::pow(long e) const {
    if (e < 0) {
        DualNumber one(value_.field().one(), d_.size());
        return (one / *this).pow(-e);
    }
    if (e == 0)
        return DualNumber(value_.field().one(), d_.size());
    // d(v^e) = e v^(e-1) dv
    const FieldElement vm1 = value_.pow(e - 1);
    const FieldElement scale = value_.field().from_int(e) * vm1;
    DualNumber r(vm1 * value_, d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i)
        r.d_[i] = scale * d_[i];
    return r;
}

bool operator==(const DualNumber &a, const DualNumber &b) {
    return a.value_ == b.value_ && a.d_ == b.d_;
}

} // namespace hhks
