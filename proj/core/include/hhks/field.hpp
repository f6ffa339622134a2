#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n) = Q[x]/Phi_n(x), plus
// forward-mode dual numbers over them.

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace hhks {

class FieldElement;

// Q(zeta_n). Instances are interned: there is exactly one object per
// conductor, so fields compare by address.
class CyclotomicField {
  public:
    static const CyclotomicField &get(unsigned conductor);
    static const CyclotomicField &rationals() { return get(1); }

    unsigned conductor() const noexcept { return conductor_; }
    std::size_t degree() const noexcept { return phi_.size() - 1; }
    // Coefficients of Phi_n, lowest degree first; monic.
    const std::vector<long> &min_poly() const noexcept { return phi_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement zeta() const;
    FieldElement from_rational(const mpq_class &q) const;
    FieldElement from_int(long v) const;

    std::string name() const;

    CyclotomicField(const CyclotomicField &) = delete;
    CyclotomicField &operator=(const CyclotomicField &) = delete;

  private:
    explicit CyclotomicField(unsigned n);

    unsigned conductor_;
    std::vector<long> phi_;
};

// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<long> cyclotomic_polynomial(unsigned n);
unsigned euler_phi(unsigned n);

// Residue class modulo Phi_n with rational coefficients, always fully reduced.
class FieldElement {
  public:
    // Zero of Q. Exists so containers of elements can be default-sized; any
    // arithmetic against another field raises FieldMismatch.
    FieldElement();
    FieldElement(const CyclotomicField &field, std::vector<mpq_class> coeffs);

    const CyclotomicField &field() const noexcept { return *field_; }
    const std::vector<mpq_class> &coeffs() const noexcept { return c_; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    // True when the element lies in Q (all non-constant coefficients vanish).
    bool is_rational() const noexcept;

    FieldElement &operator+=(const FieldElement &o);
    FieldElement &operator-=(const FieldElement &o);
    FieldElement &operator*=(const FieldElement &o);
    FieldElement &operator/=(const FieldElement &o);

    friend FieldElement operator+(FieldElement a, const FieldElement &b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement &b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement &b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement &b) { return a /= b; }
    FieldElement operator-() const;

    FieldElement inverse() const;
    FieldElement pow(long e) const;

    // a += b * c without a temporary product allocation in the rational case.
    void add_mul(const FieldElement &b, const FieldElement &c);
    void sub_mul(const FieldElement &b, const FieldElement &c);

    friend bool operator==(const FieldElement &a, const FieldElement &b);
    friend bool operator!=(const FieldElement &a, const FieldElement &b) { return !(a == b); }

    // "-5/7", "1/2*z - 3", "z^2 + 1" with z the generator zeta_n.
    std::string to_string() const;

  private:
    void check_same(const FieldElement &o) const;
    void reduce(std::vector<mpq_class> &prod) const;

    const CyclotomicField *field_;
    std::vector<mpq_class> c_;
};

std::ostream &operator<<(std::ostream &os, const FieldElement &e);

// value + sum_m deriv[m] * eps_m with eps_i * eps_j = 0.
class DualNumber {
  public:
    DualNumber(FieldElement value, std::size_t slots);
    DualNumber(FieldElement value, std::vector<FieldElement> deriv);

    // The m-th coordinate variable at `value`: derivative e_m.
    static DualNumber variable(const FieldElement &value, std::size_t slot, std::size_t slots);

    const FieldElement &value() const noexcept { return value_; }
    const std::vector<FieldElement> &deriv() const noexcept { return d_; }
    std::size_t slots() const noexcept { return d_.size(); }
    const CyclotomicField &field() const noexcept { return value_.field(); }

    bool is_zero() const noexcept;
    bool is_constant() const noexcept;

    DualNumber &operator+=(const DualNumber &o);
    DualNumber &operator-=(const DualNumber &o);
    DualNumber &operator*=(const DualNumber &o);
    DualNumber &operator/=(const DualNumber &o);

    friend DualNumber operator+(DualNumber a, const DualNumber &b) { return a += b; }
    friend DualNumber operator-(DualNumber a, const DualNumber &b) { return a -= b; }
    friend DualNumber operator*(DualNumber a, const DualNumber &b) { return a *= b; }
    friend DualNumber operator/(DualNumber a, const DualNumber &b) { return a /= b; }
    DualNumber operator-() const;

    DualNumber pow(long e) const;

    friend bool operator==(const DualNumber &a, const DualNumber &b);
    friend bool operator!=(const DualNumber &a, const DualNumber &b) { return !(a == b); }

  private:
    void check_slots(const DualNumber &o) const;

    FieldElement value_;
    std::vector<FieldElement> d_;
};

} // namespace hhks
