#pragma once

// Parametric families of quadratic algebras: the coefficient expression
// language, the `.alg` text format and the on-disk registry.
//
// File format (UTF-8, LF). One `key: value` per line, `#` starts a comment:
//
//   name: B
//   table: 1
//   row: B
//   field: 4
//   generators: x y z w
//   constant: p = zeta
//   param: h = -5/12
//   let: gamma = -(alpha + beta)/(1 + alpha*beta)
//   constraint: alpha + beta + gamma + alpha*beta*gamma
//   expect: hh=1,2,1,0 para=1 rank=1 inj=yes surj=yes
//   note: free text
//   rel: x*w - p*w*x
//
// Relations are noncommutative polynomials in the generators whose terms all
// have degree two; `[a, b]` is ab - ba and `{a, b}` is ab + ba. Coefficients
// are built from integers, parameters, constants, lets and `zeta` with
// + - * / ^ and parentheses. `i` aliases `zeta` when the conductor is 4.

#include "hhks/field.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hhks {

struct Expr {
    enum class Kind { Number, Symbol, Add, Sub, Mul, Div, Neg, Pow, Commutator, Anticommutator };

    Kind kind = Kind::Number;
    mpz_class number;      // Number: nonnegative integer literal
    std::string name;      // Symbol
    long exponent = 0;     // Pow
    std::vector<Expr> kids;
    int line = 0, col = 0; // source position, ignored by equality

    friend bool operator==(const Expr &a, const Expr &b);
};

Expr parse_expression(std::string_view text, int line = 1, int col_offset = 0);
std::string print_expression(const Expr &e);

struct Binding {
    std::string name;
    Expr value;
    friend bool operator==(const Binding &, const Binding &) = default;
};

struct ExpectedResults {
    std::vector<std::size_t> hh; // dim HH^0_0 .. HH^3_0
    std::size_t para = 0;
    std::size_t rank = 0;
    bool inj = false;
    bool surj = false;
    friend bool operator==(const ExpectedResults &, const ExpectedResults &) = default;
};

struct FamilySpec {
    std::string name;
    int table = 0;      // 0 when not a table row
    std::string row;    // row label in its table
    unsigned conductor = 1;
    std::vector<std::string> generators;
    std::vector<Binding> constants; // fixed field values, no KS directions
    std::vector<Binding> params;    // free parameters with their default point
    std::vector<Binding> lets;      // derived coefficients, may depend on params
    std::vector<Expr> constraints;  // must vanish at every evaluation point
    std::vector<Expr> relations;
    std::optional<ExpectedResults> expected;
    std::vector<std::string> notes;

    std::vector<std::string> param_names() const;
    friend bool operator==(const FamilySpec &, const FamilySpec &) = default;
};

FamilySpec parse_family(std::string_view text);
std::string print_family(const FamilySpec &f);
FamilySpec load_family(const std::filesystem::path &file);

// Noncommutative polynomial with dual-number coefficients, keyed by word.
using NcPoly = std::map<std::vector<std::size_t>, DualNumber>;

// Symbol table for evaluating coefficient expressions.
class Scope {
  public:
    Scope(const CyclotomicField &field, std::size_t slots) : field_(&field), slots_(slots) {}

    void bind(const std::string &name, DualNumber v);
    void bind_generator(const std::string &name, std::size_t index);
    const CyclotomicField &field() const noexcept { return *field_; }
    std::size_t slots() const noexcept { return slots_; }

    const DualNumber *lookup(const std::string &name) const;
    std::optional<std::size_t> generator(const std::string &name) const;

  private:
    const CyclotomicField *field_;
    std::size_t slots_;
    std::map<std::string, DualNumber> values_;
    std::map<std::string, std::size_t> gens_;
};

// Throws UnknownIdentifier, PoleAtPoint.
NcPoly evaluate_polynomial(const Expr &e, const Scope &scope);
DualNumber evaluate_scalar(const Expr &e, const Scope &scope);

// Scope with zeta (and `i` for conductor 4) and the family's constants bound.
Scope constant_scope(const FamilySpec &f, std::size_t slots);
FieldElement evaluate_constant_expr(const FamilySpec &f, const Expr &e);

struct RegistryEntry {
    std::string file;
    FamilySpec spec;
    std::string status; // "ok" or "discrepancy"
    std::string justification;
};

struct Registry {
    std::vector<RegistryEntry> entries;
    // Rows that have no printed relations: "<row>: <reason>".
    std::vector<std::string> not_transcribable;

    // Case-insensitive match on the family name, then on the row label.
    const RegistryEntry *find(std::string_view name) const;
};

// Reads `<dir>/MANIFEST` and every family file it lists.
Registry load_registry(const std::filesystem::path &dir);
std::filesystem::path default_registry_dir();

} // namespace hhks
