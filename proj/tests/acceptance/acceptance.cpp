// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include "cli.hpp"

#include "hhks/errors.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hhks;
namespace fs = std::filesystem;

namespace {

const fs::path kData = HHKS_TEST_DATA;
const fs::path kRegistry = HHKS_TEST_REGISTRY;

struct Expect {
    const char *name;
    std::vector<std::size_t> hh;
    std::size_t rank;
    bool inj, surj;
};

// Rows the gate pins down independently of the registry's expect blocks.
const std::vector<Expect> kPinned = {
    {"B", {1, 2, 1, 0}, 1, true, true},
    {"D", {1, 2, 2, 2}, 2, true, true},
    {"K", {1, 3, 3, 1}, 3, true, true},
    {"Q", {1, 2, 1, 0}, 1, true, true},
    {"Y", {1, 2, 3, 4}, 1, false, false},
    {"sklyanin", {1, 1, 2, 9}, 2, true, true},
    {"kq", {1, 4, 6, 4}, 6, true, true},
    {"polynomial", {1, 16, 60, 80}, 0, true, false},
    {"clifford", {1, 1, 9, 19}, 9, false, true},
    {"kirkman_r", {1, 2, 12, 22}, 0, true, false},
    {"sl2", {1, 4, 18, 32}, 0, true, false},
    {"ore_b1", {1, 2, 2, 2}, 2, true, true},
    {"cext_s2", {1, 3, 3, 2}, 1, true, false},
};

const std::vector<std::string> kEulerSample = {"polynomial", "kq", "sklyanin", "D", "lie1"};
const std::vector<std::string> kDualSample = {"polynomial", "kq",   "sklyanin", "clifford",
                                              "B",          "Y",    "lie2",     "ore_e1",
                                              "cext_h",     "caines"};

class Gate {
  public:
    void report(int n, const std::string &title, bool ok, const std::string &detail) {
        std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << n << ": " << title;
        if (!detail.empty())
            std::cout << " (" << detail << ")";
        std::cout << std::endl;
        failures_ += ok ? 0 : 1;
    }
    // Runs `body`; an escaped exception fails the criterion with its message.
    void run(int n, const std::string &title,
             const std::function<bool(std::string &detail)> &body) {
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception &e) {
            detail += (detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
        }
        report(n, title, ok, detail);
    }
    int failures() const { return failures_; }

  private:
    int failures_ = 0;
};

std::string head4(const std::vector<std::size_t> &d) {
    std::string s;
    for (std::size_t i = 0; i < 4 && i < d.size(); ++i)
        s += (i ? "," : "") + std::to_string(d[i]);
    return s;
}

Mat exterior_relations() {
    const auto &Q = CyclotomicField::rationals();
    Mat m(Q, 10, 16);
    std::size_t r = 0;
    for (std::size_t i = 0; i < 4; ++i)
        m(r++, i * 4 + i) = Q.one();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            m(r, i * 4 + j) = Q.one();
            m(r, j * 4 + i) = Q.one();
            ++r;
        }
    return m;
}

std::string skew_overrides(const SkewParams &q) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            os << (first ? "" : ",") << "q" << i + 1 << j + 1 << "=" << q(i, j).to_string();
            first = false;
        }
    return os.str();
}

} // namespace

int main() {
    Gate gate;
    const Registry reg = load_registry(kRegistry);

    std::vector<const RegistryEntry *> all;
    for (const auto &e : reg.entries)
        all.push_back(&e);
    std::map<std::string, cli::FamilyResult> results;
    for (const auto *e : all)
        results.emplace(e->spec.name, cli::analyze(*e));

    // Strand checks collected for criterion 4.
    std::vector<std::string> bad_complex;
    for (const auto &[name, r] : results)
        if (r.error.empty() && !r.complex_ok)
            bad_complex.push_back(name + "@r=0");

    gate.run(1, "pinned table rows reproduce exactly within 60 s each", [&](std::string &d) {
        std::string bad;
        double slowest = 0;
        for (const auto &x : kPinned) {
            const RegistryEntry *e = reg.find(x.name);
            if (!e) {
                bad += std::string(" ") + x.name + ":missing";
                continue;
            }
            const auto &r = results.at(e->spec.name);
            slowest = std::max(slowest, r.seconds);
            const bool ok = r.error.empty() && head4(r.dims) == head4(x.hh) && r.rank == x.rank &&
                            r.inj == x.inj && r.surj == x.surj && r.seconds < 60.0;
            if (!ok)
                bad += std::string(" ") + x.name;
        }
        const RegistryEntry *b = reg.find("B");
        const bool b_point = b && b->spec.conductor == 4 &&
                             to_string(results.at("B").point) == "h=-5/12";
        if (!b_point)
            bad += " B:point";
        std::ostringstream os;
        os << kPinned.size() << " rows, slowest " << std::fixed;
        os.precision(2);
        os << slowest << " s" << (bad.empty() ? "" : "; mismatched:" + bad);
        d = os.str();
        return bad.empty();
    });

    gate.run(2, "full registry matches or is flagged with a justification", [&](std::string &d) {
        std::size_t flagged = 0, ok_rows = 0;
        std::string bad;
        for (const auto *e : all) {
            const auto &r = results.at(e->spec.name);
            if (e->status == "discrepancy") {
                ++flagged;
                if (e->justification.empty())
                    bad += " " + e->spec.name + ":unjustified";
            } else {
                ++ok_rows;
                if (!r.error.empty() || !r.match)
                    bad += " " + e->spec.name;
            }
        }
        d = std::to_string(all.size()) + " families, " + std::to_string(ok_rows) + " matching, " +
            std::to_string(flagged) + " flagged discrepancies, " +
            std::to_string(reg.not_transcribable.size()) + " not transcribable" +
            (bad.empty() ? "" : "; failing:" + bad);
        return bad.empty() && all.size() == 73;
    });

    gate.run(3, "Euler characteristic law", [&](std::string &d) {
        std::string bad;
        for (const auto &[name, r] : results)
            if (!r.error.empty() || !r.euler_ok)
                bad += " " + name + "@r=0";
        for (const auto &name : kEulerSample) {
            const FamilySpec &f = reg.find(name)->spec;
            const QuadraticAlgebra a = evaluate_family(f, default_point(f));
            const GradedAlgebra g = GradedAlgebra::build(a, 4);
            const StrandComplex s = build_strand(g, quadratic_dual(a), -4);
            if (!s.squares_to_zero())
                bad_complex.push_back(name + "@r=-4");
            const EulerVerdict v = euler_check(cohomology_dims(s));
            if (!v.pass || v.alternating_sum != 1)
                bad += " " + name + "@r=-4";
        }
        d = "r = 0 on " + std::to_string(results.size()) + " families, r = -4 on " +
            std::to_string(kEulerSample.size()) + (bad.empty() ? "" : "; failing:" + bad);
        return bad.empty();
    });

    gate.run(4, "delta^2 = 0 on every strand built above", [&](std::string &d) {
        d = std::to_string(results.size() + kEulerSample.size()) + " strands";
        for (const auto &b : bad_complex)
            d += " " + b;
        return bad_complex.empty();
    });

    gate.run(5, "skew oracle equals the Koszul pipeline on 20 seeded generic points",
             [&](std::string &d) {
                 std::mt19937_64 rng(20240601);
                 const FamilySpec &kq = reg.find("kq")->spec;
                 std::string bad;
                 for (int t = 0; t < 20; ++t) {
                     const SkewParams q = cli::random_generic_skew(rng);
                     const SkewOracleResult o = skew_oracle(q);
                     const Point p = with_overrides(kq, default_point(kq), skew_overrides(q));
                     const Fibre fibre = build_fibre(evaluate_family(kq, p));
                     const ClassBasis basis(fibre.strand);
                     const KSReport rep = ks_report(kq, p, fibre);

                     Mat flat(q.field(), o.flat_basis.rows(), basis.dim());
                     for (std::size_t r = 0; r < o.flat_basis.rows(); ++r) {
                         const auto c =
                             ks_class(fibre, basis, skew_perturbation(q, o.flat_basis.row(r)));
                         for (std::size_t j = 0; j < basis.dim(); ++j)
                             flat(r, j) = c.coordinates[j];
                     }
                     bool coboundaries_vanish = true;
                     for (std::size_t r = 0; r < o.coboundaries.rows(); ++r) {
                         const auto c =
                             ks_class(fibre, basis, skew_perturbation(q, o.coboundaries.row(r)));
                         for (const auto &x : c.coordinates)
                             coboundaries_vanish = coboundaries_vanish && x.is_zero();
                     }
                     const Mat pipeline = rep.matrix.transpose();
                     const bool ok = o.dimension == 6 && rep.hh.dims.at(2) == 6 &&
                                     rank(flat) == 6 && rank(pipeline) == 6 &&
                                     rank(flat.vstack(pipeline)) == 6 && coboundaries_vanish;
                     if (!ok)
                         bad += " trial" + std::to_string(t);
                 }
                 d = "seed 20240601" + (bad.empty() ? "" : "; failing:" + bad);
                 return bad.empty();
             });

    gate.run(6, "dual calibration", [&](std::string &d) {
        const FamilySpec &poly = reg.find("polynomial")->spec;
        const DualAlgebra ext = quadratic_dual(evaluate_family(poly, default_point(poly)));
        const bool exterior =
            ext.graded.dims() == std::vector<std::size_t>{1, 4, 6, 4, 1, 0} &&
            ext.algebra.relation_span().basis() ==
                SubspaceBasis::span_of(exterior_relations()).basis();
        std::string bad;
        for (const auto &name : kDualSample) {
            const FamilySpec &f = reg.find(name)->spec;
            const QuadraticAlgebra a = evaluate_family(f, default_point(f));
            const DualAlgebra dd = quadratic_dual(quadratic_dual(a).algebra);
            if (!(dd.algebra.relation_span().basis() == a.relation_span().basis()))
                bad += " " + name;
        }
        d = std::string("exterior algebra ") + (exterior ? "recovered" : "NOT recovered") +
            ", double dual on " + std::to_string(kDualSample.size()) + " families" +
            (bad.empty() ? "" : "; failing:" + bad);
        return exterior && bad.empty();
    });

    gate.run(7, "Frobenius gate", [&](std::string &d) {
        std::string bad;
        for (const auto &[name, r] : results)
            if (!r.error.empty() || !r.frobenius_ok)
                bad += " " + name;
        const FamilySpec deg = load_family(kData / "degenerate.alg");
        const FrobeniusReport fr =
            frobenius_check(quadratic_dual(evaluate_family(deg, default_point(deg))));
        d = std::to_string(results.size()) + " registry duals pass, degenerate example " +
            (fr.pass ? "PASSES (unexpected)" : "fails: " + fr.diagnostic) +
            (bad.empty() ? "" : "; failing:" + bad);
        return bad.empty() && !fr.pass;
    });

    gate.run(8, "flatness of every parameter direction", [&](std::string &d) {
        std::string bad;
        std::size_t directions = 0;
        for (const auto &[name, r] : results) {
            directions += r.para;
            if (!r.error.empty() || !r.flat)
                bad += " " + name;
        }
        const FamilySpec corrupt = load_family(kData / "corrupted" / "kq_off_family.alg");
        std::string caught;
        try {
            ks_report(corrupt, default_point(corrupt));
        } catch (const NotACocycle &e) {
            caught = e.what();
        }
        d = std::to_string(directions) + " directions flat, corrupted family " +
            (caught.empty() ? "NOT rejected" : "rejected: " + caught) +
            (bad.empty() ? "" : "; failing:" + bad);
        return bad.empty() && !caught.empty();
    });

    gate.run(9, "parser round trip and error fixtures", [&](std::string &d) {
        std::string bad;
        for (const auto *e : all)
            if (!(parse_family(print_family(e->spec)) == e->spec))
                bad += " " + e->spec.name;
        auto fails_with = [&](const char *file, auto tag) {
            using E = decltype(tag);
            try {
                load_family(kData / file);
            } catch (const E &) {
                return true;
            } catch (const std::exception &) {
                return false;
            }
            return false;
        };
        const bool syntax = fails_with("bad_syntax.alg", SyntaxError("", 0, 0));
        const bool nonquad = fails_with("non_quadratic.alg", NonQuadraticTerm("", 0, 0));
        const bool unknown = fails_with("unknown_identifier.alg", UnknownIdentifier("", 0, 0));
        d = std::to_string(all.size()) + " families round-trip" +
            (bad.empty() ? "" : " except" + bad) + ", fixtures: syntax " +
            (syntax ? "ok" : "MISSED") + ", non-quadratic " + (nonquad ? "ok" : "MISSED") +
            ", unknown identifier " + (unknown ? "ok" : "MISSED");
        return bad.empty() && syntax && nonquad && unknown;
    });

    std::cout << (gate.failures() == 0 ? "all criteria pass" : std::to_string(gate.failures()) +
                                                                    " criteria fail")
              << std::endl;
    return gate.failures() == 0 ? 0 : 1;
}
