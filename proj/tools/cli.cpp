#include "cli.hpp"

#include "hhks/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace hhks::cli {

namespace {

const char *yes_no(bool b) { return b ? "Yes" : "No"; }

std::string join(const std::vector<std::size_t> &v, const char *sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

Registry open_registry(const RunConfig &cfg) {
    return load_registry(cfg.registry.empty() ? default_registry_dir() : cfg.registry);
}

Point point_for(const FamilySpec &f, const std::string &at) {
    Point p = default_point(f);
    if (!at.empty())
        p = with_overrides(f, std::move(p), at);
    return p;
}

// Maps library exceptions onto exit codes with a one-line diagnostic.
template <class Fn> int guarded(std::ostream &err, Fn &&fn) {
    try {
        return fn();
    } catch (const NotACocycle &e) {
        err << "error: " << e.what() << "\n";
        return kNotFlat;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

std::size_t degree_needed(int r, std::optional<std::size_t> dmax) {
    if (dmax)
        return *dmax;
    return static_cast<std::size_t>(std::max(4, 4 + r));
}

} // namespace

const RegistryEntry &resolve_family(const Registry &reg, const std::string &name) {
    if (const RegistryEntry *e = reg.find(name))
        return *e;
    throw Error("unknown family '" + name + "'");
}

FamilyResult analyze(const RegistryEntry &entry, std::optional<std::size_t> dmax) {
    const auto t0 = std::chrono::steady_clock::now();
    const FamilySpec &f = entry.spec;
    FamilyResult res;
    res.name = f.name;
    res.table = f.table;
    res.row = f.row;
    res.status = entry.status;
    res.para = f.params.size();
    try {
        res.point = default_point(f);
        const QuadraticAlgebra a = evaluate_family(f, res.point);
        const Fibre fibre = build_fibre(a, degree_needed(0, dmax));
        res.complex_ok = fibre.strand.squares_to_zero();
        res.frobenius_ok = frobenius_check(fibre.dual).pass;
        const CohomologyTable hh = cohomology_dims(fibre.strand);
        res.dims = hh.dims;
        res.euler_ok = euler_check(hh).pass;
        const KSReport rep = ks_report(f, res.point, fibre);
        res.flat = true;
        res.rank = rep.rank;
        res.inj = rep.injective;
        res.surj = rep.surjective;
        res.match = f.expected && mismatch_columns(res, *f.expected).empty();
    } catch (const Error &e) {
        res.error = e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::string mismatch_columns(const FamilyResult &r, const ExpectedResults &e) {
    std::vector<std::string> bad;
    const std::vector<std::size_t> got(r.dims.begin(),
                                       r.dims.begin() + std::min<std::size_t>(4, r.dims.size()));
    if (got != e.hh)
        bad.push_back("hh");
    if (r.para != e.para)
        bad.push_back("para");
    if (r.rank != e.rank)
        bad.push_back("rank");
    if (r.inj != e.inj)
        bad.push_back("inj");
    if (r.surj != e.surj)
        bad.push_back("surj");
    std::string out;
    for (const auto &b : bad)
        out += (out.empty() ? "" : " ") + b;
    return out;
}

std::string record_line(const FamilyResult &r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    nlohmann::ordered_json point = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.point)
        point[k] = v.to_string();
    j["point"] = point;
    j["dims"] = r.dims;
    j["para"] = r.para;
    j["rank"] = r.rank;
    j["inj"] = r.inj;
    j["surj"] = r.surj;
    j["euler_ok"] = r.euler_ok;
    j["frobenius_ok"] = r.frobenius_ok;
    j["match"] = r.match;
    return j.dump();
}

int cmd_hh(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Registry reg = open_registry(cfg);
        const FamilySpec &f = resolve_family(reg, cfg.family).spec;
        const Point p = point_for(f, cfg.at);
        const QuadraticAlgebra a = evaluate_family(f, p);
        const GradedAlgebra g = GradedAlgebra::build(a, degree_needed(cfg.r, cfg.dmax));
        const DualAlgebra dual = quadratic_dual(a);
        const StrandComplex s = build_strand(g, dual, cfg.r);
        const CohomologyTable t = cohomology_dims(s);
        const EulerVerdict ev = euler_check(t);
        const FrobeniusReport fr = frobenius_check(dual);
        out << "family: " << f.name << "\n";
        out << "point: " << (p.empty() ? std::string("(none)") : to_string(p)) << "\n";
        out << "r: " << cfg.r << "\n";
        out << "HH: " << to_string(t) << "\n";
        out << "euler: " << (ev.pass ? "pass" : "FAIL") << " (sum " << ev.alternating_sum
            << ", expected " << ev.expected << ")\n";
        out << "frobenius: " << (fr.pass ? "pass" : "FAIL");
        if (!fr.pass)
            out << " (" << fr.diagnostic << ")";
        out << "\n";
        if (!s.squares_to_zero()) {
            err << "error: differential does not square to zero\n";
            return static_cast<int>(kMismatch);
        }
        return static_cast<int>(kOk);
    });
}

int cmd_ks(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Registry reg = open_registry(cfg);
        const FamilySpec &f = resolve_family(reg, cfg.family).spec;
        const Point p = point_for(f, cfg.at);
        const Fibre fibre = build_fibre(evaluate_family(f, p), degree_needed(0, cfg.dmax));
        const KSReport rep = ks_report(f, p, fibre);
        out << "family: " << f.name << "\n";
        out << "point: " << (p.empty() ? std::string("(none)") : to_string(p)) << "\n";
        out << "HH: " << to_string(rep.hh) << "\n";
        out << "Para: " << rep.para << "\n";
        out << "dim HH2: " << rep.hh.dims.at(2) << "\n";
        out << "rank: " << rep.rank << "\n";
        out << "Inj: " << yes_no(rep.injective) << "\n";
        out << "Surj: " << yes_no(rep.surjective) << "\n";
        if (cfg.show_matrix) {
            out << "matrix:\n";
            for (std::size_t r = 0; r < rep.matrix.rows(); ++r) {
                out << " ";
                for (std::size_t c = 0; c < rep.matrix.cols(); ++c)
                    out << " " << rep.matrix(r, c).to_string();
                out << "\n";
            }
        }
        return static_cast<int>(kOk);
    });
}

namespace {

bool selected(const RegistryEntry &e, const std::set<std::string> &sel) {
    auto lower = [](std::string s) {
        for (auto &c : s)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    if (sel.count("table" + std::to_string(e.spec.table)))
        return true;
    return sel.count(lower(e.spec.name)) || (!e.spec.row.empty() && sel.count(lower(e.spec.row)));
}

std::vector<FamilyResult> run_all(const std::vector<const RegistryEntry *> &todo, unsigned jobs,
                                  std::optional<std::size_t> dmax) {
    std::vector<FamilyResult> results(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < todo.size();)
            results[i] = analyze(*todo[i], dmax);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(todo.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    return results;
}

std::string pad(const std::string &s, std::size_t w) {
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

} // namespace

int cmd_tables(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Registry reg = open_registry(cfg);
        std::vector<const RegistryEntry *> todo;
        std::set<std::string> sel;
        if (cfg.only) {
            std::stringstream ss(*cfg.only);
            for (std::string item; std::getline(ss, item, ',');) {
                item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
                for (auto &c : item)
                    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
                if (!item.empty())
                    sel.insert(item);
            }
        }
        for (const auto &e : reg.entries)
            if (!cfg.only || selected(e, sel))
                todo.push_back(&e);

        const auto results = run_all(todo, cfg.jobs, cfg.dmax);

        std::size_t mismatches = 0, flagged = 0, flagged_mismatch = 0;
        for (std::size_t i = 0; i < results.size(); ++i) {
            const bool disc = todo[i]->status == "discrepancy";
            flagged += disc;
            if (!results[i].match) {
                if (disc)
                    ++flagged_mismatch;
                else
                    ++mismatches;
            }
        }

        if (cfg.format == "records") {
            for (const auto &r : results)
                out << record_line(r) << "\n";
        } else {
            int current = -1;
            for (std::size_t i = 0; i < results.size(); ++i) {
                const auto &r = results[i];
                const auto &spec = todo[i]->spec;
                if (r.table != current) {
                    current = r.table;
                    out << (i ? "\n" : "") << "Table " << current << "\n";
                    out << pad("row", 34) << pad("para", 6) << pad("HH computed", 16)
                        << pad("HH expected", 16) << pad("rk", 8) << pad("inj", 8)
                        << pad("surj", 10) << "status\n";
                }
                const auto &e = spec.expected;
                auto pair = [](const std::string &a, const std::string &b) { return a + "/" + b; };
                std::vector<std::size_t> head(r.dims.begin(),
                                              r.dims.begin() + std::min<std::size_t>(4, r.dims.size()));
                std::string status;
                const bool failed = !r.error.empty();
                if (failed)
                    status = (todo[i]->status == "discrepancy" ? "discrepancy: ERROR " : "ERROR ") + r.error;
                else if (r.match)
                    status = todo[i]->status == "discrepancy" ? "ok (flagged discrepancy)" : "ok";
                else if (todo[i]->status == "discrepancy")
                    status = "discrepancy: " + (e ? mismatch_columns(r, *e) : "no expected block");
                else
                    status = "MISMATCH: " + (e ? mismatch_columns(r, *e) : "no expected block");
                out << pad(spec.row.empty() ? spec.name : spec.row, 34)
                    << pad(std::to_string(r.para), 6) << pad(join(head, ","), 16)
                    << pad(e ? join(e->hh, ",") : "-", 16)
                    << pad(pair(failed ? "-" : std::to_string(r.rank), e ? std::to_string(e->rank) : "-"), 8)
                    << pad(pair(failed ? "-" : yes_no(r.inj), e ? yes_no(e->inj) : "-"), 8)
                    << pad(pair(failed ? "-" : yes_no(r.surj), e ? yes_no(e->surj) : "-"), 10) << status << "\n";
            }
            if (!results.empty()) {
                out << "\nfamilies: " << results.size() << ", mismatches: " << mismatches
                    << ", flagged discrepancies: " << flagged << " (" << flagged_mismatch
                    << " differing)\n";
                if (cfg.only == std::nullopt && !reg.not_transcribable.empty()) {
                    out << "not transcribable:\n";
                    for (const auto &n : reg.not_transcribable)
                        out << "  " << n << "\n";
                }
            }
        }
        for (std::size_t i = 0; i < results.size(); ++i)
            if (!results[i].error.empty())
                err << results[i].name << ": " << results[i].error << "\n";
        return static_cast<int>(mismatches ? kMismatch : kOk);
    });
}

namespace {

FieldElement random_rational(std::mt19937_64 &rng, const CyclotomicField &F) {
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
    long a = 0;
    while (a == 0)
        a = num(rng);
    return F.from_rational(mpq_class(a, den(rng)));
}

} // namespace

SkewParams random_generic_skew(std::mt19937_64 &rng) {
    const auto &F = CyclotomicField::rationals();
    for (;;) {
        std::vector<FieldElement> upper;
        for (int t = 0; t < 6; ++t)
            upper.push_back(random_rational(rng, F));
        SkewParams q(F, 4, std::move(upper));
        if (q.generic())
            return q;
    }
}

int cmd_check(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const Registry reg = open_registry(cfg);
        bool all = true;
        auto verdict = [&](const std::string &name, bool ok, const std::string &detail) {
            out << (ok ? "pass" : "FAIL") << "  " << name;
            if (!detail.empty())
                out << "  (" << detail << ")";
            out << "\n";
            all = all && ok;
        };

        std::vector<const RegistryEntry *> every;
        for (const auto &e : reg.entries)
            every.push_back(&e);
        const auto results = run_all(every, cfg.jobs, cfg.dmax);
        std::string bad_dd, bad_hh0, bad_euler, bad_frob, errors;
        for (const auto &r : results) {
            if (!r.error.empty()) {
                errors += " " + r.name;
                continue;
            }
            if (!r.complex_ok)
                bad_dd += " " + r.name;
            if (r.dims.empty() || r.dims[0] != 1)
                bad_hh0 += " " + r.name;
            if (!r.euler_ok)
                bad_euler += " " + r.name;
            if (!r.frobenius_ok)
                bad_frob += " " + r.name;
        }
        verdict("registry families evaluate", errors.empty(), errors);
        verdict("delta^2 = 0 on every r = 0 strand", bad_dd.empty(), bad_dd);
        verdict("HH^0_0 = 1 everywhere", bad_hh0.empty(), bad_hh0);
        verdict("Euler sum 0 at r = 0 everywhere", bad_euler.empty(), bad_euler);
        verdict("Frobenius dual everywhere", bad_frob.empty(), bad_frob);

        // Euler law on the other strands for a sample of rational families.
        std::string bad_strand;
        std::size_t sampled = 0;
        for (const auto &e : reg.entries) {
            if (sampled == 5)
                break;
            if (e.spec.conductor != 1)
                continue;
            ++sampled;
            const QuadraticAlgebra a = evaluate_family(e.spec, default_point(e.spec));
            const GradedAlgebra g = GradedAlgebra::build(a, cfg.dmax.value_or(5));
            const DualAlgebra dual = quadratic_dual(a);
            for (int r = -4; r <= 1; ++r) {
                const StrandComplex s = build_strand(g, dual, r);
                if (!s.squares_to_zero() || !euler_check(cohomology_dims(s)).pass)
                    bad_strand += " " + e.spec.name + "@r=" + std::to_string(r);
            }
        }
        verdict("Euler law and delta^2 = 0 for r in -4..1 on " + std::to_string(sampled) +
                    " families",
                bad_strand.empty(), bad_strand);

        std::mt19937_64 rng(cfg.seed);
        std::string bad_oracle;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            const SkewParams q = random_generic_skew(rng);
            const SkewOracleResult o = skew_oracle(q);
            const Fibre fibre = build_fibre(q.algebra());
            const ClassBasis basis(fibre.strand);
            Mat classes(q.field(), o.flat_basis.rows(), basis.dim());
            for (std::size_t r = 0; r < o.flat_basis.rows(); ++r) {
                const auto c = ks_class(fibre, basis, skew_perturbation(q, o.flat_basis.row(r)));
                for (std::size_t j = 0; j < basis.dim(); ++j)
                    classes(r, j) = c.coordinates[j];
            }
            if (o.dimension != 6 || basis.dim() != 6 || rank(classes) != 6)
                bad_oracle += " trial " + std::to_string(t);
        }
        verdict("skew oracle matches HH^2_0 on " + std::to_string(cfg.trials) +
                    " random generic points (seed " + std::to_string(cfg.seed) + ")",
                bad_oracle.empty(), bad_oracle);
        return static_cast<int>(all ? kOk : kMismatch);
    });
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hochschild cohomology and Kodaira-Spencer maps of quadratic algebra families",
                 "hhks"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string registry;
    std::size_t dmax = 0;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--registry", registry, "Family registry directory");
        sub->add_option("--dmax", dmax, "Highest degree of A to build");
        sub->add_option("--jobs", cfg.jobs, "Families evaluated concurrently")
            ->check(CLI::PositiveNumber);
    };
    auto *hh = app.add_subcommand("hh", "Hochschild cohomology dimensions of one strand");
    auto *ks = app.add_subcommand("ks", "Kodaira-Spencer map at a point");
    auto *tables = app.add_subcommand("tables", "Reproduce the result tables");
    auto *check = app.add_subcommand("check", "Run the invariant suite");
    for (auto *sub : {hh, ks}) {
        sub->add_option("--family", cfg.family, "Family name or row label")->required();
        sub->add_option("--at", cfg.at, "Point overrides, name=value,...");
        common(sub);
    }
    hh->add_option("--r", cfg.r, "Internal degree");
    ks->add_flag("--matrix", cfg.show_matrix, "Print the Kodaira-Spencer matrix");
    tables->add_option("--only", cfg.only, "Selectors: table1, table2, table3 or family names");
    tables->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"table", "records"}));
    common(tables);
    check->add_option("--seed", cfg.seed, "Seed for random skew points");
    check->add_option("--trials", cfg.trials, "Number of random skew points");
    common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o, eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kInputError);
    }
    cfg.registry = registry;
    if (dmax)
        cfg.dmax = dmax;

    if (hh->parsed())
        return cmd_hh(cfg, out, err);
    if (ks->parsed())
        return cmd_ks(cfg, out, err);
    if (tables->parsed())
        return cmd_tables(cfg, out, err);
    return cmd_check(cfg, out, err);
}

} // namespace hhks::cli
