#pragma once

#include "hhks/deformation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hhks::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kInputError = 2, kNotFlat = 3 };

struct RunConfig {
    std::string command;
    std::string family;
    std::string at;                      // "name=value,..."
    int r = 0;
    std::optional<std::string> only;     // tables: comma-separated selectors
    std::string format = "table";        // "table" or "records"
    std::uint64_t seed = 20240601;
    std::optional<std::size_t> dmax;
    unsigned jobs = 1;
    std::filesystem::path registry;
    bool show_matrix = false;
    std::size_t trials = 5;              // check: random skew points
};

// Result of running one registry family at its table point.
struct FamilyResult {
    std::string name;
    int table = 0;
    std::string row;
    std::string status; // manifest status
    Point point;
    std::vector<std::size_t> dims; // HH^0_0 .. HH^4_0
    std::size_t para = 0;
    std::size_t rank = 0;
    bool inj = false;
    bool surj = false;
    bool euler_ok = false;
    bool frobenius_ok = false;
    bool complex_ok = false; // delta^2 = 0 on the strand
    bool flat = false;       // every parameter direction is a cocycle
    bool match = false;      // computed columns equal the expected block
    std::string error;       // nonempty when the computation failed
    double seconds = 0;
};

FamilyResult analyze(const RegistryEntry &entry, std::optional<std::size_t> dmax = std::nullopt);
std::string record_line(const FamilyResult &r);
// Which expected columns disagree, e.g. "hh rank"; empty when they agree.
std::string mismatch_columns(const FamilyResult &r, const ExpectedResults &e);

// Random rational skew matrix passing the genericity test.
SkewParams random_generic_skew(std::mt19937_64 &rng);

const RegistryEntry &resolve_family(const Registry &reg, const std::string &name);

int cmd_hh(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_ks(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_tables(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_check(const RunConfig &cfg, std::ostream &out, std::ostream &err);

// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace hhks::cli
