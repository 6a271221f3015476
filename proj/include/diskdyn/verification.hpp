#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "diskdyn/hamiltonian.hpp"

namespace diskdyn::verify {

/// One checked quantity inside a criterion; these become the rows of the
/// verification CSV, so they contain nothing machine- or thread-dependent.
struct CheckRow {
    std::string criterion;
    std::string item;
    double value = 0.0;
    double budget = 0.0;
    bool pass = false;
};

struct CriterionResult {
    std::string id;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    std::vector<CheckRow> rows;
};

struct Profile {
    std::uint64_t seed = 2026;
    unsigned threads = 0;
    /// Multiplies sample counts (floored); 1.0 reproduces the full gate.
    double scale = 1.0;
    /// Criterion ids to run; empty means all of AC1..AC11.
    std::vector<std::string> criteria;
    /// Replaces the built-in spec suite (closed-form checks then apply only
    /// where the custom spec is radial).
    std::optional<HamiltonianSpec> custom_spec;
    /// Path of the command-line binary, used by the determinism criterion to
    /// re-run reduced verifications end to end.  Empty disables AC11.
    std::string cli_path;
    /// Scratch directory for the determinism criterion.
    std::string work_dir = "/tmp";
};

std::vector<CriterionResult> run_all(const Profile& profile, std::ostream* log = nullptr);

bool all_pass(const std::vector<CriterionResult>& results);

} // namespace diskdyn::verify
