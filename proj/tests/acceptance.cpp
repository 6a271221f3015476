// Acceptance gate: runs every verification criterion at full scale and
// prints one pass/fail line per criterion.  Exits nonzero if any fails.

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "diskdyn/verification.hpp"

int main(int argc, char** argv) {
    diskdyn::verify::Profile profile;
    profile.seed = 2026;

    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc) {
            profile.cli_path = argv[++i];
        } else if (arg == "--scale" && i + 1 < argc) {
            profile.scale = std::stod(argv[++i]);
        } else if (arg == "--seed" && i + 1 < argc) {
            profile.seed = std::stoull(argv[++i]);
        } else if (arg == "--only" && i + 1 < argc) {
            profile.criteria.push_back(argv[++i]);
        } else {
            std::cerr << "usage: " << argv[0]
                      << " [--cli <path>] [--scale s] [--seed n] [--only ACk]...\n";
            return 2;
        }
    }

    const auto results = diskdyn::verify::run_all(profile, &std::cout);
    const bool ok = diskdyn::verify::all_pass(results);
    std::cout << (ok ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << std::endl;
    if (!ok) {
        for (const auto& r : results) {
            if (r.pass) continue;
            for (const auto& row : r.rows) {
                if (!row.pass) {
                    std::cout << "  " << row.criterion << " " << row.item << ": value " << row.value
                              << " budget " << row.budget << "\n";
                }
            }
        }
    }
    return ok ? 0 : 1;
}
