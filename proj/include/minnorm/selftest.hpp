#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "minnorm/rng.hpp"

namespace minnorm {

struct SelftestOptions {
    std::uint64_t seed = RandomStream::kDefaultSeed;
    /// Fault-injection hook: perturb the fast transform inside the DFT check
    /// to prove the harness catches a broken kernel.
    bool corrupt_dft = false;
};

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t total = 0;
    std::vector<std::string> failures;
};

/// Run every module's invariant suite at desk scale, logging one line per
/// suite. Deterministic given the seed.
std::vector<SuiteResult> run_selftest(const SelftestOptions& opts, std::ostream& log);

bool all_passed(const std::vector<SuiteResult>& results);

} // namespace minnorm
