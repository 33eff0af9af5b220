#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tavis {

struct SelfTestResult {
    std::string name;
    bool passed{false};
    std::string detail;
};

// Quick invariant checks over randomized inputs (seeded).
std::vector<SelfTestResult> run_selftest(std::uint64_t seed = 12345);

}  // namespace tavis
