#pragma once

#include "forge/serialize.hpp"

#include <string>
#include <vector>

namespace forge {

struct SuiteOptions {
    std::uint64_t seed = 7;
    std::size_t trials = 100;
    std::size_t jobs = 1;
    std::size_t sandwich_trials = 100;  // davis-garsia stability sub-suites
    bool include_instances = true;      // per-instance rows in the report
};

struct SuiteReport {
    std::string name;
    SuiteOptions opts;
    bool pass = false;
    std::size_t failures = 0;
    Json payload;  // suite-specific aggregates and per-instance rows

    /// Full report document; the timestamp is the only nondeterministic field.
    [[nodiscard]] Json to_json(bool with_timestamp = true) const;
};

[[nodiscard]] const std::vector<std::string>& suite_names();
[[nodiscard]] SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

/// Index-sharded deterministic parallel map.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& body);

}  // namespace forge
