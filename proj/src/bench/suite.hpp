#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omt/driver.hpp"

namespace miniomt::bench {

struct SuiteInstance {
    std::string name;
    std::string file;  // problem file path, or empty when generated
    bool generated = false;
    size_t n = 0;  // generator parameters
    uint64_t gen_seed = 0;
    bool lira = false;
};

struct SuiteConfig {
    std::string name;
    reduce::Strategy strategy = reduce::Strategy::None;
    bool block_lemma = true;
    std::optional<lia::BnbConfig::Mode> lia_mode;
    double timeout_s = 60.0;
    uint64_t seed = 0;
};

struct Suite {
    std::vector<SuiteInstance> instances;
    std::vector<SuiteConfig> configs;
};

struct RunRecord {
    std::string instance;
    std::string config;
    std::string status;  // sat | unsat | timeout | unbounded | error
    std::string ub;      // exact value ("p/q", delta part suffixed "d"), empty if none
    size_t iterations = 0;
    double time_s = 0;
    uint64_t seed = 0;
};

// Suite description: a TOML subset with [[instance]] and [[config]] tables.
// Instance keys: name, and either file = "path" or generate = "sp" with
// n/seed/encoding. Config keys: name, reduction, block_lemma, lia, timeout,
// seed. Throws std::runtime_error on malformed input.
Suite parse_suite(const std::string& text);

// One record per instance x config; per-run exceptions become status=error
// rows rather than aborting the suite. `base_dir` resolves relative instance
// file paths.
std::vector<RunRecord> run_suite(const Suite& suite, const std::string& base_dir = "");

// Writes results.csv (header instance,config,status,ub,iterations,time_s,seed)
// plus one scatter file per metric and config pair, named
// <metric>_<A>_vs_<B>.csv with columns instance,A,B, into out_csv's directory.
void write_suite_results(const std::vector<RunRecord>& records, const Suite& suite,
                         const std::string& out_csv);

// Per-iteration trace CSV for a single run. `include_time` off gives a
// byte-reproducible file.
std::string trace_to_csv(const omt::OmtTrace& trace, bool include_time = true);

}  // namespace miniomt::bench
