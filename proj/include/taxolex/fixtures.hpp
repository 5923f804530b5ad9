#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace taxolex::fixtures {

// Synthetic desk-scale datasets shaped like the studied logs (session counts
// and length ranges at reduced scale) with planted, construction-guaranteed
// pattern occurrences. Generation is deterministic from the recorded seed.
struct FixtureSpec {
    std::string name;  // output subdirectory
    std::string kind;  // generator: wall | ratio-pair | tuned-stats |
                       // diversity-share | diversity-unused | mining-numeric |
                       // mining-plus | ism-planted | segmentation-grid
    std::uint64_t seed = 0;
    std::map<std::string, std::int64_t> params;
};

struct GeneratedFile {
    std::string relative_path;
    std::string body;
};

// Event-log files, code-book fixtures and an expected-values file for one
// spec. Throws ValidationError on an unknown kind or parameters that cannot
// produce a fixture.
std::vector<GeneratedFile> gen_fixture(const FixtureSpec& spec);

// The specs behind the shipped fixtures/ tree.
std::vector<FixtureSpec> standard_specs();

// Generates every standard fixture under `out_dir` (plus each spec as
// <name>/<name>.spec.json). Returns the file count.
std::size_t write_standard_suite(const std::string& out_dir);

}  // namespace taxolex::fixtures
