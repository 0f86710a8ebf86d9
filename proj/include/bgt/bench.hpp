#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bgt {

// Instrumented work per operation at growing sizes. Structures:
//   pst, envelope     random mixed updates and queries
//   rf, rm, m2        oracle queries on uniform-normalized / dyadic instances
//   m2-build          tree construction on dyadic-random instances
struct BenchRow {
    std::string structure;
    std::size_t n = 0;
    std::uint64_t ops = 0;
    std::uint64_t work = 0;
    double work_per_op = 0;
    double ratio = 0;      // work_per_op (total work for m2-build) over the previous size; 0 for the first
    double limit = 0;      // ratio ceiling, or the absolute ceiling for m2
    bool pass = true;
};

std::vector<std::string> bench_structures();
std::vector<std::size_t> bench_default_sizes(std::string_view structure);

// Throws std::invalid_argument for an unknown structure or sizes that are
// not strictly increasing.
std::vector<BenchRow> bench(std::string_view structure, std::span<const std::size_t> sizes, std::uint64_t seed);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace bgt
