#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blab::cli {

// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

// The scan table behind `scan`: geometric ladder of n, generator output,
// sumset growth against the slow-growth benchmark (ln|A| / (ln ln|A|)^3)^(1/3).
std::string scan_csv(std::int64_t n_min, std::int64_t n_max, const std::string& generator,
                     std::uint64_t seed);

} // namespace blab::cli
