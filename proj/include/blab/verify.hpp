#pragma once

#include "blab/bohr.hpp"
#include "blab/fourier.hpp"
#include "blab/sets.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace blab {

// One verified inequality or identity: a named statement on a concrete
// instance with both sides recorded.
struct CheckLine {
    std::string statement;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

struct SuiteReport {
    std::string name;
    std::vector<CheckLine> lines;

    bool all_pass() const;
    std::size_t failures() const;
};

// Named suites behind `verify <suite>`; each runs its full seeded corpus.
SuiteReport suite_fourier(std::uint64_t seed);
SuiteReport suite_bohr(std::uint64_t seed);
SuiteReport suite_bourgain(std::uint64_t seed);
SuiteReport suite_local(std::uint64_t seed);
SuiteReport suite_spectrum(std::uint64_t seed);
SuiteReport suite_freiman(std::uint64_t seed);
SuiteReport suite_increment(std::uint64_t seed);

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::uint64_t seed);

// corpus helpers (seeded, deterministic)
Group random_group(std::mt19937_64& rng, std::uint64_t max_size, int max_factors = 3);
Group random_odd_group(std::mt19937_64& rng, std::uint64_t max_size);
GSet random_subset(std::mt19937_64& rng, const Group& g, double density);
GFunction random_function(std::mt19937_64& rng, const Group& g);
BourgainSystem random_bohr_system(std::mt19937_64& rng, const Group& g, int max_freqs,
                                  double min_delta = 0.05, double max_delta = 0.5);
// mixed rule shapes: bohr, dilate, double, intersect
BourgainSystem random_system(std::mt19937_64& rng, const Group& g, int max_freqs);

// Every abelian group of order <= max_order, one per isomorphism class.
std::vector<Group> all_abelian_groups(std::uint64_t max_order);

std::string format_report(const SuiteReport& rep);

} // namespace blab
