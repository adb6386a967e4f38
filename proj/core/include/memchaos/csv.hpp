#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "memchaos/dynamics.hpp"
#include "memchaos/nist.hpp"

namespace memchaos::io {

// Deterministic CSV renderings (header row + %.17g numbers): identical
// inputs produce byte-identical text.

// index,exponent — one row per exponent, descending.
std::string lyapunov_csv(const dynamics::LyapunovSpectrum& spectrum);

// alpha,extremum — diverged sweep values contribute no rows (they are
// flagged on the data structure, not in the CSV).
std::string bifurcation_csv(const dynamics::BifurcationData& data);

// p1,p2,se,c0,diverged — diverged cells keep their row with nan values
// and flag 1.
std::string complexity_csv(const dynamics::ComplexityMap& map);

// c,K_c,is_median.
std::string zero_one_csv(const dynamics::ZeroOneScan& scan);

// test,p_value,pass.
std::string nist_csv(const std::vector<nist::TestResult>& results);

// value,count.
std::string histogram_csv(const std::array<std::uint64_t, 256>& counts);

}  // namespace memchaos::io
