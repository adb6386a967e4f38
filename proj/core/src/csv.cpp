#include "memchaos/csv.hpp"

#include <cstdio>

namespace memchaos::io {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string lyapunov_csv(const dynamics::LyapunovSpectrum& spectrum) {
    std::string out = "index,exponent\n";
    for (std::size_t i = 0; i < spectrum.exponents.size(); ++i) {
        out += std::to_string(i + 1) + "," + num(spectrum.exponents[i]) + "\n";
    }
    return out;
}

std::string bifurcation_csv(const dynamics::BifurcationData& data) {
    std::string out = "alpha,extremum\n";
    for (const auto& row : data.rows) {
        out += num(row.alpha) + "," + num(row.extremum) + "\n";
    }
    return out;
}

std::string complexity_csv(const dynamics::ComplexityMap& map) {
    std::string out = "p1,p2,se,c0,diverged\n";
    for (const auto& cell : map.cells) {
        out += num(cell.p1) + "," + num(cell.p2) + "," + num(cell.se) + "," +
               num(cell.c0) + "," + (cell.diverged ? "1" : "0") + "\n";
    }
    return out;
}

std::string zero_one_csv(const dynamics::ZeroOneScan& scan) {
    std::string out = "c,K_c,is_median\n";
    for (std::size_t i = 0; i < scan.c.size(); ++i) {
        out += num(scan.c[i]) + "," + num(scan.Kc[i]) + "," +
               (scan.is_median[i] ? "1" : "0") + "\n";
    }
    return out;
}

std::string nist_csv(const std::vector<nist::TestResult>& results) {
    std::string out = "test,p_value,pass\n";
    for (const auto& r : results) {
        out += r.name + "," + num(r.p_value) + "," + (r.pass ? "1" : "0") + "\n";
    }
    return out;
}

std::string histogram_csv(const std::array<std::uint64_t, 256>& counts) {
    std::string out = "value,count\n";
    for (std::size_t v = 0; v < counts.size(); ++v) {
        out += std::to_string(v) + "," + std::to_string(counts[v]) + "\n";
    }
    return out;
}

}  // namespace memchaos::io
