#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memchaos/keystream.hpp"

namespace memchaos::nist {

// Packed bit string, MSB-first within each source byte: byte 0x80
// contributes bits 1,0,0,0,0,0,0,0.
class BitSequence {
  public:
    BitSequence() = default;

    // bytes.size() must equal ceil(n_bits / 8); surplus bits of the last
    // byte are ignored.
    static BitSequence from_bytes(const std::vector<std::uint8_t>& bytes,
                                  std::size_t n_bits);

    int bit(std::size_t i) const noexcept {
        return static_cast<int>((words_[i >> 6] >> (63 - (i & 63))) & 1u);
    }
    std::size_t size() const noexcept { return n_; }

  private:
    std::vector<std::uint64_t> words_;
    std::size_t n_ = 0;
};

// Draws ceil(n_bits / 8) keystream bytes and unpacks them MSB-first.
BitSequence bits_from_keystream(KeystreamGenerator& g, std::size_t n_bits);

// A test verdict: pass holds exactly when p_value >= 0.01.
struct TestResult {
    std::string name;
    double p_value;
    bool pass;
};

enum class CusumMode { forward, backward };

// The statistical tests below follow the SP 800-22 reference formulas
// (complementary error function / regularized incomplete gamma). Each
// throws DomainError naming its minimum length when the sequence is too
// short.

// Bias of ones vs zeros; n >= 100.
TestResult monobit(const BitSequence& s);

// Per-block bias, default 128-bit blocks; n >= 100.
TestResult block_frequency(const BitSequence& s, std::size_t block_len = 128);

// Count of uninterrupted symbol runs; n >= 100.
TestResult runs(const BitSequence& s);

// Distribution of the longest run of ones per block; n >= 128. Block
// size and category table switch at 6272 and 750000 bits.
TestResult longest_run(const BitSequence& s);

// Maximal partial-sum excursion of the +/-1 walk; n >= 100.
TestResult cumulative_sums(const BitSequence& s, CusumMode mode = CusumMode::forward);

// Fraction of low DFT peaks vs the 95% threshold; n >= 1000.
TestResult spectral_fft(const BitSequence& s);

// Regularity of overlapping m-bit patterns vs (m+1)-bit patterns;
// n >= 2^(m+5) (128 at the default m=2).
TestResult approximate_entropy(const BitSequence& s, int m = 2);

// Uniformity of overlapping m-bit patterns via first and second
// psi-square differences; the reported p-value is the smaller of the
// two, so a row passes only when both do. n >= 2^(m+5).
TestResult serial(const BitSequence& s, int m = 2);

// All eight tests at default parameters, cumulative sums in forward
// mode; exactly 8 rows, battery order fixed.
std::vector<TestResult> battery(const BitSequence& s);

}  // namespace memchaos::nist
