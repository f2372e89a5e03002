#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cspec/ratfn.hpp"

namespace cspec {

// Free is the unconstrained i.i.d. source used as the white baseline.
enum class Kind { Ax, Sx, ALoco, Loco, CALoco, CLoco, Free };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& name);

bool is_finite(Kind k);
bool is_symmetric(Kind k);  // forbids S_x rather than A_x
bool is_clocked(Kind k);
bool uses_z_bridge(Kind k);  // LOCO-style three-level streams

struct ConstraintFamily {
    Kind kind = Kind::Ax;
    int x = 1;
    std::optional<int> m;  // codeword length, finite families only

    void validate() const;
    int period() const;  // m + x for finite families, 1 otherwise
    std::string label() const;
};

// 1 0^k 1 for k = 1..x, plus 0 1^k 0 for the symmetric families.
std::vector<std::string> forbidden_patterns(Kind k, int x);
bool contains_forbidden(const std::string& bits, Kind k, int x);

struct GroupCounts {
    uint64_t N = 0;   // codebook size
    uint64_t N1 = 0;  // words starting 00 (LOCO families)
    uint64_t N2 = 0;  // words starting 11 (A-LOCO families)
    uint64_t N3 = 0;  // words starting 1 0^{x+1} (A-LOCO families)
};

struct Codebook {
    ConstraintFamily family;
    int m = 0;
    std::vector<uint64_t> words;  // MSB is the leftmost bit
    GroupCounts counts;

    size_t size() const { return words.size(); }
    int bit(size_t word, int pos) const {
        return static_cast<int>((words[word] >> (m - 1 - pos)) & 1u);
    }
    int first_bit(size_t word) const { return bit(word, 0); }
    int last_bit(size_t word) const { return bit(word, m - 1); }
    std::string word_string(size_t word) const;
    uint64_t count_prefix(const std::string& prefix) const;
};

inline constexpr int kMaxEnumerationLength = 30;

// Depth-first walk of the constraint automaton in 0-before-1 order, so
// the output is already lexicographically sorted.
Codebook enumerate_codebook(const ConstraintFamily& family);
// Reference enumeration by filtering all 2^m strings (m <= 20).
std::vector<uint64_t> enumerate_bruteforce(const ConstraintFamily& family);
// Codebook size by dynamic programming over the automaton states.
uint64_t count_by_dp(const ConstraintFamily& family);

// Group counts for the unclocked codebook of the given length; groups whose
// prefix is longer than the length are zero.
GroupCounts group_cardinalities(Kind k, int x, int length);

// Fraction of length-c A-LOCO words starting with 1 that continue with 0.
// For c >= x+2 this is N3/(N2+N3); below that the only such word is 1 0^{c-1}.
Rational aloco_alpha(int x, int c);
// N1(a)/(N(a)/2) for LOCO lengths a >= 2, zero for a <= 1.
Rational loco_lambda(int x, int a);

enum class BridgeKind { ZerosOrOnes, ZSymbols };

struct BridgingRule {
    BridgeKind kind = BridgeKind::ZerosOrOnes;
    int x = 1;
    // Symbols '0', '1' or 'z' placed between two codewords.
    std::string symbols(int prev_last_bit, int next_first_bit) const;
};

BridgingRule bridging_for(const ConstraintFamily& family);

}  // namespace cspec
