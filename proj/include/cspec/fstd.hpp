#pragma once

#include <string>
#include <vector>

#include "cspec/codebook.hpp"
#include "cspec/ratfn.hpp"

namespace cspec {

inline constexpr int kStationary = -1;

struct FstdState {
    int column = kStationary;  // position within the period, or kStationary
    std::string history;       // most recent symbols, newest last
    bool labeled = false;      // the newest symbol is a 1
};

struct FstdEdge {
    int from = 0;
    int to = 0;
    char symbol = '0';
    Rational prob;
};

// Per-symbol transition diagram. Every edge into a state carries the
// state's newest symbol, so the symbol is implied by the destination.
struct Fstd {
    std::vector<FstdState> states;
    std::vector<FstdEdge> edges;
    int period = 1;

    std::string state_name(int i) const;
    std::vector<std::vector<int>> out_edges() const;
    // Throws ComputationError if a state's outgoing mass is not exactly 1
    // or an incoming edge disagrees with the destination's newest symbol.
    void check() const;
};

// Which binary signal the grid method tracks.
enum class SignalView {
    Bits,         // the code bits themselves (A-LOCO bridges are 0s or 1s)
    LocoAFlipped, // LOCO: 0 -> 1, 1 -> 0, z -> 1
    LocoA,        // LOCO: 1 -> 1, everything else -> 0
};

Fstd build_infinite_fstd(const ConstraintFamily& family);

// Positional grid: one column per symbol of codeword plus bridge, each
// state keyed by the last x+1 symbols. Probabilities are exact frequencies
// over uniformly drawn consecutive codewords. With merge = true, states
// with identical exit behaviour are collapsed.
Fstd build_grid_fstd(const Codebook& codebook, const BridgingRule& bridging, SignalView view,
                     bool merge = true);

// Coarsest partition that refines "newest symbol" and in which members of
// a class move to every other class with the same total probability.
// Returns the class index of each state.
std::vector<int> equivalence_classes(const Fstd& fstd);
Fstd merge_equivalent(const Fstd& fstd);

struct RunTerm {
    int t = 1;
    Rational p;
};

// sum_{k>=1} c0 * ratio^{k-1} * D^{b + period*(k-1)}
struct GeometricFamily {
    Rational c0;
    int b = 1;
    Rational ratio;
    int period = 1;

    Rational total() const { return c0 / (1 - ratio); }
};

struct OstdEdge {
    int from = 0;
    int to = 0;
    std::vector<RunTerm> runs;  // sorted by t, one entry per t
    std::vector<GeometricFamily> families;

    Rational total() const;
};

// One-step diagram over the labeled states of an FSTD; edges carry run
// lengths (zeros plus the closing 1).
struct Ostd {
    std::vector<std::string> names;
    std::vector<OstdEdge> edges;

    size_t size() const { return names.size(); }
    // Total outgoing mass per state (each should be exactly 1).
    std::vector<Rational> outgoing_mass() const;
};

Ostd reduce_to_ostd(const Fstd& fstd);

}  // namespace cspec
