#pragma once

#include <string>
#include <vector>

#include "cspec/codebook.hpp"
#include "cspec/fstd.hpp"
#include "cspec/transfer.hpp"

namespace cspec {

// Symbol-level diagram of a self-clocked stream. Codeword states are the
// prefixes of the codebook (the rest of a word depends only on its prefix);
// bridge states record the bridge symbol, the position inside the bridge
// and which first bit the next codeword must have.
struct ClockedFstd {
    ConstraintFamily family;
    Fstd fstd;                      // history = the state's signal symbol
    std::vector<std::string> keys;  // "p:<prefix>" or "b:<symbol><index>><next>"
};

// Valid for caloco and cloco; for cloco the tracked signal is A (1 only on
// a written 1, z counts as not 1).
ClockedFstd build_clocked_fstd(const ConstraintFamily& family);

struct ClockedInputs {
    RationalMatrix P;       // column-stochastic: P[i][j] = Pr(j -> i)
    std::vector<int> w;     // 1 on states whose incoming edges carry a 1
    RationalMatrix V;       // diag(w)
    RationalMatrix target;  // w w^T
    int k_eff = 0;          // 2(m-1) + x
    std::vector<std::string> names;
};

ClockedInputs clocked_inputs_from_fstd(const ClockedFstd& fstd);

struct BfsResult {
    Ostd ostd;
    int iterations = 0;
    int max_steps = 0;  // largest recorded run
};

// Bounded breadth-first propagation: for d = 1..k_eff+1, V1 = P V, harvest
// target .* V1 as runs of length d, and keep only the mass that has not
// yet reached a labeled state. Exact arithmetic; throws if any mass is
// left after the last iteration.
BfsResult bfs_ostd(const ClockedInputs& inputs);

// Reference OSTD from explicit enumeration of the current word's
// completion and the next codeword, labeled states in FSTD order.
Ostd brute_force_clocked_ostd(const ClockedFstd& fstd);

// Same states, edges and run lists, exactly.
bool same_ostd(const Ostd& a, const Ostd& b);

}  // namespace cspec
