#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cspec/codebook.hpp"
#include "cspec/cyclo.hpp"
#include "cspec/spectrum.hpp"

namespace cspec {

// SplitMix64: a counter-based generator whose output i is
// mix(seed + (i+1) * golden_gamma), so a trial seeded from its index via
// mix() gets a stream independent of the others.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}
    uint64_t next();
    // Uniform integer in [0, n) without modulo bias.
    uint64_t below(uint64_t n);
    bool coin() { return (next() >> 63) != 0; }
    static uint64_t mix(uint64_t z);

private:
    uint64_t state_;
};

struct StreamConfig {
    ConstraintFamily family;
    uint64_t symbols = 10'000'000;  // target stream length
    uint64_t seed = 1;
};

// A generated stream: raw symbols ('0', '1', 'z') and transmitted levels.
struct Stream {
    ConstraintFamily family;
    int period = 1;  // m + x for codeword streams, 1 otherwise
    std::string symbols;
    std::vector<int8_t> levels;
};

// Finite families: independent uniform codewords with bridges. Infinite
// families: a bit at a time, uniformly among the allowed continuations.
// Free: fair coin flips.
Stream generate_stream(const StreamConfig& config);

// Index of the first symbol that completes a forbidden pattern, or -1.
long scan_stream(const Stream& stream);

// Phase-averaged sample autocorrelation of the levels.
struct EstimatedAutocorr {
    int period = 1;
    std::vector<double> means;
    std::vector<double> total;
    std::vector<double> periodic;
    std::vector<double> aperiodic;
};

EstimatedAutocorr estimate_autocorr(const Stream& stream, int k_max);

struct EstimateOptions {
    // Automatic window for stationary streams: the smallest M with
    // M >= c * tau(M), tau(M) = 1 + 2 sum_{k<=M} |rho(k)|.
    double window_c = 10.0;
    int max_lag = 2048;
};

// Lag-window transform of the estimated aperiodic autocorrelation plus
// estimated line weights. Codeword streams use lags |k| < 2P.
PsdResult estimate_psd(const Stream& stream, const std::vector<double>& grid,
                       const EstimateOptions& options = {});

// Fully exact spectrum from the codeword-pair expectations (m <= 20).
PsdResult brute_force_spectrum(const Codebook& codebook, const BridgingRule& bridging,
                               const std::vector<double>& grid);

struct Deviation {
    double max_abs = 0;
    double mean_abs = 0;
};
Deviation compare_curves(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cspec
