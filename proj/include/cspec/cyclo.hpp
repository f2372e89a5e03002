#pragma once

#include <optional>
#include <vector>

#include "cspec/codebook.hpp"
#include "cspec/spectrum.hpp"

namespace cspec {

// X is the binary signal (code bits; for LOCO streams the A signal, 1 only
// on a written 1). Y is the transmitted level (0 -> -1, 1 -> +1, z -> 0).
enum class Process { X, Y };

inline constexpr int kMaxExactLength = 20;

// Phase-averaged autocorrelation of a codeword stream over lags
// 0..total.size()-1. The periodic part is the product of position means,
// (1/P) sum_l E[V_l] E[V_{l+k}]; the aperiodic part is the remainder and
// vanishes for lags >= P + x.
struct AutocorrSeries {
    int period = 1;
    Process process = Process::Y;
    std::vector<Rational> means;  // E[V_l] for l = 0..period-1
    std::vector<Rational> total;
    std::vector<Rational> periodic;
    std::vector<Rational> aperiodic;
};

// Exact expectations over independent uniformly drawn codewords. k_max
// must be at least 2P - 1 so the split covers two full periods.
AutocorrSeries exact_autocorr(const Codebook& codebook, const BridgingRule& bridging, Process process,
                              int k_max);
AutocorrSeries exact_autocorr(const ConstraintFamily& family, Process process, int k_max = -1);

// (1/P) sum_l E[V_l] E[V_{(l+k) mod P}]
Rational periodic_component_fast(const std::vector<Rational>& means, int k);

struct SpectralLines {
    int period = 1;
    double a0 = 0;
    std::vector<double> an;  // a_n for n = 0..P-1
    std::vector<SpectralLine> lines;  // impulses in [-1/2, 1/2], sinc^2 weighted
};

// Fourier coefficients of the periodic part; lines with |weight| < 1e-15
// are dropped.
SpectralLines discrete_lines(const AutocorrSeries& series);
// Same, from periodic values R(0..P-1) given as doubles.
SpectralLines lines_from_periodic(const std::vector<double>& periodic, int period);

// sinc^2(pi f) [ sum_{|k| < 2P} R_aperiodic(k) cos(2 pi f k) ] on the grid.
PsdResult continuous_psd_from_aperiodic(const AutocorrSeries& series, const std::vector<double>& grid);

// Twice the first positive frequency where the continuous component drops
// to half its DC-limit value, linearly interpolated between grid points.
std::optional<double> bandwidth_3db(const PsdResult& psd);

}  // namespace cspec
