#include "cspec/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cspec/errors.hpp"
#include "cspec/parallel.hpp"

namespace cspec {

uint64_t SplitMix64::mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t SplitMix64::next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
}

uint64_t SplitMix64::below(uint64_t n) {
    if (n == 0) throw UsageError("empty range");
    // Rejection keeps the draw exactly uniform.
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return v % n;
}

// ------------------------------------------------------------- streams

namespace {

int8_t level_of(char c) {
    if (c == 'z') return 0;
    return c == '1' ? 1 : -1;
}

void generate_codewords(const StreamConfig& cfg, SplitMix64& rng, Stream& s) {
    const Codebook cb = enumerate_codebook(cfg.family);
    const BridgingRule br = bridging_for(cfg.family);
    const uint64_t words = std::max<uint64_t>(1, (cfg.symbols + static_cast<uint64_t>(s.period) - 1) /
                                                     static_cast<uint64_t>(s.period));
    std::vector<std::string> text(cb.size());
    for (size_t w = 0; w < cb.size(); ++w) text[w] = cb.word_string(w);
    s.symbols.reserve(words * static_cast<uint64_t>(s.period));
    size_t cur = rng.below(cb.size());
    for (uint64_t j = 0; j < words; ++j) {
        const size_t nxt = rng.below(cb.size());
        s.symbols += text[cur];
        s.symbols += br.symbols(cb.last_bit(cur), cb.first_bit(nxt));
        cur = nxt;
    }
}

void generate_markov(const StreamConfig& cfg, SplitMix64& rng, Stream& s) {
    const int x = cfg.family.x;
    const int len = x + 1;
    const uint32_t mask = (1u << len) - 1;
    // allowed[h][b]: appending b to history h creates no forbidden pattern.
    std::vector<std::array<bool, 2>> allowed(1u << len);
    for (uint32_t h = 0; h < (1u << len); ++h) {
        std::string bits(static_cast<size_t>(len), '0');
        for (int i = 0; i < len; ++i) bits[static_cast<size_t>(i)] = static_cast<char>('0' + ((h >> (len - 1 - i)) & 1u));
        for (int b = 0; b <= 1; ++b) allowed[h][static_cast<size_t>(b)] = !contains_forbidden(bits + static_cast<char>('0' + b), cfg.family.kind, x);
    }
    uint32_t h = 0;
    auto step = [&]() {
        const bool a0 = allowed[h][0], a1 = allowed[h][1];
        int b;
        if (a0 && a1) b = rng.coin() ? 1 : 0;
        else if (a1) b = 1;
        else if (a0) b = 0;
        else throw ComputationError("constraint automaton has a dead end");
        h = ((h << 1) | static_cast<uint32_t>(b)) & mask;
        return b;
    };
    for (int i = 0; i < 64 * len; ++i) step();  // burn-in
    s.symbols.resize(cfg.symbols);
    for (uint64_t i = 0; i < cfg.symbols; ++i) s.symbols[i] = static_cast<char>('0' + step());
}

}  // namespace

Stream generate_stream(const StreamConfig& cfg) {
    cfg.family.validate();
    Stream s;
    s.family = cfg.family;
    s.period = cfg.family.period();
    SplitMix64 rng(cfg.seed);
    if (is_finite(cfg.family.kind)) {
        generate_codewords(cfg, rng, s);
    } else if (cfg.family.kind == Kind::Free) {
        s.symbols.resize(cfg.symbols);
        for (uint64_t i = 0; i < cfg.symbols; ++i) s.symbols[i] = rng.coin() ? '1' : '0';
    } else {
        generate_markov(cfg, rng, s);
    }
    s.levels.resize(s.symbols.size());
    for (size_t i = 0; i < s.symbols.size(); ++i) s.levels[i] = level_of(s.symbols[i]);
    return s;
}

long scan_stream(const Stream& s) {
    long first = -1;
    for (const auto& p : forbidden_patterns(s.family.kind, s.family.x)) {
        const size_t at = s.symbols.find(p);
        if (at == std::string::npos) continue;
        const long end = static_cast<long>(at + p.size() - 1);
        if (first < 0 || end < first) first = end;
    }
    return first;
}

// ----------------------------------------------------------- estimators

namespace {

// Phase-averaged lag-k correlation: average over phases of the per-phase
// sample means of V_t V_{t+k}, restricted to complete periods.
double lag_correlation(const std::vector<int8_t>& v, size_t usable, int period, size_t k) {
    const size_t P = static_cast<size_t>(period);
    if (P == 1) {
        int64_t acc = 0;
        const size_t n = usable - k;
        for (size_t t = 0; t < n; ++t) acc += v[t] * v[t + k];
        return static_cast<double>(acc) / static_cast<double>(n);
    }
    std::vector<int64_t> sum(P, 0), cnt(P, 0);
    for (size_t t0 = 0; t0 + k < usable; t0 += P) {
        for (size_t l = 0; l < P; ++l) {
            const size_t t = t0 + l;
            if (t + k >= usable) break;
            sum[l] += v[t] * v[t + k];
            cnt[l] += 1;
        }
    }
    double r = 0;
    for (size_t l = 0; l < P; ++l) r += static_cast<double>(sum[l]) / static_cast<double>(cnt[l]);
    return r / static_cast<double>(P);
}

}  // namespace

EstimatedAutocorr estimate_autocorr(const Stream& s, int k_max) {
    const size_t P = static_cast<size_t>(s.period);
    const size_t usable = (s.levels.size() / P) * P;
    if (k_max < 0 || usable <= static_cast<size_t>(k_max) + P) throw UsageError("stream too short for the requested lags");
    EstimatedAutocorr e;
    e.period = s.period;
    e.means.assign(P, 0.0);
    for (size_t t = 0; t < usable; ++t) e.means[t % P] += s.levels[t];
    for (auto& m : e.means) m /= static_cast<double>(usable / P);

    const size_t lags = static_cast<size_t>(k_max) + 1;
    e.total.resize(lags);
    parallel_for(lags, [&](size_t k) { e.total[k] = lag_correlation(s.levels, usable, s.period, k); });
    e.periodic.resize(lags);
    e.aperiodic.resize(lags);
    for (size_t k = 0; k < lags; ++k) {
        double acc = 0;
        for (size_t l = 0; l < P; ++l) acc += e.means[l] * e.means[(l + k) % P];
        e.periodic[k] = acc / static_cast<double>(P);
        e.aperiodic[k] = e.total[k] - e.periodic[k];
    }
    return e;
}

PsdResult estimate_psd(const Stream& s, const std::vector<double>& grid, const EstimateOptions& opt) {
    const bool codewords = is_finite(s.family.kind);
    int window;
    EstimatedAutocorr e;
    if (codewords) {
        window = 2 * s.period - 1;
        e = estimate_autocorr(s, window);
    } else {
        // Grow the lag range until the automatic window criterion is met.
        int computed = 64;
        window = -1;
        while (window < 0) {
            e = estimate_autocorr(s, computed);
            double tau = 1;
            for (int M = 1; M <= computed; ++M) {
                tau += 2 * std::abs(e.aperiodic[static_cast<size_t>(M)] / e.aperiodic[0]);
                if (M >= opt.window_c * tau) {
                    window = M;
                    break;
                }
            }
            if (window < 0) {
                if (computed >= opt.max_lag) {
                    window = computed;
                    break;
                }
                computed = std::min(opt.max_lag, computed * 2);
            }
        }
    }

    PsdResult r;
    r.family = s.family.label();
    r.method = "monte-carlo";
    r.grid = grid;
    r.notes.push_back("lag window " + std::to_string(window));
    auto& sy = r.components["S_Y"];
    sy.resize(grid.size());
    r.continuous.resize(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        double v = e.aperiodic[0];
        for (int k = 1; k <= window; ++k) {
            v += 2 * e.aperiodic[static_cast<size_t>(k)] * std::cos(2 * std::numbers::pi * grid[i] * k);
        }
        sy[i] = v;
        r.continuous[i] = psd_W(v, grid[i]);
    });
    double dc = e.aperiodic[0];
    for (int k = 1; k <= window; ++k) dc += 2 * e.aperiodic[static_cast<size_t>(k)];
    r.dc_limit = dc;
    if (codewords) {
        r.lines = lines_from_periodic(std::vector<double>(e.periodic.begin(), e.periodic.begin() + s.period), s.period).lines;
    } else if (e.periodic[0] > 0) {
        r.lines.push_back({0.0, e.periodic[0]});
    }
    return r;
}

PsdResult brute_force_spectrum(const Codebook& cb, const BridgingRule& br, const std::vector<double>& grid) {
    const int P = cb.m + br.x;
    const AutocorrSeries s = exact_autocorr(cb, br, Process::Y, 2 * P - 1);
    PsdResult r = continuous_psd_from_aperiodic(s, grid);
    r.family = cb.family.label();
    r.method = "exact";
    r.lines = discrete_lines(s).lines;
    return r;
}

Deviation compare_curves(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) throw UsageError("curves differ in length");
    Deviation d;
    for (size_t i = 0; i < a.size(); ++i) {
        const double e = std::abs(a[i] - b[i]);
        d.max_abs = std::max(d.max_abs, e);
        d.mean_abs += e;
    }
    d.mean_abs /= static_cast<double>(a.size());
    return d;
}

}  // namespace cspec
