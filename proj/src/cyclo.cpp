#include "cspec/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>

#include "cspec/errors.hpp"
#include "cspec/parallel.hpp"

namespace cspec {

namespace {

using Wide = __int128;

Rational wide_ratio(Wide num, Wide den) {
    auto to_mpz = [](Wide v) {
        const bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        mpz_class hi(static_cast<unsigned long>(u >> 64));
        mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffull));
        mpz_class r = (hi << 64) + lo;
        return neg ? mpz_class(-r) : r;
    };
    Rational q(to_mpz(num), to_mpz(den));
    q.canonicalize();
    return q;
}

// Expectation engine for a stream of independent uniform codewords with
// bridges. Absolute position p lies in codeword p / P; a codeword symbol
// depends on that word only, a bridge symbol on the last bit of that word
// and the first bit of the next one.
class StreamModel {
public:
    StreamModel(const Codebook& cb, const BridgingRule& br, Process proc)
        : cb_(cb), br_(br), proc_(proc), m_(cb.m), x_(br.x), period_(cb.m + br.x) {
        levels_.resize(cb.size() * static_cast<size_t>(m_));
        for (size_t w = 0; w < cb.size(); ++w)
            for (int i = 0; i < m_; ++i)
                levels_[w * static_cast<size_t>(m_) + static_cast<size_t>(i)] = level(static_cast<char>('0' + cb.bit(w, i)));
        for (size_t w = 0; w < cb.size(); ++w) class_count_[cb.first_bit(w)][cb.last_bit(w)] += 1;
        for (int a = 0; a <= 1; ++a)
            for (int b = 0; b <= 1; ++b) {
                const std::string s = br.symbols(a, b);
                for (int i = 0; i < x_; ++i) bridge_level_[a][b].push_back(level(s[static_cast<size_t>(i)]));
            }
        const_bridge_ = br.kind == BridgeKind::ZSymbols;
    }

    int period() const { return period_; }

    // Codeword indices whose full content (first) or boundary bits only
    // (second) the symbol at p depends on.
    void deps(long p, std::set<long>& full, std::set<long>& boundary) const {
        const long j = p / period_;
        if (p % period_ < m_) {
            full.insert(j);
        } else if (!const_bridge_) {
            boundary.insert(j);
            boundary.insert(j + 1);
        }
    }

    // E[prod_{p in ps} V_p], exactly.
    Rational expect(const std::vector<long>& ps) const {
        std::set<long> full, boundary;
        for (long p : ps) deps(p, full, boundary);
        for (long j : full) boundary.erase(j);
        std::vector<std::pair<long, bool>> vars;  // (index, is_full)
        for (long j : full) vars.emplace_back(j, true);
        for (long j : boundary) vars.emplace_back(j, false);
        std::sort(vars.begin(), vars.end());

        // Assignment per variable: word index (full) or (first, last) class.
        std::vector<long> word(vars.size(), -1);
        std::vector<int> first(vars.size()), last(vars.size());
        Wide sum = 0;
        const Wide n = static_cast<Wide>(cb_.size());
        Wide denom = 1;
        for (size_t i = 0; i < vars.size(); ++i) denom *= n;

        auto var_of = [&](long j) {
            for (size_t i = 0; i < vars.size(); ++i)
                if (vars[i].first == j) return i;
            throw ComputationError("internal: missing codeword variable");
        };
        auto value = [&](long p) -> int {
            const long j = p / period_;
            const int r = static_cast<int>(p % period_);
            if (r < m_) return levels_[static_cast<size_t>(word[var_of(j)]) * static_cast<size_t>(m_) + static_cast<size_t>(r)];
            if (const_bridge_) return bridge_level_[0][0][static_cast<size_t>(r - m_)];
            return bridge_level_[last[var_of(j)]][first[var_of(j + 1)]][static_cast<size_t>(r - m_)];
        };

        std::function<void(size_t, Wide)> rec = [&](size_t i, Wide weight) {
            if (i == vars.size()) {
                Wide prod = weight;
                for (long p : ps) prod *= value(p);
                sum += prod;
                return;
            }
            if (vars[i].second) {
                for (size_t w = 0; w < cb_.size(); ++w) {
                    word[i] = static_cast<long>(w);
                    first[i] = cb_.first_bit(w);
                    last[i] = cb_.last_bit(w);
                    rec(i + 1, weight);
                }
            } else {
                for (int f = 0; f <= 1; ++f)
                    for (int l = 0; l <= 1; ++l) {
                        if (class_count_[f][l] == 0) continue;
                        first[i] = f;
                        last[i] = l;
                        rec(i + 1, weight * static_cast<Wide>(class_count_[f][l]));
                    }
            }
        };
        rec(0, 1);
        return wide_ratio(sum, denom);
    }

    bool independent(long p, long q) const {
        std::set<long> fa, ba, fb, bb;
        deps(p, fa, ba);
        deps(q, fb, bb);
        fa.insert(ba.begin(), ba.end());
        fb.insert(bb.begin(), bb.end());
        for (long j : fa)
            if (fb.count(j)) return false;
        return true;
    }

private:
    int level(char c) const {
        if (proc_ == Process::X) return c == '1' ? 1 : 0;
        if (c == 'z') return 0;
        return c == '1' ? 1 : -1;
    }

    const Codebook& cb_;
    BridgingRule br_;
    Process proc_;
    int m_, x_, period_;
    std::vector<int> levels_;
    uint64_t class_count_[2][2] = {{0, 0}, {0, 0}};
    std::vector<int> bridge_level_[2][2];
    bool const_bridge_ = false;
};

}  // namespace

AutocorrSeries exact_autocorr(const Codebook& cb, const BridgingRule& bridging, Process process, int k_max) {
    if (cb.words.empty()) throw UsageError("empty codebook");
    if (cb.m > kMaxExactLength) {
        throw CapacityError("exact autocorrelation is limited to m <= " + std::to_string(kMaxExactLength));
    }
    const StreamModel model(cb, bridging, process);
    const int P = model.period();
    if (k_max < 2 * P - 1) {
        throw UsageError("k_max must be at least 2(m+x)-1 = " + std::to_string(2 * P - 1));
    }
    AutocorrSeries s;
    s.period = P;
    s.process = process;
    s.means.resize(static_cast<size_t>(P));
    for (int l = 0; l < P; ++l) s.means[static_cast<size_t>(l)] = model.expect({l});

    const size_t lags = static_cast<size_t>(k_max) + 1;
    s.total.assign(lags, Rational(0));
    parallel_for(lags, [&](size_t k) {
        Rational acc = 0;
        for (long l = 0; l < P; ++l) {
            const long q = l + static_cast<long>(k);
            if (model.independent(l, q)) {
                acc += s.means[static_cast<size_t>(l)] * s.means[static_cast<size_t>(q % P)];
            } else {
                acc += model.expect({l, q});
            }
        }
        s.total[k] = acc / P;
    });
    s.periodic.resize(lags);
    s.aperiodic.resize(lags);
    for (size_t k = 0; k < lags; ++k) {
        s.periodic[k] = periodic_component_fast(s.means, static_cast<int>(k));
        s.aperiodic[k] = s.total[k] - s.periodic[k];
    }
    return s;
}

AutocorrSeries exact_autocorr(const ConstraintFamily& family, Process process, int k_max) {
    family.validate();
    if (!is_finite(family.kind)) throw UsageError("exact autocorrelation needs a finite-length family");
    if (*family.m > kMaxExactLength) {
        throw CapacityError("exact autocorrelation is limited to m <= " + std::to_string(kMaxExactLength));
    }
    const Codebook cb = enumerate_codebook(family);
    const int P = family.period();
    return exact_autocorr(cb, bridging_for(family), process, k_max < 0 ? 2 * P - 1 : k_max);
}

Rational periodic_component_fast(const std::vector<Rational>& means, int k) {
    const int P = static_cast<int>(means.size());
    if (P == 0) throw UsageError("no position means");
    const int shift = ((k % P) + P) % P;
    Rational acc = 0;
    for (int l = 0; l < P; ++l) acc += means[static_cast<size_t>(l)] * means[static_cast<size_t>((l + shift) % P)];
    return acc / P;
}

SpectralLines discrete_lines(const AutocorrSeries& s) {
    std::vector<double> periodic(static_cast<size_t>(s.period));
    for (int k = 0; k < s.period; ++k) periodic[static_cast<size_t>(k)] = s.periodic[static_cast<size_t>(k)].get_d();
    return lines_from_periodic(periodic, s.period);
}

SpectralLines lines_from_periodic(const std::vector<double>& periodic, int P) {
    if (static_cast<int>(periodic.size()) < P) throw UsageError("need one full period of periodic values");
    SpectralLines out;
    out.period = P;
    out.an.resize(static_cast<size_t>(P));
    for (int n = 0; n < P; ++n) {
        double a = 0;
        for (int k = 0; k < P; ++k) a += periodic[static_cast<size_t>(k)] * std::cos(2 * std::numbers::pi * n * k / P);
        out.an[static_cast<size_t>(n)] = 2.0 * a / P;
    }
    out.a0 = out.an[0];
    for (int n = -P / 2; n <= P / 2; ++n) {
        const double f = static_cast<double>(n) / P;
        const double w = sinc2(f) * out.an[static_cast<size_t>(((n % P) + P) % P)] / 2;
        if (std::abs(w) < 1e-15) continue;
        out.lines.push_back({f, w});
    }
    return out;
}

PsdResult continuous_psd_from_aperiodic(const AutocorrSeries& s, const std::vector<double>& grid) {
    const size_t lags = std::min(s.aperiodic.size(), static_cast<size_t>(2 * s.period));
    std::vector<double> r(lags);
    for (size_t k = 0; k < lags; ++k) r[k] = s.aperiodic[k].get_d();
    PsdResult out;
    out.method = "autocorrelation";
    out.grid = grid;
    auto& sy = out.components["S_Y"];
    sy.resize(grid.size());
    out.continuous.resize(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        double v = r[0];
        for (size_t k = 1; k < lags; ++k) v += 2 * r[k] * std::cos(2 * std::numbers::pi * grid[i] * static_cast<double>(k));
        sy[i] = v;
        out.continuous[i] = psd_W(v, grid[i]);
    }
    double dc = r[0];
    for (size_t k = 1; k < lags; ++k) dc += 2 * r[k];
    out.dc_limit = dc;
    return out;
}

std::optional<double> bandwidth_3db(const PsdResult& psd) {
    const double level = 0.5 * psd.dc_limit;
    for (size_t i = 0; i + 1 < psd.grid.size(); ++i) {
        if (psd.grid[i] <= 0) continue;
        const double a = psd.continuous[i], b = psd.continuous[i + 1];
        if (a >= level && b < level) {
            const double t = (level - a) / (b - a);
            return 2 * (psd.grid[i] + t * (psd.grid[i + 1] - psd.grid[i]));
        }
    }
    return std::nullopt;
}

}  // namespace cspec
