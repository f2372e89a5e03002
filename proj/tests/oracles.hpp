#pragma once

// Small, deliberately naive reference computations used as test oracles.
// Nothing here calls into the library: codebooks come from filtering all
// bit strings, expectations from explicit enumeration, and stationary
// chains from power iteration in double precision.

#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> forbidden(bool symmetric, int x) {
    std::vector<std::string> p;
    for (int k = 1; k <= x; ++k) {
        p.push_back("1" + std::string(static_cast<size_t>(k), '0') + "1");
        if (symmetric) p.push_back("0" + std::string(static_cast<size_t>(k), '1') + "0");
    }
    return p;
}

inline bool valid(const std::string& s, bool symmetric, int x) {
    for (const auto& p : forbidden(symmetric, x))
        if (s.find(p) != std::string::npos) return false;
    return true;
}

// All valid length-m strings in increasing binary order.
inline std::vector<std::string> words(bool symmetric, int x, int m, bool clocked = false) {
    std::vector<std::string> out;
    for (unsigned long v = 0; v < (1ul << m); ++v) {
        std::string s(static_cast<size_t>(m), '0');
        for (int i = 0; i < m; ++i) s[static_cast<size_t>(i)] = ((v >> (m - 1 - i)) & 1u) ? '1' : '0';
        if (clocked && (s == std::string(s.size(), '0') || s == std::string(s.size(), '1'))) continue;
        if (valid(s, symmetric, x)) out.push_back(s);
    }
    return out;
}

// A stream of independent uniform codewords separated by x bridge symbols.
struct CodewordStream {
    std::vector<std::string> words;
    int x = 1;
    bool loco = false;  // z bridges; otherwise 1^x between two 1s, else 0^x

    int m() const { return static_cast<int>(words.front().size()); }
    int period() const { return m() + x; }

    char bridge(const std::string& a, const std::string& b) const {
        if (loco) return 'z';
        return (a.back() == '1' && b.front() == '1') ? '1' : '0';
    }
};

inline double level_y(char c) { return c == '1' ? 1.0 : (c == '0' ? -1.0 : 0.0); }

// E[Y_p Y_q] (or E[Y_p] when q < 0) by enumerating every codeword the two
// symbols depend on.
inline double expectation(const CodewordStream& s, long p, long q) {
    const int P = s.period();
    auto deps = [&](long pos, std::set<long>& out) {
        out.insert(pos / P);
        if (pos % P >= s.m()) out.insert(pos / P + 1);
    };
    std::set<long> idx;
    deps(p, idx);
    if (q >= 0) deps(q, idx);
    const std::vector<long> vars(idx.begin(), idx.end());
    std::vector<size_t> pick(vars.size());
    auto word_at = [&](long j) -> const std::string& {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == j) return s.words[pick[i]];
        throw std::logic_error("oracle: missing word");
    };
    auto symbol = [&](long pos) {
        const long j = pos / P;
        const int r = static_cast<int>(pos % P);
        if (r < s.m()) return word_at(j)[static_cast<size_t>(r)];
        return s.bridge(word_at(j), word_at(j + 1));
    };
    double sum = 0;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == vars.size()) {
            double v = level_y(symbol(p));
            if (q >= 0) v *= level_y(symbol(q));
            sum += v;
            return;
        }
        for (size_t w = 0; w < s.words.size(); ++w) {
            pick[i] = w;
            rec(i + 1);
        }
    };
    rec(0);
    return sum / std::pow(static_cast<double>(s.words.size()), static_cast<double>(vars.size()));
}

inline std::vector<double> position_means(const CodewordStream& s) {
    std::vector<double> mu(static_cast<size_t>(s.period()));
    for (int l = 0; l < s.period(); ++l) mu[static_cast<size_t>(l)] = expectation(s, l, -1);
    return mu;
}

// Phase-averaged autocorrelation for lags 0..lags-1.
inline std::vector<double> autocorr(const CodewordStream& s, int lags) {
    const int P = s.period();
    std::vector<double> r(static_cast<size_t>(lags));
    for (int k = 0; k < lags; ++k) {
        double acc = 0;
        for (int l = 0; l < P; ++l) acc += expectation(s, l, l + k);
        r[static_cast<size_t>(k)] = acc / P;
    }
    return r;
}

inline double sinc2(double f) {
    if (f == 0) return 1;
    const double a = std::numbers::pi * f;
    return std::sin(a) * std::sin(a) / (a * a);
}

// sum_k r(|k|) cos(2 pi f k) over the given one-sided lags.
inline double cosine_sum(const std::vector<double>& r, double f) {
    double v = r[0];
    for (size_t k = 1; k < r.size(); ++k) v += 2 * r[k] * std::cos(2 * std::numbers::pi * f * static_cast<double>(k));
    return v;
}

// Continuous S_W of a codeword stream: the autocorrelation minus its
// periodic part (product of position means), transformed over |k| < 2P.
inline std::vector<double> codeword_psd(const CodewordStream& s, const std::vector<double>& grid) {
    const int P = s.period();
    const std::vector<double> mu = position_means(s);
    std::vector<double> r = autocorr(s, 2 * P);
    for (int k = 0; k < 2 * P; ++k) {
        double per = 0;
        for (int l = 0; l < P; ++l) per += mu[static_cast<size_t>(l)] * mu[static_cast<size_t>((l + k) % P)];
        r[static_cast<size_t>(k)] -= per / P;
    }
    std::vector<double> out(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) out[i] = sinc2(grid[i]) * cosine_sum(r, grid[i]);
    return out;
}

// Markov chain over the last x+1 bits of an infinite constrained sequence,
// choosing uniformly among the allowed next bits.
struct Chain {
    std::vector<std::string> states;
    std::vector<std::vector<double>> P;  // row-stochastic
    std::vector<double> pi;
};

inline Chain infinite_chain(bool symmetric, int x) {
    Chain c;
    const int h = x + 1;
    for (unsigned v = 0; v < (1u << h); ++v) {
        std::string s(static_cast<size_t>(h), '0');
        for (int i = 0; i < h; ++i) s[static_cast<size_t>(i)] = ((v >> (h - 1 - i)) & 1u) ? '1' : '0';
        if (valid(s, symmetric, x)) c.states.push_back(s);
    }
    const size_t n = c.states.size();
    c.P.assign(n, std::vector<double>(n, 0));
    auto index = [&](const std::string& s) {
        for (size_t i = 0; i < n; ++i)
            if (c.states[i] == s) return i;
        return n;
    };
    for (size_t i = 0; i < n; ++i) {
        std::vector<size_t> next;
        for (char b : {'0', '1'}) {
            const std::string ext = c.states[i] + b;
            if (valid(ext, symmetric, x)) next.push_back(index(ext.substr(1)));
        }
        for (size_t j : next) c.P[i][j] += 1.0 / static_cast<double>(next.size());
    }
    c.pi.assign(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < 200000; ++it) {
        std::vector<double> nx(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) nx[j] += c.pi[i] * c.P[i][j];
        double diff = 0;
        for (size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(nx[j] - c.pi[j]));
        c.pi = nx;
        if (diff < 1e-16) break;
    }
    return c;
}

// Covariance of the +-1 levels of the chain's newest bit for lags 0..lags-1.
inline std::vector<double> chain_covariance(const Chain& c, int lags) {
    const size_t n = c.states.size();
    std::vector<double> y(n), v(n);
    double mean = 0;
    for (size_t i = 0; i < n; ++i) {
        y[i] = c.states[i].back() == '1' ? 1.0 : -1.0;
        mean += c.pi[i] * y[i];
        v[i] = c.pi[i] * y[i];
    }
    std::vector<double> r(static_cast<size_t>(lags));
    for (int k = 0; k < lags; ++k) {
        double acc = 0;
        for (size_t i = 0; i < n; ++i) acc += v[i] * y[i];
        r[static_cast<size_t>(k)] = acc - mean * mean;
        std::vector<double> nx(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) nx[j] += v[i] * c.P[i][j];
        v = nx;
    }
    return r;
}

}  // namespace oracle
