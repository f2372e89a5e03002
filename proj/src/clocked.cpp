#include "cspec/clocked.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "cspec/errors.hpp"

namespace cspec {

namespace {

std::string prefix_key(const std::string& p) { return "p:" + p; }

std::string bridge_key(char symbol, int index, char next) {
    return "b:" + std::string(1, symbol) + std::to_string(index) + ">" + std::string(1, next);
}

// Bridge symbol and next-word restriction between a word ending in
// `last` and one starting with `first`.
std::pair<char, char> bridge_between(bool z_bridge, int last, int first) {
    if (z_bridge) return {'z', '*'};
    if (last == 1 && first == 1) return {'1', '1'};
    return {'0', last == 1 ? '0' : '*'};
}

char signal_of(char c) { return c == '1' ? '1' : '0'; }

Rational ratio(uint64_t a, uint64_t b) { return frac(static_cast<long long>(a), static_cast<long long>(b)); }

}  // namespace

ClockedFstd build_clocked_fstd(const ConstraintFamily& family) {
    family.validate();
    if (!is_clocked(family.kind)) throw UsageError("clocked diagrams need caloco or cloco");
    const Codebook cb = enumerate_codebook(family);
    if (cb.words.empty()) throw UsageError("empty codebook for " + family.label());
    const int m = cb.m;
    const int x = family.x;
    const bool z_bridge = uses_z_bridge(family.kind);

    std::map<std::string, uint64_t> count;  // words per prefix
    for (size_t w = 0; w < cb.size(); ++w) {
        const std::string s = cb.word_string(w);
        for (int len = 1; len <= m; ++len) count[s.substr(0, static_cast<size_t>(len))] += 1;
    }
    const uint64_t N = cb.size();
    const uint64_t n0 = count.count("0") ? count["0"] : 0;
    const uint64_t n1 = count.count("1") ? count["1"] : 0;

    ClockedFstd out;
    out.family = family;
    Fstd& f = out.fstd;
    f.period = m + x;
    std::map<std::string, int> id;
    auto add_state = [&](const std::string& key, int column, char symbol) {
        id[key] = static_cast<int>(f.states.size());
        f.states.push_back({column, std::string(1, symbol), symbol == '1'});
        out.keys.push_back(key);
    };

    // Prefix states, shortest first.
    std::vector<std::string> prefixes;
    for (const auto& [p, n] : count) prefixes.push_back(p);
    std::stable_sort(prefixes.begin(), prefixes.end(),
                     [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
    for (const auto& p : prefixes) add_state(prefix_key(p), static_cast<int>(p.size()) - 1, p.back());

    // Bridge kinds that actually occur.
    bool ends[2] = {false, false};
    for (size_t w = 0; w < cb.size(); ++w) ends[cb.last_bit(w)] = true;
    std::vector<std::pair<char, char>> kinds;
    for (int last = 0; last <= 1; ++last) {
        if (!ends[last]) continue;
        for (int first = 0; first <= 1; ++first) {
            if ((first ? n1 : n0) == 0) continue;
            const auto k = bridge_between(z_bridge, last, first);
            if (std::find(kinds.begin(), kinds.end(), k) == kinds.end()) kinds.push_back(k);
        }
    }
    std::sort(kinds.begin(), kinds.end());
    for (const auto& [sym, next] : kinds)
        for (int i = 1; i <= x; ++i) add_state(bridge_key(sym, i, next), m + i - 1, signal_of(sym));

    auto edge = [&](const std::string& from, const std::string& to, const Rational& p) {
        const int t = id.at(to);
        f.edges.push_back({id.at(from), t, f.states[static_cast<size_t>(t)].history[0], p});
    };
    auto enter_word = [&](const std::string& from, char restriction) {
        if (restriction == '1') {
            edge(from, prefix_key("1"), Rational(1));
        } else if (restriction == '0') {
            edge(from, prefix_key("0"), Rational(1));
        } else {
            if (n0) edge(from, prefix_key("0"), ratio(n0, N));
            if (n1) edge(from, prefix_key("1"), ratio(n1, N));
        }
    };

    for (const auto& p : prefixes) {
        if (static_cast<int>(p.size()) < m) {
            for (char b : {'0', '1'}) {
                auto it = count.find(p + b);
                if (it != count.end()) edge(prefix_key(p), prefix_key(p + b), ratio(it->second, count[p]));
            }
            continue;
        }
        const int last = p.back() - '0';
        // The bridge after a complete word is decided by the next word's
        // first bit, drawn uniformly over the whole codebook.
        std::map<std::string, Rational> next;
        for (int first = 0; first <= 1; ++first) {
            const uint64_t n = first ? n1 : n0;
            if (n == 0) continue;
            const auto [sym, restriction] = bridge_between(z_bridge, last, first);
            next[bridge_key(sym, 1, restriction)] += ratio(n, N);
        }
        for (const auto& [key, prob] : next) edge(prefix_key(p), key, prob);
    }
    for (const auto& [sym, restriction] : kinds) {
        for (int i = 1; i < x; ++i) edge(bridge_key(sym, i, restriction), bridge_key(sym, i + 1, restriction), Rational(1));
        enter_word(bridge_key(sym, x, restriction), restriction);
    }
    f.check();
    return out;
}

ClockedInputs clocked_inputs_from_fstd(const ClockedFstd& cf) {
    const Fstd& f = cf.fstd;
    const size_t t = f.states.size();
    // Every incoming edge must carry the destination's symbol.
    for (const auto& e : f.edges) {
        if (f.states[static_cast<size_t>(e.to)].history[0] != e.symbol) {
            throw ComputationError("state " + cf.keys[static_cast<size_t>(e.to)] + " has mixed incoming labels");
        }
    }
    ClockedInputs in;
    in.names = cf.keys;
    in.k_eff = 2 * (*cf.family.m - 1) + cf.family.x;
    in.P.assign(t, std::vector<Rational>(t, Rational(0)));
    for (const auto& e : f.edges) in.P[static_cast<size_t>(e.to)][static_cast<size_t>(e.from)] += e.prob;
    in.w.resize(t);
    for (size_t i = 0; i < t; ++i) in.w[i] = f.states[i].labeled ? 1 : 0;
    in.V.assign(t, std::vector<Rational>(t, Rational(0)));
    in.target.assign(t, std::vector<Rational>(t, Rational(0)));
    for (size_t i = 0; i < t; ++i) {
        in.V[i][i] = in.w[i];
        for (size_t j = 0; j < t; ++j) in.target[i][j] = in.w[i] * in.w[j];
    }
    return in;
}

namespace {

Ostd assemble(const std::vector<std::string>& names, const std::vector<int>& w,
              const std::map<std::pair<size_t, size_t>, std::map<int, Rational>>& runs) {
    Ostd o;
    std::vector<int> lab(names.size(), -1);
    for (size_t i = 0; i < names.size(); ++i) {
        if (!w[i]) continue;
        lab[i] = static_cast<int>(o.names.size());
        o.names.push_back(names[i]);
    }
    for (const auto& [key, by_t] : runs) {
        OstdEdge e;
        e.from = lab[key.first];
        e.to = lab[key.second];
        for (const auto& [t, p] : by_t) e.runs.push_back({t, p});
        o.edges.push_back(std::move(e));
    }
    std::sort(o.edges.begin(), o.edges.end(),
              [](const OstdEdge& a, const OstdEdge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    return o;
}

}  // namespace

BfsResult bfs_ostd(const ClockedInputs& in) {
    const size_t t = in.P.size();
    RationalMatrix V = in.V;
    // (source j, destination i) -> steps -> probability
    std::map<std::pair<size_t, size_t>, std::map<int, Rational>> runs;
    BfsResult r;
    for (int d = 1; d <= in.k_eff + 1; ++d) {
        ++r.iterations;
        RationalMatrix V1(t, std::vector<Rational>(t, Rational(0)));
        for (size_t i = 0; i < t; ++i)
            for (size_t k = 0; k < t; ++k) {
                if (in.P[i][k] == 0) continue;
                for (size_t j = 0; j < t; ++j)
                    if (V[k][j] != 0) V1[i][j] += in.P[i][k] * V[k][j];
            }
        for (size_t i = 0; i < t; ++i)
            for (size_t j = 0; j < t; ++j) {
                const Rational v2 = in.target[i][j] * V1[i][j];
                if (v2 == 0) continue;
                runs[{j, i}][d] += v2;
                r.max_steps = std::max(r.max_steps, d);
                V1[i][j] = 0;
            }
        V = std::move(V1);
    }
    for (size_t i = 0; i < t; ++i)
        for (size_t j = 0; j < t; ++j)
            if (V[i][j] != 0) {
                throw ComputationError("probability mass from " + in.names[j] + " has not reached a labeled state after " +
                                       std::to_string(in.k_eff + 1) + " steps");
            }
    r.ostd = assemble(in.names, in.w, runs);
    return r;
}

Ostd brute_force_clocked_ostd(const ClockedFstd& cf) {
    const Codebook cb = enumerate_codebook(cf.family);
    const bool z_bridge = uses_z_bridge(cf.family.kind);
    const int m = cb.m;
    const int x = cf.family.x;
    std::vector<std::string> words;
    for (size_t w = 0; w < cb.size(); ++w) words.push_back(cb.word_string(w));
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < cf.keys.size(); ++i) index[cf.keys[i]] = i;

    std::map<std::pair<size_t, size_t>, std::map<int, Rational>> runs;
    // Walks the explicit symbol sequence `tail` (each symbol paired with
    // the key of the state it enters) until the first 1.
    auto walk = [&](size_t src, const std::vector<std::pair<char, std::string>>& tail, const Rational& p) {
        for (size_t d = 0; d < tail.size(); ++d) {
            if (tail[d].first != '1') continue;
            runs[{src, index.at(tail[d].second)}][static_cast<int>(d) + 1] += p;
            return;
        }
        throw ComputationError("no 1 within the enumerated continuation");
    };
    auto word_symbols = [&](const std::string& w, size_t from, std::vector<std::pair<char, std::string>>& out) {
        for (size_t q = from; q < w.size(); ++q) out.emplace_back(w[q], prefix_key(w.substr(0, q + 1)));
    };

    for (size_t s = 0; s < cf.keys.size(); ++s) {
        if (!cf.fstd.states[s].labeled) continue;
        const std::string& key = cf.keys[s];
        if (key[0] == 'p') {
            const std::string prefix = key.substr(2);
            std::vector<const std::string*> completions;
            for (const auto& w : words)
                if (w.compare(0, prefix.size(), prefix) == 0) completions.push_back(&w);
            const Rational p = ratio(1, completions.size() * words.size());
            for (const std::string* b : completions) {
                for (const auto& c : words) {
                    std::vector<std::pair<char, std::string>> tail;
                    word_symbols(*b, prefix.size(), tail);
                    const auto [sym, next] = bridge_between(z_bridge, b->back() - '0', c[0] - '0');
                    for (int i = 1; i <= x; ++i) tail.emplace_back(sym, bridge_key(sym, i, next));
                    word_symbols(c, 0, tail);
                    walk(s, tail, p);
                }
            }
        } else {
            // "b:<sym><index>><next>"
            const char sym = key[2];
            const size_t gt = key.find('>');
            const int i0 = std::stoi(key.substr(3, gt - 3));
            const char next = key[gt + 1];
            std::vector<const std::string*> allowed;
            for (const auto& c : words)
                if (next == '*' || c[0] == next) allowed.push_back(&c);
            const Rational p = ratio(1, allowed.size());
            for (const std::string* c : allowed) {
                std::vector<std::pair<char, std::string>> tail;
                for (int i = i0 + 1; i <= x; ++i) tail.emplace_back(sym, bridge_key(sym, i, next));
                word_symbols(*c, 0, tail);
                walk(s, tail, p);
            }
        }
    }
    (void)m;
    std::vector<int> w(cf.keys.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = cf.fstd.states[i].labeled ? 1 : 0;
    return assemble(cf.keys, w, runs);
}

bool same_ostd(const Ostd& a, const Ostd& b) {
    if (a.names != b.names || a.edges.size() != b.edges.size()) return false;
    for (size_t k = 0; k < a.edges.size(); ++k) {
        const OstdEdge& e = a.edges[k];
        const OstdEdge& g = b.edges[k];
        if (e.from != g.from || e.to != g.to || e.runs.size() != g.runs.size()) return false;
        if (!e.families.empty() || !g.families.empty()) return false;
        for (size_t r = 0; r < e.runs.size(); ++r)
            if (e.runs[r].t != g.runs[r].t || e.runs[r].p != g.runs[r].p) return false;
    }
    return true;
}

}  // namespace cspec
