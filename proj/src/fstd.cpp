#include "cspec/fstd.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "cspec/errors.hpp"

namespace cspec {

std::string Fstd::state_name(int i) const {
    const FstdState& s = states[static_cast<size_t>(i)];
    if (s.column == kStationary) return s.history;
    return "c" + std::to_string(s.column) + ":" + s.history;
}

std::vector<std::vector<int>> Fstd::out_edges() const {
    std::vector<std::vector<int>> out(states.size());
    for (size_t e = 0; e < edges.size(); ++e) out[static_cast<size_t>(edges[e].from)].push_back(static_cast<int>(e));
    return out;
}

void Fstd::check() const {
    std::vector<Rational> mass(states.size(), Rational(0));
    std::vector<bool> has_out(states.size(), false);
    for (const auto& e : edges) {
        const auto& dest = states[static_cast<size_t>(e.to)];
        if (dest.history.empty() || dest.history.back() != e.symbol) {
            throw ComputationError("edge into " + state_name(e.to) + " carries symbol " +
                                   std::string(1, e.symbol));
        }
        mass[static_cast<size_t>(e.from)] += e.prob;
        has_out[static_cast<size_t>(e.from)] = true;
    }
    for (size_t i = 0; i < states.size(); ++i) {
        if (has_out[i] && mass[i] != 1) {
            throw ComputationError("outgoing probability of " + state_name(static_cast<int>(i)) + " is " +
                                   to_string(mass[i]));
        }
    }
}

// ------------------------------------------------------------ infinite

Fstd build_infinite_fstd(const ConstraintFamily& family) {
    family.validate();
    if (family.kind != Kind::Ax && family.kind != Kind::Sx) {
        throw UsageError("the stationary diagram is defined only for ax and sx");
    }
    const int x = family.x;
    const int len = x + 1;
    if (len > 20) throw CapacityError("x too large for the history diagram");

    auto to_bits = [len](uint32_t v) {
        std::string s(static_cast<size_t>(len), '0');
        for (int i = 0; i < len; ++i) s[static_cast<size_t>(i)] = static_cast<char>('0' + ((v >> (len - 1 - i)) & 1u));
        return s;
    };
    auto allowed = [&](const std::string& h, char b) {
        return !contains_forbidden(h + b, family.kind, x);
    };

    // Keep the histories reachable from the all-zero one; every valid
    // history has a valid continuation, so no dead ends remain.
    std::set<std::string> seen{std::string(static_cast<size_t>(len), '0')};
    std::vector<std::string> stack(seen.begin(), seen.end());
    while (!stack.empty()) {
        std::string h = stack.back();
        stack.pop_back();
        for (char b : {'0', '1'}) {
            if (!allowed(h, b)) continue;
            std::string nh = h.substr(1) + b;
            if (seen.insert(nh).second) stack.push_back(nh);
        }
    }

    Fstd f;
    f.period = 1;
    std::map<std::string, int> index;
    for (uint32_t v = 0; v < (1u << len); ++v) {
        std::string h = to_bits(v);
        if (!seen.count(h)) continue;
        index[h] = static_cast<int>(f.states.size());
        f.states.push_back({kStationary, h, h.back() == '1'});
    }
    for (const auto& st : f.states) {
        const bool both = allowed(st.history, '0') && allowed(st.history, '1');
        for (char b : {'0', '1'}) {
            if (!allowed(st.history, b)) continue;
            f.edges.push_back({index.at(st.history), index.at(st.history.substr(1) + b), b,
                               both ? frac(1, 2) : Rational(1)});
        }
    }
    return f;
}

// ---------------------------------------------------------------- grid

namespace {

char view_symbol(char c, SignalView view) {
    switch (view) {
        case SignalView::Bits:
            if (c == 'z') throw UsageError("three-level streams need a LOCO signal view");
            return c;
        case SignalView::LocoAFlipped: return c == '0' ? '1' : (c == '1' ? '0' : '1');
        case SignalView::LocoA: return c == '1' ? '1' : '0';
    }
    return c;
}

}  // namespace

Fstd build_grid_fstd(const Codebook& cb, const BridgingRule& bridging, SignalView view, bool merge) {
    if (cb.words.empty()) throw UsageError("empty codebook for " + cb.family.label());
    const int m = cb.m;
    const int x = bridging.x;
    const int period = m + x;

    // The previous word matters only through its last bit and the next one
    // only through its first bit, so those are grouped with multiplicities.
    mpz_class last_count[2] = {0, 0};
    mpz_class first_count[2] = {0, 0};
    for (size_t w = 0; w < cb.size(); ++w) {
        last_count[cb.last_bit(w)] += 1;
        first_count[cb.first_bit(w)] += 1;
    }

    using Key = std::pair<int, std::string>;
    std::map<Key, std::map<Key, mpz_class>> joint;
    for (size_t w = 0; w < cb.size(); ++w) {
        const std::string word = cb.word_string(w);
        for (int a = 0; a <= 1; ++a) {
            if (last_count[a] == 0) continue;
            for (int c = 0; c <= 1; ++c) {
                if (first_count[c] == 0) continue;
                const mpz_class weight = last_count[a] * first_count[c];
                // Frame: bridge into the word, the word, bridge out, next first bit.
                std::string s = bridging.symbols(a, cb.first_bit(w)) + word +
                                bridging.symbols(cb.last_bit(w), c) + static_cast<char>('0' + c);
                for (char& ch : s) ch = view_symbol(ch, view);
                for (int p = 0; p < period; ++p) {
                    Key from{p, s.substr(static_cast<size_t>(p), static_cast<size_t>(x + 1))};
                    Key to{(p + 1) % period, s.substr(static_cast<size_t>(p + 1), static_cast<size_t>(x + 1))};
                    joint[from][to] += weight;
                }
            }
        }
    }

    Fstd f;
    f.period = period;
    std::map<Key, int> index;
    for (const auto& [key, row] : joint) {
        index[key] = static_cast<int>(f.states.size());
        f.states.push_back({key.first, key.second, key.second.back() == '1'});
    }
    for (const auto& [key, row] : joint) {
        mpz_class total = 0;
        for (const auto& [to, n] : row) total += n;
        for (const auto& [to, n] : row) {
            Rational p(n, total);
            p.canonicalize();
            f.edges.push_back({index.at(key), index.at(to), to.second.back(), p});
        }
    }
    return merge ? merge_equivalent(f) : f;
}

// --------------------------------------------------------------- merge

std::vector<int> equivalence_classes(const Fstd& f) {
    const size_t n = f.states.size();
    std::vector<int> cls(n);
    for (size_t i = 0; i < n; ++i) cls[i] = f.states[i].history.empty() ? 0 : f.states[i].history.back();
    const auto out = f.out_edges();
    size_t count = 0;
    while (true) {
        using Sig = std::pair<int, std::vector<std::pair<int, Rational>>>;
        std::map<Sig, int> ids;
        std::vector<int> next(n);
        for (size_t i = 0; i < n; ++i) {
            std::map<int, Rational> agg;
            for (int e : out[i]) agg[cls[static_cast<size_t>(f.edges[static_cast<size_t>(e)].to)]] += f.edges[static_cast<size_t>(e)].prob;
            Sig sig{cls[i], {agg.begin(), agg.end()}};
            auto it = ids.emplace(sig, static_cast<int>(ids.size())).first;
            next[i] = it->second;
        }
        cls = std::move(next);
        if (ids.size() == count) break;
        count = ids.size();
    }
    return cls;
}

Fstd merge_equivalent(const Fstd& f) {
    const std::vector<int> cls = equivalence_classes(f);
    // Order classes by their first member; states are already sorted by
    // (column, history), so that is the smallest member.
    std::map<int, int> order;
    std::vector<int> rep;
    for (size_t i = 0; i < f.states.size(); ++i) {
        if (order.emplace(cls[i], static_cast<int>(rep.size())).second) rep.push_back(static_cast<int>(i));
    }
    Fstd q;
    q.period = f.period;
    for (int r : rep) q.states.push_back(f.states[static_cast<size_t>(r)]);
    const auto out = f.out_edges();
    for (size_t c = 0; c < rep.size(); ++c) {
        std::map<int, Rational> agg;
        for (int e : out[static_cast<size_t>(rep[c])]) {
            const FstdEdge& edge = f.edges[static_cast<size_t>(e)];
            agg[order.at(cls[static_cast<size_t>(edge.to)])] += edge.prob;
        }
        for (const auto& [to, p] : agg) {
            q.edges.push_back({static_cast<int>(c), to, q.states[static_cast<size_t>(to)].history.back(), p});
        }
    }
    return q;
}

// ---------------------------------------------------------------- OSTD

Rational OstdEdge::total() const {
    Rational s = 0;
    for (const auto& r : runs) s += r.p;
    for (const auto& g : families) s += g.total();
    return s;
}

std::vector<Rational> Ostd::outgoing_mass() const {
    std::vector<Rational> mass(size(), Rational(0));
    for (const auto& e : edges) mass[static_cast<size_t>(e.from)] += e.total();
    return mass;
}

Ostd reduce_to_ostd(const Fstd& f) {
    const auto out = f.out_edges();
    std::vector<int> lab(f.states.size(), -1);
    Ostd o;
    for (size_t i = 0; i < f.states.size(); ++i) {
        if (!f.states[i].labeled) continue;
        lab[i] = static_cast<int>(o.names.size());
        o.names.push_back(f.state_name(static_cast<int>(i)));
    }
    if (o.names.empty()) throw ComputationError("diagram has no labeled states");

    struct Node {
        int v;
        Rational q;  // probability of reaching v through zeros only
        int depth;   // zeros emitted so far
    };

    for (size_t s = 0; s < f.states.size(); ++s) {
        if (lab[s] < 0) continue;
        // Walk the unique chain of 0-edges; each 1-edge leaving the chain
        // closes a run. A revisit turns the repeating part into geometric
        // families.
        std::vector<Node> chain;
        std::map<int, size_t> where;
        int v = static_cast<int>(s);
        Rational q = 1;
        int depth = 0;
        long cycle_start = -1;
        Rational ratio;
        int cycle_len = 0;
        while (true) {
            where[v] = chain.size();
            chain.push_back({v, q, depth});
            int zero_to = -1;
            Rational zero_p;
            for (int e : out[static_cast<size_t>(v)]) {
                const FstdEdge& edge = f.edges[static_cast<size_t>(e)];
                if (edge.symbol != '0') continue;
                if (zero_to >= 0 && zero_to != edge.to) {
                    throw ComputationError("state " + f.state_name(v) + " has two 0-successors");
                }
                zero_to = edge.to;
                zero_p += edge.prob;
            }
            if (zero_to < 0) break;
            const Rational nq = q * zero_p;
            auto it = where.find(zero_to);
            if (it != where.end()) {
                cycle_start = static_cast<long>(it->second);
                ratio = nq / chain[it->second].q;
                cycle_len = depth + 1 - chain[it->second].depth;
                break;
            }
            v = zero_to;
            q = nq;
            ++depth;
        }
        if (cycle_start >= 0 && ratio == 1) {
            throw ComputationError("no transitions: a run of zeros from " + o.names[static_cast<size_t>(lab[s])] +
                                   " never ends");
        }

        std::map<int, std::map<int, Rational>> runs;
        std::map<int, std::vector<GeometricFamily>> families;
        for (size_t idx = 0; idx < chain.size(); ++idx) {
            const Node& node = chain[idx];
            for (int e : out[static_cast<size_t>(node.v)]) {
                const FstdEdge& edge = f.edges[static_cast<size_t>(e)];
                if (edge.symbol != '1') continue;
                const int dest = lab[static_cast<size_t>(edge.to)];
                const Rational mass = node.q * edge.prob;
                const int t = node.depth + 1;
                if (cycle_start >= 0 && static_cast<long>(idx) >= cycle_start) {
                    families[dest].push_back({mass, t, ratio, cycle_len});
                } else {
                    runs[dest][t] += mass;
                }
            }
        }
        std::set<int> dests;
        for (const auto& [d, _] : runs) dests.insert(d);
        for (const auto& [d, _] : families) dests.insert(d);
        for (int d : dests) {
            OstdEdge edge;
            edge.from = lab[s];
            edge.to = d;
            for (const auto& [t, p] : runs[d]) edge.runs.push_back({t, p});
            edge.families = families[d];
            o.edges.push_back(std::move(edge));
        }
    }
    return o;
}

}  // namespace cspec
