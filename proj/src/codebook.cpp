#include "cspec/codebook.hpp"

#include <algorithm>
#include <map>

#include "cspec/errors.hpp"

namespace cspec {

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Ax: return "ax";
        case Kind::Sx: return "sx";
        case Kind::ALoco: return "aloco";
        case Kind::Loco: return "loco";
        case Kind::CALoco: return "caloco";
        case Kind::CLoco: return "cloco";
        case Kind::Free: return "free";
    }
    return "?";
}

Kind parse_kind(const std::string& name) {
    static const std::map<std::string, Kind> table = {
        {"ax", Kind::Ax},       {"sx", Kind::Sx},         {"aloco", Kind::ALoco},
        {"loco", Kind::Loco},   {"caloco", Kind::CALoco}, {"cloco", Kind::CLoco},
        {"free", Kind::Free},
    };
    auto it = table.find(name);
    if (it == table.end()) throw UsageError("unknown family '" + name + "'");
    return it->second;
}

bool is_finite(Kind k) {
    return k == Kind::ALoco || k == Kind::Loco || k == Kind::CALoco || k == Kind::CLoco;
}
bool is_symmetric(Kind k) { return k == Kind::Sx || k == Kind::Loco || k == Kind::CLoco; }
bool is_clocked(Kind k) { return k == Kind::CALoco || k == Kind::CLoco; }
bool uses_z_bridge(Kind k) { return k == Kind::Loco || k == Kind::CLoco; }

void ConstraintFamily::validate() const {
    if (kind == Kind::Free) return;
    if (x < 1) throw UsageError("x must be at least 1");
    if (is_finite(kind)) {
        if (!m) throw UsageError(kind_name(kind) + " needs a codeword length m");
        if (*m < 1) throw UsageError("m must be at least 1");
        if (is_clocked(kind) && *m < 2) throw UsageError("clocked families need m >= 2");
    } else if (m) {
        throw UsageError(kind_name(kind) + " is an infinite-length family and takes no m");
    }
}

int ConstraintFamily::period() const { return is_finite(kind) ? *m + x : 1; }

std::string ConstraintFamily::label() const {
    std::string s = kind_name(kind);
    if (kind == Kind::Free) return s;
    if (m) s += "(m=" + std::to_string(*m) + ",x=" + std::to_string(x) + ")";
    else s += "(x=" + std::to_string(x) + ")";
    return s;
}

std::vector<std::string> forbidden_patterns(Kind k, int x) {
    std::vector<std::string> out;
    if (k == Kind::Free) return out;
    for (int r = 1; r <= x; ++r) out.push_back("1" + std::string(static_cast<size_t>(r), '0') + "1");
    if (is_symmetric(k)) {
        for (int r = 1; r <= x; ++r) out.push_back("0" + std::string(static_cast<size_t>(r), '1') + "0");
    }
    return out;
}

bool contains_forbidden(const std::string& bits, Kind k, int x) {
    for (const auto& p : forbidden_patterns(k, x)) {
        if (bits.find(p) != std::string::npos) return true;
    }
    return false;
}

std::string Codebook::word_string(size_t word) const {
    std::string s(static_cast<size_t>(m), '0');
    for (int i = 0; i < m; ++i) s[static_cast<size_t>(i)] = static_cast<char>('0' + bit(word, i));
    return s;
}

uint64_t Codebook::count_prefix(const std::string& prefix) const {
    const int len = static_cast<int>(prefix.size());
    if (len > m) return 0;
    uint64_t value = 0;
    for (char c : prefix) value = (value << 1) | static_cast<uint64_t>(c == '1');
    uint64_t n = 0;
    for (uint64_t w : words) n += (w >> (m - len)) == value;
    return n;
}

namespace {

// Automaton state: the current trailing run (bit and length, capped at
// x+1) and whether that run is preceded by the opposite bit.
struct RunState {
    int bit = -1;
    int len = 0;
    bool bounded = false;
};

bool can_append(const RunState& s, int b, Kind k, int x) {
    if (s.bit < 0 || b == s.bit) return true;
    if (!s.bounded || s.len > x) return true;
    // Closing a short run between two equal bits: 1 0^r 1 is always
    // forbidden, 0 1^r 0 only for the symmetric families.
    if (s.bit == 0) return false;
    return !is_symmetric(k);
}

RunState append(const RunState& s, int b, int x) {
    RunState t;
    if (b == s.bit) {
        t = s;
        t.len = std::min(s.len + 1, x + 1);
    } else {
        t.bit = b;
        t.len = 1;
        t.bounded = s.bit >= 0;
    }
    return t;
}

void dfs(int depth, int m, uint64_t prefix, const RunState& s, Kind k, int x,
         std::vector<uint64_t>& out) {
    if (depth == m) {
        out.push_back(prefix);
        return;
    }
    for (int b = 0; b <= 1; ++b) {
        if (!can_append(s, b, k, x)) continue;
        dfs(depth + 1, m, (prefix << 1) | static_cast<uint64_t>(b), append(s, b, x), k, x, out);
    }
}

void fill_counts(Codebook& cb) {
    const int x = cb.family.x;
    const Kind k = cb.family.kind;
    cb.counts = GroupCounts{};
    cb.counts.N = cb.words.size();
    if (k == Kind::Loco || k == Kind::CLoco) cb.counts.N1 = cb.count_prefix("00");
    if (k == Kind::ALoco || k == Kind::CALoco) {
        cb.counts.N2 = cb.count_prefix("11");
        cb.counts.N3 = cb.count_prefix("1" + std::string(static_cast<size_t>(x + 1), '0'));
    }
}

}  // namespace

Codebook enumerate_codebook(const ConstraintFamily& family) {
    family.validate();
    if (!is_finite(family.kind)) throw UsageError("codebooks exist only for finite-length families");
    const int m = *family.m;
    if (m > kMaxEnumerationLength) {
        throw CapacityError("m = " + std::to_string(m) + " exceeds the enumeration limit of " +
                            std::to_string(kMaxEnumerationLength));
    }
    Codebook cb;
    cb.family = family;
    cb.m = m;
    dfs(0, m, 0, RunState{}, family.kind, family.x, cb.words);
    if (is_clocked(family.kind)) {
        const uint64_t ones = (1ull << m) - 1;
        std::erase_if(cb.words, [&](uint64_t w) { return w == 0 || w == ones; });
    }
    fill_counts(cb);
    return cb;
}

std::vector<uint64_t> enumerate_bruteforce(const ConstraintFamily& family) {
    family.validate();
    const int m = *family.m;
    if (m > 20) throw CapacityError("brute-force enumeration is limited to m <= 20");
    std::vector<uint64_t> out;
    const uint64_t ones = (1ull << m) - 1;
    for (uint64_t w = 0; w <= ones; ++w) {
        std::string s(static_cast<size_t>(m), '0');
        for (int i = 0; i < m; ++i) s[static_cast<size_t>(i)] = static_cast<char>('0' + ((w >> (m - 1 - i)) & 1u));
        if (contains_forbidden(s, family.kind, family.x)) continue;
        if (is_clocked(family.kind) && (w == 0 || w == ones)) continue;
        out.push_back(w);
    }
    return out;
}

uint64_t count_by_dp(const ConstraintFamily& family) {
    family.validate();
    const int m = *family.m;
    const int x = family.x;
    // key: (bit, len, bounded); bit = -1 is the empty start.
    std::map<std::tuple<int, int, bool>, uint64_t> layer{{{-1, 0, false}, 1}};
    for (int d = 0; d < m; ++d) {
        std::map<std::tuple<int, int, bool>, uint64_t> next;
        for (const auto& [key, n] : layer) {
            RunState s{std::get<0>(key), std::get<1>(key), std::get<2>(key)};
            for (int b = 0; b <= 1; ++b) {
                if (!can_append(s, b, family.kind, x)) continue;
                RunState t = append(s, b, x);
                next[{t.bit, t.len, t.bounded}] += n;
            }
        }
        layer = std::move(next);
    }
    uint64_t total = 0;
    for (const auto& [key, n] : layer) total += n;
    if (is_clocked(family.kind)) total -= 2;  // 0^m and 1^m are always valid
    return total;
}

GroupCounts group_cardinalities(Kind k, int x, int length) {
    if (length < 1) throw UsageError("length must be at least 1");
    Kind base = k;
    if (k == Kind::CALoco) base = Kind::ALoco;
    if (k == Kind::CLoco) base = Kind::Loco;
    ConstraintFamily f{base, x, length};
    return enumerate_codebook(f).counts;
}

Rational aloco_alpha(int x, int c) {
    if (c < 2) return Rational(0);
    const GroupCounts g = group_cardinalities(Kind::ALoco, x, c);
    if (c >= x + 2) return frac(static_cast<long long>(g.N3), static_cast<long long>(g.N2 + g.N3));
    return frac(1, static_cast<long long>(g.N2 + 1));
}

Rational loco_lambda(int x, int a) {
    if (a <= 1) return Rational(0);
    const GroupCounts g = group_cardinalities(Kind::Loco, x, a);
    return frac(static_cast<long long>(2 * g.N1), static_cast<long long>(g.N));
}

std::string BridgingRule::symbols(int prev_last_bit, int next_first_bit) const {
    const auto n = static_cast<size_t>(x);
    if (kind == BridgeKind::ZSymbols) return std::string(n, 'z');
    return std::string(n, (prev_last_bit == 1 && next_first_bit == 1) ? '1' : '0');
}

BridgingRule bridging_for(const ConstraintFamily& family) {
    if (!is_finite(family.kind)) throw UsageError("bridging applies only to finite-length families");
    return BridgingRule{uses_z_bridge(family.kind) ? BridgeKind::ZSymbols : BridgeKind::ZerosOrOnes, family.x};
}

}  // namespace cspec
