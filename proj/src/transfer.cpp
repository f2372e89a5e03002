#include "cspec/transfer.hpp"

#include <map>
#include <set>

#include "cspec/errors.hpp"

namespace cspec {

namespace {

RationalFn mono(const Rational& a, int degree) { return RationalFn(Poly::monomial(a, degree)); }

// D^b / (c0 - c1 * D)
RationalFn over_linear(int b, const Rational& c0, const Rational& c1) {
    return RationalFn(Poly::monomial(Rational(1), b), Poly(std::vector<Rational>{c0, -c1}));
}

RationalMatrix eval_at_one(size_t n, const std::vector<RationalFn>& e) {
    RationalMatrix out(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = e[i * n + j].eval(Rational(1));
    return out;
}

}  // namespace

// -------------------------------------------------------- TransferMatrix

RationalMatrix TransferMatrix::at_one() const { return eval_at_one(n_, entries_); }

RationalMatrix TransferMatrix::derivative_at_one() const {
    std::vector<RationalFn> d;
    d.reserve(entries_.size());
    for (const auto& e : entries_) d.push_back(e.derivative());
    return eval_at_one(n_, d);
}

RationalMatrix TransferMatrix::second_derivative_at_one() const {
    std::vector<RationalFn> d;
    d.reserve(entries_.size());
    for (const auto& e : entries_) d.push_back(e.derivative().derivative());
    return eval_at_one(n_, d);
}

Eigen::MatrixXcd TransferMatrix::evaluate(std::complex<double> D) const {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (size_t i = 0; i < n_; ++i) {
        for (size_t j = 0; j < n_; ++j) {
            const RationalFn& e = at(i, j);
            const std::complex<double> den = e.den().eval(D);
            if (std::abs(den) < 1e-300) {
                throw ComputationError("pole of entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                       ") = " + e.to_string());
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e.num().eval(D) / den;
        }
    }
    return out;
}

bool TransferMatrix::row_stochastic() const {
    const RationalMatrix g = at_one();
    for (const auto& row : g) {
        Rational s = 0;
        for (const auto& v : row) s += v;
        if (s != 1) return false;
    }
    return true;
}

bool TransferMatrix::nonnegative_series(int terms) const {
    for (const auto& e : entries_) {
        if (e.is_zero()) continue;
        for (const auto& c : e.series(terms)) {
            if (c < 0) return false;
        }
    }
    return true;
}

CompiledMatrix::CompiledMatrix(const TransferMatrix& g) : n_(g.size()) {
    for (size_t i = 0; i < n_; ++i) {
        for (size_t j = 0; j < n_; ++j) {
            const RationalFn& e = g.at(i, j);
            if (e.is_zero()) continue;
            Entry en{i, j, {}, {}};
            for (const auto& c : e.num().coeffs()) en.num.push_back(c.get_d());
            for (const auto& c : e.den().coeffs()) en.den.push_back(c.get_d());
            entries_.push_back(std::move(en));
        }
    }
}

void CompiledMatrix::evaluate(std::complex<double> D, Eigen::MatrixXcd& out) const {
    out.setZero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    auto horner = [D](const std::vector<double>& c) {
        std::complex<double> acc = 0.0;
        for (size_t k = c.size(); k-- > 0;) acc = acc * D + c[k];
        return acc;
    };
    for (const auto& e : entries_) {
        out(static_cast<Eigen::Index>(e.i), static_cast<Eigen::Index>(e.j)) = horner(e.num) / horner(e.den);
    }
}

// ------------------------------------------------------------ from OSTD

TransferMatrix ostm_from_ostd(const Ostd& ostd) {
    TransferMatrix g(ostd.size());
    g.names = ostd.names;
    g.method = "grid";
    for (const auto& e : ostd.edges) {
        RationalFn& cell = g.at(static_cast<size_t>(e.from), static_cast<size_t>(e.to));
        std::vector<Rational> coeffs;
        for (const auto& r : e.runs) {
            if (coeffs.size() <= static_cast<size_t>(r.t)) coeffs.resize(static_cast<size_t>(r.t) + 1, Rational(0));
            coeffs[static_cast<size_t>(r.t)] += r.p;
        }
        cell += RationalFn(Poly(std::move(coeffs)));
        for (const auto& f : e.families) cell += RationalFn::geometric(f.c0, f.b, f.ratio, f.period);
    }
    return g;
}

// ---------------------------------------------------------- closed forms

TransferMatrix closed_form_ax(int x) {
    if (x < 1) throw UsageError("x must be at least 1");
    const size_t n = static_cast<size_t>(x) + 1;
    TransferMatrix g(n);
    const RationalFn alpha = over_linear(x + 2, 4, 2);  // D^{x+2} / (2(2-D))
    for (size_t i = 0; i < n; ++i) g.at(i, 0) = alpha;
    for (size_t i = 0; i + 1 < n; ++i) g.at(i, i + 1) = mono(frac(1, 2), 1);
    g.at(n - 1, n - 1) = mono(frac(1, 2), 1);
    g.family = ConstraintFamily{Kind::Ax, x, std::nullopt}.label();
    g.method = "closed-form";
    return g;
}

TransferMatrix closed_form_sx(int x) {
    if (x < 1) throw UsageError("x must be at least 1");
    const size_t n = static_cast<size_t>(x) + 1;
    TransferMatrix g(n);
    g.at(n - 1, 0) = over_linear(x + 2, 4, 2);
    for (size_t i = 0; i + 1 < n; ++i) g.at(i, i + 1) = mono(Rational(1), 1);
    g.at(n - 1, n - 1) = mono(frac(1, 2), 1);
    g.family = ConstraintFamily{Kind::Sx, x, std::nullopt}.label();
    g.method = "closed-form";
    return g;
}

TransferMatrix closed_form_aloco(int m, int x) {
    if (x < 1 || m < x + 2) throw UsageError("the closed A-LOCO matrix needs x >= 1 and m >= x+2");
    const ConstraintFamily fam{Kind::ALoco, x, m};
    const GroupCounts c = enumerate_codebook(fam).counts;
    if (c.N == 0 || c.N2 + c.N3 == 0) throw ComputationError("inconsistent group counts for " + fam.label());
    const Rational N(mpz_class(std::to_string(c.N)));
    const Rational zeta = frac(static_cast<long long>(c.N2 + c.N3), static_cast<long long>(c.N));
    const int n = m + x;

    std::vector<Rational> alpha(static_cast<size_t>(m) + 2, Rational(0));
    for (int k = 2; k <= m + 1; ++k) alpha[static_cast<size_t>(k)] = aloco_alpha(x, k);
    // lambda_{d,g} = prod_{k=0..g} (1 - alpha_{d-k})
    auto lambda = [&](int d, int gg) {
        Rational r = 1;
        for (int k = 0; k <= gg; ++k) r *= 1 - alpha[static_cast<size_t>(d - k)];
        return r;
    };
    // beta_{a,b} = a D^b / (N - D^{m+x})
    const Poly beta_den = Poly(N) - Poly::monomial(Rational(1), n);
    auto beta = [&](const Rational& a, int b) { return RationalFn(Poly::monomial(a, b), beta_den); };

    TransferMatrix g(static_cast<size_t>(n));
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            RationalFn e;
            if (j == i) {
                e = beta(1, n);
            } else if (j == i + 1 || j > i + 1 + x) {
                const Rational L = lambda(m + 1 - i, j - i - 1);
                e = mono(L, j - i) + beta(L, m - i + j + x);
            } else if (j >= i + 2) {
                e = beta(lambda(m + 1 - i, j - i - 1), m - i + j + x);
            } else {
                e = beta(1 / lambda(m + 1 - j, i - j - 1), m - i + j + x);
            }
            if (i == m && j == 1) e = beta(zeta, m + 2 * x + 1);
            g.at(static_cast<size_t>(i - 1), static_cast<size_t>(j - 1)) = e;
        }
    }
    // Bridge chain: after the last codeword bit a 1 continues into the 1^x
    // bridge with probability zeta, then the bridge ends into F1.
    g.at(static_cast<size_t>(m - 1), static_cast<size_t>(m)) = mono(zeta, 1);
    for (int i = m + 1; i < n; ++i) g.at(static_cast<size_t>(i - 1), static_cast<size_t>(i)) = mono(Rational(1), 1);
    g.at(static_cast<size_t>(n - 1), 0) = mono(Rational(1), 1);
    for (int i = 1; i <= n; ++i) g.names.push_back("F" + std::to_string(i));
    g.family = fam.label();
    g.method = "closed-form";
    return g;
}

TransferMatrix closed_form_loco_A(int m, int x) {
    if (x < 1 || m < x + 2) throw UsageError("the closed LOCO matrix needs x >= 1 and m >= x+2");
    const int n = m + x * m + x - x * x;

    std::vector<Rational> lam(static_cast<size_t>(m) + 2, Rational(0));
    for (int a = 2; a <= m + 1; ++a) lam[static_cast<size_t>(a)] = loco_lambda(x, a);
    auto P = [&](int lo, int hi) {
        Rational r = 1;
        for (int k = lo; k <= hi; ++k) r *= lam[static_cast<size_t>(k)];
        return r;
    };

    // State layout: m "free" states (a 1 at codeword column k after a 0),
    // forced states inside a run of 1s of the flipped signal, then the x
    // bridge states.
    auto free_state = [](int k) { return k - 1; };
    auto forced = [&](int j0, int r) {
        if (j0 <= m - x) return m + (x - r) * (m - x - 1) + (j0 - 1) - 1;
        return n - 2 * x + r - 1;
    };
    auto land = [&](int lp) {
        if (lp <= m - x + 1) return forced(lp, 1);
        return forced(m - x + 1, lp - (m - x + 1) + 1);
    };
    auto bridge = [&](int i) { return n - x + i - 1; };

    TransferMatrix g(static_cast<size_t>(n));
    auto add = [&](int i, int j, const RationalFn& v) { g.at(static_cast<size_t>(i), static_cast<size_t>(j)) += v; };

    for (int k = 1; k <= m; ++k) {
        const int a = m - k + 1;
        if (k < m) {
            add(free_state(k), free_state(k + 1), mono(lam[static_cast<size_t>(a)], 1));
            for (int s = x + 1; s < a; ++s) {
                const int lp = k + s + 1;
                if (lp > m) break;
                add(free_state(k), land(lp), mono((1 - lam[static_cast<size_t>(a - s)]) * P(a - s + 1, a), s + 1));
            }
            add(free_state(k), bridge(1), mono(P(2, a), a));
        } else {
            add(free_state(k), bridge(1), mono(Rational(1), 1));
        }
    }
    for (int j0 = 2; j0 <= m - x + 1; ++j0) {
        for (int r = 1; r <= x; ++r) {
            const int j = j0 + r - 1;
            const int src = forced(j0, r);
            int dst;
            if (j == m) dst = bridge(1);
            else if (r < x) dst = forced(j0, r + 1);
            else dst = free_state(j + 1);
            g.at(static_cast<size_t>(src), static_cast<size_t>(dst)) = mono(Rational(1), 1);
        }
    }
    for (int i = 1; i < x; ++i) add(bridge(i), bridge(i + 1), mono(Rational(1), 1));
    const int b = bridge(x);
    add(b, free_state(1), mono(frac(1, 2), 1));
    for (int s = 1; s < m; ++s) {
        add(b, land(s + 1), mono(frac(1, 2) * (1 - lam[static_cast<size_t>(m - s + 1)]) * P(m - s + 2, m), s + 1));
    }
    add(b, bridge(1), mono(frac(1, 2) * P(2, m), m + 1));

    for (int i = 1; i <= n; ++i) g.names.push_back("F" + std::to_string(i));
    g.family = ConstraintFamily{Kind::Loco, x, m}.label();
    g.method = "closed-form";
    return g;
}

TransferMatrix loco_C_matrix(int m, int x) {
    if (x < 1 || m < 1) throw UsageError("loco C matrix needs m >= 1 and x >= 1");
    const size_t n = static_cast<size_t>(m);
    TransferMatrix g(n);
    for (size_t i = 0; i + 1 < n; ++i) g.at(i, i + 1) = mono(Rational(1), 1);
    g.at(n - 1, 0) += mono(Rational(1), x + 1);
    g.family = ConstraintFamily{Kind::Loco, x, m}.label() + "/C";
    g.method = "closed-form";
    return g;
}

TransferMatrix alternate_ax(int x) {
    if (x < 1) throw UsageError("x must be at least 1");
    TransferMatrix g(2);
    g.at(0, 1) = over_linear(1, 2, 1);
    g.at(1, 0) = over_linear(x + 1, 2, 1);
    g.family = ConstraintFamily{Kind::Ax, x, std::nullopt}.label();
    g.method = "alternate";
    return g;
}

TransferMatrix alternate_sx(int x) {
    if (x < 1) throw UsageError("x must be at least 1");
    TransferMatrix g(1);
    g.at(0, 0) = over_linear(x + 1, 2, 1);
    g.family = ConstraintFamily{Kind::Sx, x, std::nullopt}.label();
    g.method = "alternate";
    return g;
}

TransferMatrix unconstrained_matrix() {
    TransferMatrix g(1);
    g.at(0, 0) = over_linear(1, 2, 1);
    g.family = "free";
    g.method = "closed-form";
    return g;
}

TransferMatrix grid_ostm(const ConstraintFamily& family, bool merge) {
    family.validate();
    if (family.kind == Kind::Free) return unconstrained_matrix();
    Fstd f;
    if (!is_finite(family.kind)) {
        f = build_infinite_fstd(family);
    } else {
        const Codebook cb = enumerate_codebook(family);
        const SignalView view = uses_z_bridge(family.kind) ? SignalView::LocoAFlipped : SignalView::Bits;
        f = build_grid_fstd(cb, bridging_for(family), view, merge);
    }
    TransferMatrix g = ostm_from_ostd(reduce_to_ostd(f));
    g.family = family.label();
    g.method = "grid";
    return g;
}

// -------------------------------------------------------------- lumping

LumpingComparison lumping_equivalent(const TransferMatrix& a, const TransferMatrix& b) {
    const TransferMatrix* mats[2] = {&a, &b};
    std::vector<std::pair<int, size_t>> nodes;
    for (int k = 0; k < 2; ++k)
        for (size_t i = 0; i < mats[k]->size(); ++i) nodes.emplace_back(k, i);
    std::map<std::pair<int, size_t>, int> colour;
    for (const auto& v : nodes) colour[v] = 0;
    size_t count = 1;
    while (true) {
        using Sig = std::pair<int, std::vector<std::pair<int, std::string>>>;
        std::map<Sig, std::vector<std::pair<int, size_t>>> groups;
        for (const auto& v : nodes) {
            const TransferMatrix& g = *mats[v.first];
            std::map<int, RationalFn> agg;
            for (size_t j = 0; j < g.size(); ++j) {
                const RationalFn& e = g.at(v.second, j);
                if (!e.is_zero()) agg[colour[{v.first, j}]] += e;
            }
            Sig sig{colour[v], {}};
            for (const auto& [c, fn] : agg)
                if (!fn.is_zero()) sig.second.emplace_back(c, fn.to_string());
            groups[sig].push_back(v);
        }
        int id = 0;
        for (const auto& [sig, members] : groups) {
            for (const auto& v : members) colour[v] = id;
            ++id;
        }
        if (groups.size() == count) break;
        count = groups.size();
    }
    std::set<int> first, second;
    for (const auto& [v, c] : colour) (v.first == 0 ? first : second).insert(c);
    return {first == second, first.size(), second.size()};
}

bool exactly_equal(const TransferMatrix& a, const TransferMatrix& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

}  // namespace cspec
