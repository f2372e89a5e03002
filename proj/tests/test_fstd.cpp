#include <doctest.h>

#include <set>

#include "cspec/errors.hpp"
#include "cspec/fstd.hpp"
#include "cspec/transfer.hpp"

using namespace cspec;

namespace {

int index_of(const Fstd& f, const std::string& history) {
    for (size_t i = 0; i < f.states.size(); ++i)
        if (f.states[i].history == history) return static_cast<int>(i);
    return -1;
}

Rational edge_prob(const Fstd& f, const std::string& a, const std::string& b) {
    Rational p = 0;
    for (const auto& e : f.edges)
        if (e.from == index_of(f, a) && e.to == index_of(f, b)) p += e.prob;
    return p;
}

size_t labeled(const Fstd& f) {
    size_t n = 0;
    for (const auto& s : f.states) n += s.labeled;
    return n;
}

Fstd grid(const ConstraintFamily& f, bool merge = true) {
    const SignalView view = uses_z_bridge(f.kind) ? SignalView::LocoAFlipped : SignalView::Bits;
    return build_grid_fstd(enumerate_codebook(f), bridging_for(f), view, merge);
}

}  // namespace

TEST_SUITE("fstd") {

TEST_CASE("A_1 diagram") {
    const Fstd f = build_infinite_fstd({Kind::Ax, 1, std::nullopt});
    CHECK(f.states.size() == 4);
    CHECK(f.edges.size() == 7);
    CHECK(edge_prob(f, "00", "00") == Rational(1, 2));
    CHECK(edge_prob(f, "10", "00") == 1);
    CHECK(edge_prob(f, "10", "01") == 0);
    for (const auto& s : f.states) CHECK(s.labeled == (s.history == "01" || s.history == "11"));
    f.check();
}

TEST_CASE("S_1 diagram") {
    const Fstd f = build_infinite_fstd({Kind::Sx, 1, std::nullopt});
    CHECK(f.states.size() == 4);
    CHECK(f.edges.size() == 6);
    CHECK(edge_prob(f, "01", "11") == 1);
    int out01 = 0;
    for (const auto& e : f.edges) out01 += e.from == index_of(f, "01");
    CHECK(out01 == 1);
}

TEST_CASE("incoming edges carry the destination symbol") {
    for (const ConstraintFamily& fam : {ConstraintFamily{Kind::Ax, 3, std::nullopt}, ConstraintFamily{Kind::Sx, 2, std::nullopt},
                                        ConstraintFamily{Kind::ALoco, 2, 6}, ConstraintFamily{Kind::Loco, 2, 6}}) {
        const Fstd f = is_finite(fam.kind) ? grid(fam) : build_infinite_fstd(fam);
        for (const auto& e : f.edges) CHECK(e.symbol == f.states[static_cast<size_t>(e.to)].history.back());
        f.check();
    }
}

TEST_CASE("A_1 reduction has a geometric self-loop") {
    const Ostd o = reduce_to_ostd(build_infinite_fstd({Kind::Ax, 1, std::nullopt}));
    REQUIRE(o.size() == 2);
    const OstdEdge* self = nullptr;
    for (const auto& e : o.edges)
        if (e.from == 0 && e.to == 0) self = &e;
    REQUIRE(self != nullptr);
    REQUIRE(self->families.size() == 1);
    const GeometricFamily& g = self->families[0];
    // runs 3, 4, 5, ... with probabilities 1/4, 1/8, 1/16, ...
    CHECK(g.c0 == Rational(1, 4));
    CHECK(g.b == 3);
    CHECK(g.ratio == Rational(1, 2));
    CHECK(g.period == 1);
}

TEST_CASE("S_1 reduction forces a run of one") {
    const Ostd o = reduce_to_ostd(build_infinite_fstd({Kind::Sx, 1, std::nullopt}));
    bool found = false;
    for (const auto& e : o.edges) {
        if (e.from == 0 && e.to == 1) {
            found = true;
            REQUIRE(e.runs.size() == 1);
            CHECK(e.runs[0].t == 1);
            CHECK(e.runs[0].p == 1);
            CHECK(e.families.empty());
        }
    }
    CHECK(found);
}

TEST_CASE("outgoing mass is exactly one") {
    std::vector<ConstraintFamily> fams;
    for (int x = 1; x <= 4; ++x) {
        fams.push_back({Kind::Ax, x, std::nullopt});
        fams.push_back({Kind::Sx, x, std::nullopt});
        fams.push_back({Kind::ALoco, x, x + 3});
        fams.push_back({Kind::Loco, x, x + 3});
        fams.push_back({Kind::ALoco, x, 2});
    }
    for (const auto& fam : fams) {
        CAPTURE(fam.label());
        const Fstd f = is_finite(fam.kind) ? grid(fam) : build_infinite_fstd(fam);
        for (const auto& m : reduce_to_ostd(f).outgoing_mass()) CHECK(m == 1);
    }
}

TEST_CASE("merged A-LOCO grid has m + x labeled states") {
    CHECK(labeled(grid({Kind::ALoco, 1, 4})) == 5);
    for (int x = 1; x <= 3; ++x)
        for (int m = x + 2; m <= 9; ++m) CHECK(labeled(grid({Kind::ALoco, x, m})) == static_cast<size_t>(m + x));
}

TEST_CASE("merged LOCO grid is the coarsest bisimulation quotient") {
    // Two of the states a hand construction keeps apart have identical
    // exits, so the coarsest quotient has seven labeled states.
    const Fstd f = grid({Kind::Loco, 1, 4});
    CHECK(labeled(f) == 7);
    const auto cls = equivalence_classes(f);
    std::set<int> distinct(cls.begin(), cls.end());
    CHECK(distinct.size() == f.states.size());
}

TEST_CASE("unmerged grid respects the positional bound") {
    for (int x = 1; x <= 3; ++x) {
        const Fstd f = grid({Kind::ALoco, x, 1}, false);
        CHECK(f.states.size() <= static_cast<size_t>((1 + x) << (x + 1)));
    }
}

TEST_CASE("merging does not change the chain") {
    for (const ConstraintFamily& fam : {ConstraintFamily{Kind::ALoco, 1, 4}, ConstraintFamily{Kind::ALoco, 2, 5},
                                        ConstraintFamily{Kind::Loco, 1, 4}, ConstraintFamily{Kind::Loco, 2, 6}}) {
        const TransferMatrix merged = ostm_from_ostd(reduce_to_ostd(grid(fam, true)));
        const TransferMatrix raw = ostm_from_ostd(reduce_to_ostd(grid(fam, false)));
        CHECK(lumping_equivalent(merged, raw).equivalent);
        CHECK(merged.size() <= raw.size());
    }
}

TEST_CASE("a certain cycle of zeros is rejected") {
    Fstd f;
    f.states = {{kStationary, "1", true}, {kStationary, "0", false}};
    f.edges = {{0, 1, '0', Rational(1)}, {1, 1, '0', Rational(1)}};
    CHECK_THROWS_AS(reduce_to_ostd(f), ComputationError);
}

TEST_CASE("check rejects bad mass") {
    Fstd f;
    f.states = {{kStationary, "1", true}};
    f.edges = {{0, 0, '1', Rational(1, 2)}};
    CHECK_THROWS_AS(f.check(), ComputationError);
}

}
