#include <doctest.h>

#include "cspec/errors.hpp"
#include "cspec/fstd.hpp"
#include "cspec/transfer.hpp"
#include "fixtures.hpp"

using namespace cspec;
using fixtures::alpha;
using fixtures::mono;

namespace {

RationalFn over_two_minus_d(const Rational& a, int b) {
    return RationalFn(Poly::monomial(a, b), Poly(std::vector<Rational>{2, -1}));
}

TransferMatrix grid_pipeline(const ConstraintFamily& f) {
    const SignalView view = uses_z_bridge(f.kind) ? SignalView::LocoAFlipped : SignalView::Bits;
    const Fstd g = build_grid_fstd(enumerate_codebook(f), bridging_for(f), view);
    return ostm_from_ostd(reduce_to_ostd(g));
}

}  // namespace

TEST_SUITE("transfer") {

TEST_CASE("A_1 and S_1 matrices") {
    TransferMatrix a(2);
    a.at(0, 0) = alpha(1);
    a.at(0, 1) = mono(Rational(1, 2), 1);
    a.at(1, 0) = alpha(1);
    a.at(1, 1) = mono(Rational(1, 2), 1);
    CHECK(exactly_equal(closed_form_ax(1), a));
    CHECK(exactly_equal(ostm_from_ostd(reduce_to_ostd(build_infinite_fstd({Kind::Ax, 1, std::nullopt}))), a));

    TransferMatrix s(2);
    s.at(0, 1) = mono(1, 1);
    s.at(1, 0) = alpha(1);
    s.at(1, 1) = mono(Rational(1, 2), 1);
    CHECK(exactly_equal(closed_form_sx(1), s));
    CHECK(exactly_equal(ostm_from_ostd(reduce_to_ostd(build_infinite_fstd({Kind::Sx, 1, std::nullopt}))), s));
}

TEST_CASE("closed forms equal the diagram pipeline for infinite families") {
    for (int x = 1; x <= 6; ++x) {
        CHECK(exactly_equal(closed_form_ax(x), grid_ostm({Kind::Ax, x, std::nullopt})));
        CHECK(exactly_equal(closed_form_sx(x), grid_ostm({Kind::Sx, x, std::nullopt})));
    }
}

TEST_CASE("shape of the A_x and S_x closed forms") {
    const TransferMatrix a = closed_form_ax(2);
    REQUIRE(a.size() == 3);
    for (size_t i = 0; i < 3; ++i) CHECK(a.at(i, 0) == alpha(2));
    CHECK(a.at(0, 1) == mono(Rational(1, 2), 1));
    CHECK(a.at(1, 2) == mono(Rational(1, 2), 1));
    CHECK(a.at(2, 2) == mono(Rational(1, 2), 1));
    const TransferMatrix s = closed_form_sx(3);
    REQUIRE(s.size() == 4);
    CHECK(s.at(3, 0) == alpha(3));
    CHECK(s.at(0, 0).is_zero());
    CHECK(s.at(0, 1) == mono(1, 1));
    CHECK(s.at(3, 3) == mono(Rational(1, 2), 1));
}

TEST_CASE("unconstrained source") {
    TransferMatrix u(1);
    u.at(0, 0) = over_two_minus_d(1, 1);
    CHECK(exactly_equal(unconstrained_matrix(), u));
    const auto v = unconstrained_matrix().evaluate(std::complex<double>(-1, 0));
    CHECK(std::abs(v(0, 0) - std::complex<double>(-1.0 / 3, 0)) < 1e-15);
}

TEST_CASE("A-LOCO closed form for m = 4, x = 1") {
    const TransferMatrix g = closed_form_aloco(4, 1);
    CHECK(exactly_equal(g, fixtures::aloco_4_1()));
    CHECK(g.at(0, 0) == RationalFn(Poly::monomial(1, 5), Poly(std::vector<Rational>{12, 0, 0, 0, 0, -1})));
}

TEST_CASE("LOCO closed form for m = 4, x = 1") {
    const TransferMatrix g = closed_form_loco_A(4, 1);
    CHECK(g.size() == 4 + 4 * 1 + 1 - 1);
    CHECK(exactly_equal(g, fixtures::loco_a_4_1()));
}

TEST_CASE("closed forms against the grid pipeline") {
    const std::vector<std::pair<int, int>> sizes = {{3, 1}, {4, 1}, {5, 1}, {6, 1}, {4, 2}, {5, 2}, {5, 3}, {7, 2}};
    for (const auto& [m, x] : sizes) {
        CAPTURE(m);
        CAPTURE(x);
        CHECK(exactly_equal(closed_form_aloco(m, x), grid_pipeline({Kind::ALoco, x, m})));
        const LumpingComparison c = lumping_equivalent(closed_form_loco_A(m, x), grid_pipeline({Kind::Loco, x, m}));
        CHECK(c.equivalent);
        CHECK(closed_form_loco_A(m, x).size() == static_cast<size_t>(m + x * m + x - x * x));
    }
}

TEST_CASE("lumping distinguishes different chains") {
    CHECK_FALSE(lumping_equivalent(closed_form_ax(1), closed_form_sx(1)).equivalent);
    CHECK_FALSE(lumping_equivalent(closed_form_aloco(4, 1), closed_form_aloco(5, 1)).equivalent);
    CHECK(lumping_equivalent(closed_form_ax(2), closed_form_ax(2)).equivalent);
}

TEST_CASE("C signal matrix") {
    const TransferMatrix c = loco_C_matrix(4, 1);
    REQUIRE(c.size() == 4);
    CHECK(c.at(3, 0) == mono(1, 2));
    for (size_t i = 0; i + 1 < 4; ++i) CHECK(c.at(i, i + 1) == mono(1, 1));
    const RationalMatrix one = c.at_one();
    for (size_t i = 0; i < 4; ++i) {
        int ones = 0;
        for (size_t j = 0; j < 4; ++j) {
            CHECK((one[i][j] == 0 || one[i][j] == 1));
            ones += one[i][j] == 1;
        }
        CHECK(ones == 1);
    }
}

TEST_CASE("alternate matrices") {
    TransferMatrix a(2);
    a.at(0, 1) = over_two_minus_d(1, 1);
    a.at(1, 0) = over_two_minus_d(1, 2);
    CHECK(exactly_equal(alternate_ax(1), a));
    TransferMatrix s(1);
    s.at(0, 0) = over_two_minus_d(1, 3);
    CHECK(exactly_equal(alternate_sx(2), s));
    CHECK_THROWS_AS(alternate_ax(1).evaluate(std::complex<double>(2, 0)), ComputationError);
}

TEST_CASE("row-stochastic with nonnegative series") {
    std::vector<TransferMatrix> all;
    for (int x = 1; x <= 8; ++x) {
        all.push_back(closed_form_ax(x));
        all.push_back(closed_form_sx(x));
        all.push_back(alternate_ax(x));
        all.push_back(alternate_sx(x));
    }
    for (const auto& [m, x] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {6, 1}, {10, 1}, {10, 3}, {10, 5}, {5, 3}}) {
        all.push_back(closed_form_aloco(m, x));
        all.push_back(closed_form_loco_A(m, x));
        all.push_back(loco_C_matrix(m, x));
        all.push_back(grid_ostm({Kind::ALoco, x, m}));
    }
    all.push_back(grid_ostm({Kind::ALoco, 1, 2}));
    all.push_back(grid_ostm({Kind::Loco, 1, 2}));
    for (const auto& g : all) {
        CHECK(g.row_stochastic());
        CHECK(g.nonnegative_series(3 * static_cast<int>(g.size()) + 6));
    }
}

TEST_CASE("mean run length of A_1") {
    // pi = (1/2, 1/2) solves pi G(1) = pi for the all-halves matrix.
    const TransferMatrix g = closed_form_ax(1);
    const RationalMatrix one = g.at_one();
    for (const auto& row : one)
        for (const auto& v : row) CHECK(v == Rational(1, 2));
    const RationalMatrix d = g.derivative_at_one();
    Rational mean = 0;
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) mean += Rational(1, 2) * d[i][j];
    CHECK(mean == Rational(5, 2));
}

}
