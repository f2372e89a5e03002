#include <doctest.h>

#include <cmath>

#include "cspec/cyclo.hpp"
#include "cspec/errors.hpp"
#include "cspec/oracle.hpp"

using namespace cspec;

TEST_SUITE("oracle") {

TEST_CASE("SplitMix64 reference outputs") {
    SplitMix64 rng(1234567);
    const uint64_t expect[] = {6457827717110365317ull, 3203168211198807973ull, 9817491932198370423ull,
                               4593380528125082431ull, 16408922859458223821ull};
    for (uint64_t e : expect) CHECK(rng.next() == e);
}

TEST_CASE("bounded draws are in range and balanced") {
    SplitMix64 rng(3);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const uint64_t v = rng.below(7);
        REQUIRE(v < 7);
        ++hist[v];
    }
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
}

TEST_CASE("generated streams satisfy their constraints") {
    std::vector<ConstraintFamily> fams;
    for (int x = 1; x <= 5; ++x) {
        fams.push_back({Kind::Ax, x, std::nullopt});
        fams.push_back({Kind::Sx, x, std::nullopt});
        fams.push_back({Kind::ALoco, x, 10});
        fams.push_back({Kind::Loco, x, 10});
    }
    for (int m : {2, 4, 6, 8}) {
        fams.push_back({Kind::ALoco, 1, m});
        fams.push_back({Kind::Loco, 1, m});
    }
    for (const auto& f : fams) {
        CAPTURE(f.label());
        const Stream s = generate_stream({f, 1'000'000, 11});
        CHECK(s.symbols.size() >= 1'000'000);
        CHECK(scan_stream(s) == -1);
    }
}

TEST_CASE("stream layout") {
    const Stream a = generate_stream({{Kind::ALoco, 1, 4}, 100'000, 5});
    CHECK(a.period == 5);
    CHECK(a.symbols.find("101") == std::string::npos);
    const Stream l = generate_stream({{Kind::Loco, 1, 4}, 100'000, 5});
    for (size_t i = 4; i < l.symbols.size(); i += 5) {
        CHECK(l.symbols[i] == 'z');
        CHECK(l.levels[i] == 0);
    }
    for (size_t i = 0; i < l.symbols.size(); ++i)
        if (i % 5 != 4) CHECK(l.levels[i] == (l.symbols[i] == '1' ? 1 : -1));
}

TEST_CASE("seeded determinism") {
    const StreamConfig c{{Kind::Sx, 2, std::nullopt}, 200'000, 42};
    CHECK(generate_stream(c).symbols == generate_stream(c).symbols);
    StreamConfig d = c;
    d.seed = 43;
    CHECK(generate_stream(c).symbols != generate_stream(d).symbols);
    const std::vector<double> grid = frequency_grid(128);
    const Stream s = generate_stream(c);
    CHECK(estimate_psd(s, grid).continuous == estimate_psd(s, grid).continuous);
}

TEST_CASE("scanner finds an injected violation") {
    Stream s = generate_stream({{Kind::Ax, 2, std::nullopt}, 10'000, 1});
    CHECK(scan_stream(s) == -1);
    s.symbols.replace(5000, 4, "1001");
    CHECK(scan_stream(s) >= 5000);
    CHECK(scan_stream(s) <= 5003);
}

TEST_CASE("white source estimate is flat") {
    const Stream s = generate_stream({{Kind::Free, 1, std::nullopt}, 10'000'000, 7});
    const std::vector<double> grid = frequency_grid(256);
    const PsdResult r = estimate_psd(s, grid);
    for (size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(r.components.at("S_Y")[i] - 1.0) < 0.02);
}

TEST_CASE("periodic autocorrelation estimate") {
    const ConstraintFamily f{Kind::ALoco, 1, 4};
    const AutocorrSeries exact = exact_autocorr(f, Process::Y);
    const EstimatedAutocorr est = estimate_autocorr(generate_stream({f, 10'000'000, 7}), 9);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(est.periodic[static_cast<size_t>(k)] - exact.periodic[static_cast<size_t>(k)].get_d()) < 0.002);
}

TEST_CASE("estimation error shrinks with stream length") {
    const ConstraintFamily f{Kind::ALoco, 2, 6};
    const AutocorrSeries exact = exact_autocorr(f, Process::Y);
    auto err = [&](uint64_t n) {
        double worst = 0;
        for (uint64_t seed = 1; seed <= 4; ++seed) {
            const EstimatedAutocorr e = estimate_autocorr(generate_stream({f, n, seed}), 15);
            for (size_t k = 0; k < 16; ++k) worst = std::max(worst, std::abs(e.total[k] - exact.total[k].get_d()));
        }
        return worst;
    };
    const double small = err(100'000);
    const double large = err(10'000'000);
    CHECK(large < small / 4);
}

TEST_CASE("brute-force spectrum equals the transfer-matrix route") {
    for (const ConstraintFamily& f : {ConstraintFamily{Kind::ALoco, 1, 4}, ConstraintFamily{Kind::Loco, 2, 6}}) {
        PsdOptions o;
        o.points = 256;
        const PsdResult theory = compute_psd(f, o);
        const PsdResult brute = brute_force_spectrum(enumerate_codebook(f), bridging_for(f), theory.grid);
        CHECK(compare_curves(theory.continuous, brute.continuous).max_abs < 1e-9);
        CHECK(brute.lines.size() == theory.lines.size());
    }
}

TEST_CASE("curve comparison") {
    const Deviation d = compare_curves({1, 2, 3}, {1, 2.5, 2});
    CHECK(d.max_abs == doctest::Approx(1.0));
    CHECK(d.mean_abs == doctest::Approx(0.5));
    CHECK_THROWS(compare_curves({1}, {1, 2}));
}

}
