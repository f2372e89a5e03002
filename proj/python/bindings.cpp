#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cspec/clocked.hpp"
#include "cspec/codebook.hpp"
#include "cspec/cyclo.hpp"
#include "cspec/errors.hpp"
#include "cspec/oracle.hpp"
#include "cspec/spectrum.hpp"
#include "cspec/transfer.hpp"
#include "cspec/version.hpp"

namespace py = pybind11;
using namespace cspec;

namespace {

ConstraintFamily make_family(const std::string& family, int x, std::optional<int> m) {
    ConstraintFamily f{parse_kind(family), x, m};
    f.validate();
    return f;
}

std::vector<std::string> rational_strings(const std::vector<Rational>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

std::vector<double> doubles(const std::vector<Rational>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& q : v) out.push_back(q.get_d());
    return out;
}

py::dict psd_dict(const PsdResult& r) {
    py::dict d;
    d["family"] = r.family;
    d["method"] = r.method;
    d["f"] = r.grid;
    d["continuous"] = r.continuous;
    py::list lines;
    for (const auto& l : r.lines) lines.append(py::make_tuple(l.f, l.weight));
    d["lines"] = lines;
    d["components"] = r.components;
    d["dc_limit"] = r.dc_limit;
    d["notes"] = r.notes;
    return d;
}

py::dict ostd_dict(const Ostd& o) {
    py::dict d;
    d["names"] = o.names;
    py::list edges;
    for (const auto& e : o.edges) {
        py::list runs;
        for (const auto& r : e.runs) runs.append(py::make_tuple(r.t, to_string(r.p)));
        py::dict ed;
        ed["from"] = e.from;
        ed["to"] = e.to;
        ed["runs"] = runs;
        edges.append(ed);
    }
    d["edges"] = edges;
    return d;
}

py::dict codebook(const std::string& family, int x, std::optional<int> m) {
    const Codebook cb = enumerate_codebook(make_family(family, x, m));
    std::vector<std::string> words;
    for (size_t i = 0; i < cb.size(); ++i) words.push_back(cb.word_string(i));
    py::dict d;
    d["words"] = words;
    d["N"] = cb.counts.N;
    d["N1"] = cb.counts.N1;
    d["N2"] = cb.counts.N2;
    d["N3"] = cb.counts.N3;
    return d;
}

py::dict ostm(const std::string& family, int x, std::optional<int> m, const std::string& method) {
    const TransferMatrix g = family_matrix(make_family(family, x, m), parse_method(method));
    const std::vector<Rational> pi = stationary_distribution(g);
    std::vector<std::vector<std::string>> entries(g.size());
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < g.size(); ++j) entries[i].push_back(g.at(i, j).to_string());
    py::dict d;
    d["method"] = g.method;
    d["names"] = g.names;
    d["entries"] = entries;
    d["stationary"] = rational_strings(pi);
    d["p1"] = to_string(prob_one(g, pi));
    d["row_stochastic"] = g.row_stochastic();
    return d;
}

py::dict psd(const std::string& family, int x, std::optional<int> m, int points, const std::string& method) {
    PsdOptions o;
    o.points = points;
    o.method = parse_method(method);
    return psd_dict(compute_psd(make_family(family, x, m), o));
}

py::dict autocorr(const std::string& family, int x, std::optional<int> m, const std::string& process, int k_max) {
    if (process != "X" && process != "Y") throw UsageError("process must be 'X' or 'Y'");
    const AutocorrSeries s = exact_autocorr(make_family(family, x, m), process == "X" ? Process::X : Process::Y, k_max);
    py::dict d;
    d["period"] = s.period;
    d["means"] = rational_strings(s.means);
    d["total"] = doubles(s.total);
    d["periodic"] = doubles(s.periodic);
    d["aperiodic"] = doubles(s.aperiodic);
    return d;
}

std::optional<double> bandwidth(const std::string& family, int x, std::optional<int> m, int points) {
    PsdOptions o;
    o.points = points;
    o.lines = false;
    return bandwidth_3db(compute_psd(make_family(family, x, m), o));
}

py::dict clocked_ostd(const std::string& family, int x, int m) {
    const ConstraintFamily f = make_family(family, x, m);
    if (!is_clocked(f.kind)) throw UsageError("clocked_ostd needs caloco or cloco");
    const ClockedInputs in = clocked_inputs_from_fstd(build_clocked_fstd(f));
    const BfsResult r = bfs_ostd(in);
    py::dict d = ostd_dict(r.ostd);
    d["k_eff"] = in.k_eff;
    d["iterations"] = r.iterations;
    d["max_steps"] = r.max_steps;
    return d;
}

py::dict monte_carlo(const std::string& family, int x, std::optional<int> m, uint64_t symbols, uint64_t seed,
                     int points, double window_c) {
    StreamConfig sc;
    sc.family = make_family(family, x, m);
    sc.symbols = symbols;
    sc.seed = seed;
    EstimateOptions eo;
    eo.window_c = window_c;
    PsdResult r;
    {
        py::gil_scoped_release release;
        const Stream s = generate_stream(sc);
        const long bad = scan_stream(s);
        if (bad >= 0) throw ComputationError("generated stream violates the constraint at symbol " + std::to_string(bad));
        r = estimate_psd(s, frequency_grid(points), eo);
    }
    r.family = sc.family.label();
    return psd_dict(r);
}

}  // namespace

PYBIND11_MODULE(_cspec, mod) {
    mod.doc() = "Exact power spectra of constrained binary codes";
    mod.attr("__version__") = kVersion;

    py::register_exception<UsageError>(mod, "UsageError", PyExc_ValueError);
    py::register_exception<CapacityError>(mod, "CapacityError", PyExc_RuntimeError);
    py::register_exception<ComputationError>(mod, "ComputationError", PyExc_RuntimeError);

    mod.def("codebook", &codebook, py::arg("family"), py::arg("x"), py::arg("m") = py::none(),
            "Lexicographically ordered codebook and its group counts.");
    mod.def("ostm", &ostm, py::arg("family"), py::arg("x"), py::arg("m") = py::none(), py::arg("method") = "auto",
            "Transfer matrix entries, stationary distribution and probability of a one (exact strings).");
    mod.def("psd", &psd, py::arg("family"), py::arg("x"), py::arg("m") = py::none(), py::arg("points") = 2048,
            py::arg("method") = "auto", "Continuous spectrum on the half-bin grid plus discrete lines.");
    mod.def("autocorr", &autocorr, py::arg("family"), py::arg("x"), py::arg("m"), py::arg("process") = "Y",
            py::arg("k_max") = -1, "Exact phase-averaged autocorrelation of a codeword stream.");
    mod.def("bandwidth", &bandwidth, py::arg("family"), py::arg("x"), py::arg("m") = py::none(),
            py::arg("points") = 4096, "3 dB bandwidth of the continuous spectrum, or None.");
    mod.def("clocked_ostd", &clocked_ostd, py::arg("family"), py::arg("x"), py::arg("m"),
            "One-step diagram of a self-clocked code.");
    mod.def("monte_carlo", &monte_carlo, py::arg("family"), py::arg("x"), py::arg("m") = py::none(),
            py::arg("symbols") = 1'000'000, py::arg("seed") = 1, py::arg("points") = 2048, py::arg("window_c") = 10.0,
            "Spectrum estimated from a seeded random stream.");
}
