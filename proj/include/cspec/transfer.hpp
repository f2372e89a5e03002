#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cspec/codebook.hpp"
#include "cspec/fstd.hpp"
#include "cspec/ratfn.hpp"

namespace cspec {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Square matrix G(D) of exact rational functions; entry (i, j) is the
// generating function of run lengths from state i to state j.
class TransferMatrix {
public:
    TransferMatrix() = default;
    explicit TransferMatrix(size_t n) : n_(n), entries_(n * n) {}

    size_t size() const { return n_; }
    RationalFn& at(size_t i, size_t j) { return entries_[i * n_ + j]; }
    const RationalFn& at(size_t i, size_t j) const { return entries_[i * n_ + j]; }

    // Exact values of G, G' and G'' at D = 1.
    RationalMatrix at_one() const;
    RationalMatrix derivative_at_one() const;
    RationalMatrix second_derivative_at_one() const;

    // Entrywise complex evaluation; throws ComputationError naming the entry
    // when D is a pole.
    Eigen::MatrixXcd evaluate(std::complex<double> D) const;

    bool row_stochastic() const;
    // The first `terms` series coefficients of every entry are >= 0.
    bool nonnegative_series(int terms) const;

    std::vector<std::string> names;  // state names, in row order
    std::string family;
    std::string method;

private:
    size_t n_ = 0;
    std::vector<RationalFn> entries_;
};

// Double-precision copy of a TransferMatrix for fast repeated evaluation.
class CompiledMatrix {
public:
    CompiledMatrix() : n_(0) {}
    explicit CompiledMatrix(const TransferMatrix& g);
    size_t size() const { return n_; }
    void evaluate(std::complex<double> D, Eigen::MatrixXcd& out) const;

private:
    struct Entry {
        size_t i, j;
        std::vector<double> num, den;
    };
    size_t n_;
    std::vector<Entry> entries_;
};

TransferMatrix ostm_from_ostd(const Ostd& ostd);

TransferMatrix closed_form_ax(int x);
TransferMatrix closed_form_sx(int x);
// Requires m >= x+2.
TransferMatrix closed_form_aloco(int m, int x);
// Matrix of the bit-flipped A signal of a LOCO stream; requires m >= x+2.
TransferMatrix closed_form_loco_A(int m, int x);
// Cyclic matrix of the C signal (1 on codeword symbols, 0 on bridges).
TransferMatrix loco_C_matrix(int m, int x);
// Transition-process matrices used with NRZI-style inversion.
TransferMatrix alternate_ax(int x);
TransferMatrix alternate_sx(int x);
TransferMatrix unconstrained_matrix();

// Infinite families: stationary FSTD; finite families: merged positional
// grid (A signal view for LOCO).
TransferMatrix grid_ostm(const ConstraintFamily& family, bool merge = true);

// Result of comparing two chains up to lumping of equivalent states.
struct LumpingComparison {
    bool equivalent = false;
    size_t classes_first = 0;
    size_t classes_second = 0;
};

// Colour refinement on the disjoint union: states are equivalent when they
// reach each colour class with identical aggregated rational functions.
LumpingComparison lumping_equivalent(const TransferMatrix& a, const TransferMatrix& b);

// Entrywise exact equality, including size.
bool exactly_equal(const TransferMatrix& a, const TransferMatrix& b);

}  // namespace cspec
