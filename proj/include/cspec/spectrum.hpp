#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cspec/codebook.hpp"
#include "cspec/transfer.hpp"

namespace cspec {

enum class Method { Auto, ClosedForm, Grid, Alternate };
std::string method_name(Method m);
Method parse_method(const std::string& name);

// Unique probability vector with pi * G(1) = pi, solved exactly.
std::vector<Rational> stationary_distribution(const TransferMatrix& g);
// 1 / (pi * G'(1) * u^T)
Rational prob_one(const TransferMatrix& g, const std::vector<Rational>& pi);

// Everything needed to evaluate the bit-process spectrum of one chain.
class SpectrumContext {
public:
    explicit SpectrumContext(TransferMatrix g);

    const TransferMatrix& matrix() const { return g_; }
    const std::vector<Rational>& pi() const { return pi_; }
    const Rational& p1() const { return p1_; }

    // p1 * pi [ (I - G(D))^{-1} + (I - G(1/D))^{-1} - I ] u^T. Throws
    // DiscreteFrequencyError when I - G(D) is numerically singular.
    double psd_X(std::complex<double> D) const;
    // Exact limit of the continuous part of psd_X as D -> 1.
    Rational psd_X_dc_limit() const;
    // Transition-process form used by the alternate matrices:
    // 4 p1 pi [ (I + G(D))^{-1} + (I + G(1/D))^{-1} - I ] u^T.
    double psd_V(std::complex<double> D) const;

private:
    double quadratic_form(std::complex<double> D, double sign) const;
    // pi [ (I - G(D))^{-1} + (I - G(1/D))^{-1} ] u^T with the pole at D = 1
    // cancelled exactly; accurate close to DC.
    std::complex<double> regular_resolvent_sum(std::complex<double> D) const;
    // pi (I - G(D))^{-1} u^T minus its pole part 1 / ((1 - D) s(D)).
    std::complex<double> resolvent_remainder(std::complex<double> D) const;

    TransferMatrix g_;
    CompiledMatrix compiled_;
    // F(D) = (G(1) - G(D)) / (1 - D), s(D) = pi F(D) u^T and
    // t(D) = (s(1/D) - D s(D)) / (1 - D), all regular at D = 1.
    CompiledMatrix slope_;
    CompiledMatrix s_;
    CompiledMatrix t_;
    Eigen::MatrixXd bordered_;  // I - G(1) + u^T pi
    std::vector<Rational> pi_;
    Rational p1_;
    Eigen::VectorXd pi_d_;
    double p1_d_ = 0;
};

// Level mapping 0 -> -1, 1 -> +1: 4 S_X away from DC, 4 S_X + 1 - 4 p1 at D = 1.
double psd_Y_from_X(double sx, double p1, bool at_dc);
// (sin(pi f) / (pi f))^2, equal to 1 at f = 0.
double sinc2(double f);
// Rectangular pulse of unit width.
double psd_W(double sy, double f);
// Half-bin grid f_i = -1/2 + (i + 1/2) / points, which never lands on a
// multiple of 1/(m+x).
std::vector<double> frequency_grid(int points);

struct SpectralLine {
    double f = 0;
    double weight = 0;
};

struct PsdResult {
    std::string family;
    std::string method;
    std::vector<double> grid;
    std::vector<double> continuous;  // S_W continuous component
    std::vector<SpectralLine> lines;
    // Per-process spectra on the same grid, e.g. "S_Y", and "S_A", "S_C" for LOCO.
    std::map<std::string, std::vector<double>> components;
    double dc_limit = 0;  // continuous S_W as f -> 0
    std::vector<std::string> notes;
};

struct PsdOptions {
    int points = 2048;
    Method method = Method::Auto;
    bool lines = true;  // compute discrete lines for finite families
};

// Weight (2 p1 - 1)^2 of the DC impulse of a stationary NRZ stream.
double dc_line_weight(const Rational& p1);

// The chain used for NRZ families under the requested method. Closed forms
// are used when they exist; the finite closed forms need m >= x+2, below
// which the grid method is used.
TransferMatrix family_matrix(const ConstraintFamily& family, Method method);

PsdResult psd_loco(const ConstraintFamily& family, const std::vector<double>& grid, Method method);
PsdResult compute_psd(const ConstraintFamily& family, const PsdOptions& options);

}  // namespace cspec
