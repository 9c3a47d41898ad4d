#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "hyten/hypergraph.hpp"

namespace hyten {

/// Coefficients c_0..c_D of a formal power series truncated at degree D.
struct TruncatedSeries {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator[](int k) const {
        return k >= 0 && k < static_cast<int>(coeffs.size()) ? coeffs[k] : 0.0;
    }
};

/// Truncated exp(a t): coefficients a^k / k!. drop_constant zeroes c_0,
/// giving the exp(a t) - 1 factor.
TruncatedSeries exp_series(double a, int degree, bool drop_constant = false);

/// In-place radix-2 complex FFT; data.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

/// Product of f and g truncated to `degree`. The FFT path pads to the next
/// power of two >= len(f)+len(g)-1; the direct path is the plain convolution.
TruncatedSeries mult_series_fft(const TruncatedSeries& f, const TruncatedSeries& g, int degree);
TruncatedSeries mult_series_direct(const TruncatedSeries& f, const TruncatedSeries& g, int degree);
TruncatedSeries mult_series(const TruncatedSeries& f, const TruncatedSeries& g, int degree);

struct GenfnConfig {
    int direct_mult_threshold = 32;  // below this target degree, direct convolution replaces FFT
    int subset_cap = 24;             // hard cap on 2^|e| subset enumeration
};

/// Edge-size crossover between subset expansion and FFT extraction:
/// log2(r+1) + log2 log2 (r+1), truncated, floored at 2.
int k_star(int r_target);

/// (exp(a t) * prod_i (exp(b_i t) - 1))[t^r_target] by iterated truncated
/// multiplication, re-truncating to r_target after each factor.
double edge_coeff_fft(double a, std::span<const double> bs, int r_target);

/// Same coefficient by inclusion-exclusion over subsets of bs, iterated in
/// Gray-code order so each step updates the base sum by one add or subtract.
double edge_coeff_subset(double a, std::span<const double> bs, int r_target,
                         const GenfnConfig& cfg = {});

/// Hybrid dispatch: subset expansion for |bs| <= k*(r_target) (and under the
/// subset cap), series multiplication otherwise; edges of full size take the
/// uniform shortcut prod(bs), oversized edges are exactly zero.
double edge_coeff(double a, std::span<const double> bs, int r_target,
                  const GenfnConfig& cfg = {});

/// Smallest-coefficient estimate b_min^r / r! against the smallest positive
/// normal double. Guards the generating-function kernels against underflow.
struct SafetyReport {
    int r = 0;
    double b_min = 0.0;
    double min_coeff_estimate = 0.0;
    bool safe = false;
};

SafetyReport safety_check(int r, double b_min);

/// b_min over vertices with nonzero degree.
SafetyReport safety_check(const Hypergraph& h, const DenseVector& b);

}  // namespace hyten
