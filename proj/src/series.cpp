#include "hyten/series.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "hyten/combinatorics.hpp"

namespace hyten {

TruncatedSeries exp_series(double a, int degree, bool drop_constant) {
    if (degree < 0) throw PreconditionError("exp_series: negative degree");
    TruncatedSeries s;
    s.coeffs.resize(degree + 1);
    s.coeffs[0] = drop_constant ? 0.0 : 1.0;
    double c = 1.0;
    for (int k = 1; k <= degree; ++k) {
        c *= a / k;
        s.coeffs[k] = c;
    }
    return s;
}

void fft_inplace(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) throw PreconditionError("fft: size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double angle = 2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> u = data[i + j];
                std::complex<double> v = data[i + j + len / 2] * w;
                data[i + j] = u + v;
                data[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (auto& x : data) x /= static_cast<double>(n);
}

TruncatedSeries mult_series_direct(const TruncatedSeries& f, const TruncatedSeries& g, int degree) {
    if (degree < 0) throw PreconditionError("mult_series: negative degree");
    TruncatedSeries out;
    out.coeffs.assign(degree + 1, 0.0);
    int fd = f.degree(), gd = g.degree();
    for (int i = 0; i <= std::min(fd, degree); ++i) {
        if (f.coeffs[i] == 0.0) continue;
        int jmax = std::min(gd, degree - i);
        for (int j = 0; j <= jmax; ++j) out.coeffs[i + j] += f.coeffs[i] * g.coeffs[j];
    }
    return out;
}

TruncatedSeries mult_series_fft(const TruncatedSeries& f, const TruncatedSeries& g, int degree) {
    if (degree < 0) throw PreconditionError("mult_series: negative degree");
    std::size_t full = f.coeffs.size() + g.coeffs.size() - 1;
    std::size_t size = 1;
    while (size < full) size <<= 1;
    std::vector<std::complex<double>> fa(size), fb(size);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) fa[i] = f.coeffs[i];
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) fb[i] = g.coeffs[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    TruncatedSeries out;
    out.coeffs.assign(degree + 1, 0.0);
    std::size_t upto = std::min<std::size_t>(degree + 1, full);
    for (std::size_t i = 0; i < upto; ++i) out.coeffs[i] = fa[i].real();
    return out;
}

TruncatedSeries mult_series(const TruncatedSeries& f, const TruncatedSeries& g, int degree) {
    GenfnConfig cfg;
    if (degree < cfg.direct_mult_threshold) return mult_series_direct(f, g, degree);
    return mult_series_fft(f, g, degree);
}

int k_star(int r_target) {
    double rp = static_cast<double>(r_target) + 1.0;
    double inner = std::log2(std::max(rp, 4.0));
    int k = static_cast<int>(std::log2(rp) + std::log2(inner));
    return std::max(k, 2);
}

namespace {

double edge_coeff_series(double a, std::span<const double> bs, int r_target, bool use_fft) {
    TruncatedSeries f = exp_series(a, r_target);
    for (double b : bs) {
        TruncatedSeries g = exp_series(b, r_target, /*drop_constant=*/true);
        f = use_fft ? mult_series_fft(f, g, r_target) : mult_series_direct(f, g, r_target);
    }
    return f.coeffs[r_target];
}

}  // namespace

double edge_coeff_fft(double a, std::span<const double> bs, int r_target) {
    if (r_target < 0) throw PreconditionError("edge_coeff: negative target degree");
    return edge_coeff_series(a, bs, r_target, /*use_fft=*/true);
}

double edge_coeff_subset(double a, std::span<const double> bs, int r_target, const GenfnConfig& cfg) {
    if (r_target < 0) throw PreconditionError("edge_coeff: negative target degree");
    const int k = static_cast<int>(bs.size());
    if (k > cfg.subset_cap)
        throw PreconditionError("edge_coeff_subset: edge size exceeds the 2^k cap");
    // Gray-code walk over subsets: one add or subtract updates the base sum.
    double base = a;
    int popcount = 0;
    std::uint64_t gray_prev = 0;
    double acc = (k % 2 == 0 ? 1.0 : -1.0) * std::pow(base, r_target);  // S = {}
    const std::uint64_t count = std::uint64_t{1} << k;
    for (std::uint64_t i = 1; i < count; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        std::uint64_t flipped = gray ^ gray_prev;
        int bit = std::countr_zero(flipped);
        if (gray & flipped) {
            base += bs[bit];
            ++popcount;
        } else {
            base -= bs[bit];
            --popcount;
        }
        gray_prev = gray;
        double sign = ((k - popcount) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * std::pow(base, r_target);
    }
    return acc / factorial(r_target);
}

double edge_coeff(double a, std::span<const double> bs, int r_target, const GenfnConfig& cfg) {
    if (r_target < 0) throw PreconditionError("edge_coeff: negative target degree");
    const int k = static_cast<int>(bs.size());
    // each (exp(b t) - 1) factor raises the minimum degree by one
    if (k > r_target) return 0.0;
    if (k == r_target) {  // uniform-edge shortcut: the only surviving multiset is all-ones
        double p = 1.0;
        for (double b : bs) p *= b;
        return p;
    }
    if (k <= k_star(r_target) && k <= cfg.subset_cap) return edge_coeff_subset(a, bs, r_target, cfg);
    return edge_coeff_series(a, bs, r_target, r_target >= cfg.direct_mult_threshold);
}

SafetyReport safety_check(int r, double b_min) {
    SafetyReport rep;
    rep.r = r;
    rep.b_min = b_min;
    // log-domain: r ln(b_min) - ln(r!) against the smallest positive normal double
    double log_est = b_min > 0.0 ? r * std::log(b_min) - std::lgamma(static_cast<double>(r) + 1.0)
                                 : -std::numeric_limits<double>::infinity();
    rep.min_coeff_estimate = std::exp(log_est);
    rep.safe = log_est >= std::log(std::numeric_limits<double>::min());
    return rep;
}

SafetyReport safety_check(const Hypergraph& h, const DenseVector& b) {
    double b_min = std::numeric_limits<double>::infinity();
    for (int v = 0; v < h.vertex_count(); ++v)
        if (!h.incident_edges(v).empty()) b_min = std::min(b_min, std::abs(b[v]));
    if (!std::isfinite(b_min)) b_min = 0.0;  // no incident vertices at all
    return safety_check(h.rank(), b_min);
}

}  // namespace hyten
