#pragma once

#include <vector>

#include "cdyn/numkit.hpp"

namespace cdyn {

/// Truncated power series for germs fixing 0: coefficients of z^1..z^order,
/// no constant term. Arithmetic and composition are exact in the coefficients
/// up to `order`; coefficients beyond `order` are never read.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(int order) : c_(static_cast<size_t>(order), cplx(0.0)) {}
    TruncatedSeries(std::vector<cplx> low_coeffs, int order)
        : c_(std::move(low_coeffs)) {
        c_.resize(static_cast<size_t>(order), cplx(0.0));
    }

    static TruncatedSeries identity(int order) {
        TruncatedSeries s(order);
        if (order >= 1) s.c_[0] = 1.0;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()); }

    /// Coefficient of z^k, 1 <= k <= order.
    cplx coeff(int k) const { return c_.at(static_cast<size_t>(k - 1)); }
    void set_coeff(int k, cplx v) { c_.at(static_cast<size_t>(k - 1)) = v; }

    const std::vector<cplx>& coeffs() const { return c_; }

    cplx eval(cplx z) const;

    TruncatedSeries truncated(int order) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(cplx s, const TruncatedSeries& a);

    /// Product truncated to the common order.
    friend TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

    /// Composition f(g(z)); both must fix 0.
    friend TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);

    /// Compositional inverse; requires a nonzero linear coefficient.
    friend TruncatedSeries series_inverse(const TruncatedSeries& f);

private:
    std::vector<cplx> c_;  // c_[k] = coefficient of z^{k+1}
};

/// times-fold self composition s o s o ... o s (times >= 1 gives s itself).
TruncatedSeries series_self_compose(const TruncatedSeries& s, int times);

}  // namespace cdyn
