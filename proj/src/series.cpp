#include "cdyn/series.hpp"

#include <stdexcept>

namespace cdyn {

cplx TruncatedSeries::eval(cplx z) const {
    cplx acc(0.0);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
    return acc * z;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    TruncatedSeries out(order);
    int n = std::min(order, this->order());
    for (int k = 0; k < n; ++k) out.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k)];
    return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (int k = 0; k < n; ++k)
        out.c_[static_cast<size_t>(k)] = a.c_[static_cast<size_t>(k)] + b.c_[static_cast<size_t>(k)];
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (int k = 0; k < n; ++k)
        out.c_[static_cast<size_t>(k)] = a.c_[static_cast<size_t>(k)] - b.c_[static_cast<size_t>(k)];
    return out;
}

TruncatedSeries operator*(cplx s, const TruncatedSeries& a) {
    TruncatedSeries out(a.order());
    for (int k = 0; k < a.order(); ++k) out.c_[static_cast<size_t>(k)] = s * a.c_[static_cast<size_t>(k)];
    return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    int n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    // z^{i+1} * z^{j+1} = z^{i+j+2}
    for (int i = 0; i < n; ++i) {
        if (a.c_[static_cast<size_t>(i)] == cplx(0.0)) continue;
        for (int j = 0; i + j + 2 <= n; ++j)
            out.c_[static_cast<size_t>(i + j + 1)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
    }
    return out;
}

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    int n = std::min(f.order(), g.order());
    if (n == 0) return TruncatedSeries(0);
    TruncatedSeries gt = g.truncated(n);
    // Horner on T_k = f_k + g * T_{k+1}; each T_k = constant c + series s.
    cplx c = f.coeff(n);
    TruncatedSeries s(n);
    for (int k = n - 1; k >= 1; --k) {
        s = (c * gt) + mul(gt, s);
        c = f.coeff(k);
    }
    return (c * gt) + mul(gt, s);
}

TruncatedSeries series_inverse(const TruncatedSeries& f) {
    int n = f.order();
    if (n < 1 || f.coeff(1) == cplx(0.0))
        throw std::invalid_argument("series_inverse: need nonzero linear coefficient");
    // Triangular recursion on f(g(z)) = z.
    TruncatedSeries g(n);
    g.set_coeff(1, 1.0 / f.coeff(1));
    for (int m = 2; m <= n; ++m) {
        TruncatedSeries comp = compose(f.truncated(m), g.truncated(m));
        // comp coeff at z^m is f_1 * g_m + (terms from lower g's); solve for g_m.
        cplx resid = comp.coeff(m);
        g.set_coeff(m, -resid / f.coeff(1));
    }
    return g;
}

TruncatedSeries series_self_compose(const TruncatedSeries& s, int times) {
    if (times < 1) throw std::invalid_argument("series_self_compose: times must be >= 1");
    TruncatedSeries out = s;
    for (int k = 1; k < times; ++k) out = compose(out, s);
    return out;
}

}  // namespace cdyn
