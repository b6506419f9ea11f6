#include "cdyn/circle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace cdyn {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double frac(double x) { return x - std::floor(x); }
}  // namespace

// ---------------------------------------------------------------------------
// Blaschke fractions
// ---------------------------------------------------------------------------

cplx blaschke_B(cplx z) {
    cplx den = 1.0 - 3.0 * z;
    if (den == cplx(0.0)) throw std::domain_error("blaschke_B: pole at z = 1/3");
    return z * z * (z - 3.0) / den;
}

cplx blaschke_P(cplx z) {
    cplx z2 = z * z;
    if (!std::isfinite(z2.real()) || !std::isfinite(z2.imag())) return cplx(3.0);
    cplx den = z2 + 3.0;
    if (den == cplx(0.0)) throw std::domain_error("blaschke_P: pole at z^2 = -3");
    return (3.0 * z2 + 1.0) / den;
}

BlaschkeParams derive_blaschke_params() {
    // Family with real a: f_a(z) = z^2 (z-a)/(1-az) = (z^3 - a z^2)/(1 - a z).
    // B'(1) = 0 reads N(a) = P'(1)Q(1) - P(1)Q'(1) = 0 with P, Q the numerator
    // and denominator. Each factor is linear in a; assemble N as a quadratic.
    auto polymul = [](const std::array<double, 2>& u, const std::array<double, 2>& v) {
        return std::array<double, 3>{u[0] * v[0], u[0] * v[1] + u[1] * v[0], u[1] * v[1]};
    };
    std::array<double, 2> P1{1.0, -1.0};    // P(1)  = 1 - a
    std::array<double, 2> dP1{3.0, -2.0};   // P'(1) = 3 - 2a
    std::array<double, 2> Q1{1.0, -1.0};    // Q(1)  = 1 - a
    std::array<double, 2> dQ1{0.0, -1.0};   // Q'(1) = -a
    auto t1 = polymul(dP1, Q1);
    auto t2 = polymul(P1, dQ1);
    std::array<double, 3> N{t1[0] - t2[0], t1[1] - t2[1], t1[2] - t2[2]};
    double disc = N[1] * N[1] - 4.0 * N[2] * N[0];
    if (disc < 0.0) throw std::runtime_error("derive_blaschke_params: no real root");
    double r1 = (-N[1] + std::sqrt(disc)) / (2.0 * N[2]);
    double r2 = (-N[1] - std::sqrt(disc)) / (2.0 * N[2]);
    double a = std::max(r1, r2);
    if (!(a > 1.0)) throw std::runtime_error("derive_blaschke_params: no root with a > 1");
    // B(1) = lambda * f_a(1) = 1.
    double f1 = (1.0 - a) * 1.0 / (1.0 - a);
    BlaschkeParams out;
    out.a = a;
    out.lambda = cplx(1.0 / f1, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Lifts
// ---------------------------------------------------------------------------

CircleMapLift make_circle_lift(std::function<double(double)> eval,
                               std::vector<double> critical_angles, std::string label) {
    const Tolerance& tol = default_tolerance();
    const int grid = 1200;
    double prev = eval(0.0);
    double first = prev;
    for (int k = 1; k <= grid; ++k) {
        double x = static_cast<double>(k) / grid;
        double v = eval(x);
        if (v < prev - tol.abs_tol)
            throw std::invalid_argument("make_circle_lift: lift not monotone near x = " +
                                        std::to_string(x) + " (" + label + ")");
        prev = v;
    }
    if (std::abs(prev - first - 1.0) > 1e-8)
        throw std::invalid_argument("make_circle_lift: lift is not degree one (" + label + ")");
    CircleMapLift F;
    F.eval = std::move(eval);
    F.critical_angles = std::move(critical_angles);
    F.label = std::move(label);
    return F;
}

CircleMapLift rotation_lift(double theta) {
    return make_circle_lift([theta](double x) { return x + theta; }, {}, "rotation");
}

namespace {

// Continuous lift of (1/2pi) arg B(e^{2pi i x}), pinned to 0 at x = 0.
// Assembled from branch-safe pieces: arg(z-3) stays in the left half plane;
// arg(z - 1/3) = 2pi x + delta(x) with |delta| < pi/2 via the ellipse trick
// e^{2pi i x} - c = e^{i pi x} ((1-c) cos(pi x) + i (1+c) sin(pi x)).
double lift_B_circle(double x) {
    double s1, c1;
    s1 = std::sin(kPi * x);
    c1 = std::cos(kPi * x);
    double s2 = 2.0 * s1 * c1;            // sin(2 pi x)
    double c2 = 1.0 - 2.0 * s1 * s1;      // cos(2 pi x)
    double alpha3 = kPi + std::atan2(-s2, 3.0 - c2);
    double delta = std::remainder(std::atan2((4.0 / 3.0) * s1, (2.0 / 3.0) * c1) - kPi * x, kTwoPi);
    return x + (alpha3 - delta - kPi) / kTwoPi;
}

}  // namespace

CircleMapLift lift_of_B_tau(double tau) {
    return make_circle_lift([tau](double x) { return tau + lift_B_circle(x); }, {0.0},
                            "B_tau(" + std::to_string(tau) + ")");
}

// ---------------------------------------------------------------------------
// Rotation numbers
// ---------------------------------------------------------------------------

RotationEstimate rotation_number(const CircleMapLift& F, double x0, long n) {
    if (n < 100) throw std::invalid_argument("rotation_number: need n >= 100");
    // Spot check for monotonicity; full validation happens at construction.
    const int spot = 128;
    double prev = F.eval(frac(x0));
    for (int k = 1; k <= spot; ++k) {
        double x = frac(x0) + static_cast<double>(k) / spot;
        double v = F.eval(x);
        if (v < prev - 1e-9)
            throw std::invalid_argument("rotation_number: non-monotone lift detected");
        prev = v;
    }
    // Iterate on the fractional part; displacements are periodic.
    double y = frac(x0);
    double total = 0.0;
    for (long k = 0; k < n; ++k) {
        double d = F.eval(y) - y;
        total += d;
        y = frac(y + d);
    }
    return {total / static_cast<double>(n), 1.0 / static_cast<double>(n)};
}

double solve_rotation_parameter(const std::function<CircleMapLift(double)>& family,
                                const RotationTarget& theta, double tol) {
    CfExpansion cf = cf_expand(theta.value, 40);
    if (cf.rational)
        throw std::invalid_argument("solve_tau: theta is rational; no unique parameter");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_tau: tol must be positive");

    const long n_final = static_cast<long>(std::ceil(2.0 / tol));
    const long n_max = 8 * n_final;  // certification head-room
    long n = std::min<long>(n_final, 4096);

    auto measure = [&](double tau, long len) {
        CircleMapLift F = family(tau);
        double x0 = F.critical_angles.empty() ? 0.0 : F.critical_angles[0];
        return rotation_number(F, x0, len).estimate;
    };

    double lo = 0.0, hi = 1.0;
    double best_tau = 0.5, best_resid = 1e300;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        double resid = measure(mid, n) - theta.value;
        if (std::abs(resid) + 1.0 / static_cast<double>(n) < tol) return mid;
        if (std::abs(resid) < best_resid) { best_resid = std::abs(resid); best_tau = mid; }
        if (std::abs(resid) <= 3.0 / static_cast<double>(n) && n < n_max) {
            n = std::min(n_max, 4 * n);  // re-measure the same midpoint, longer orbit
            --it;
            continue;
        }
        if (resid < 0.0) lo = mid; else hi = mid;
    }
    double final_resid = std::abs(measure(best_tau, n_max) - theta.value);
    if (final_resid + 1.0 / static_cast<double>(n_max) < tol) return best_tau;
    throw std::runtime_error("solve_tau: requested tol " + std::to_string(tol) +
                             " not achievable with orbit budget; achieved about " +
                             std::to_string(final_resid + 1.0 / static_cast<double>(n_max)));
}

double solve_tau(const RotationTarget& theta, double tol) {
    return solve_rotation_parameter([](double tau) { return lift_of_B_tau(tau); }, theta, tol);
}

namespace {

// Exact sign of rho(F) - theta via the displacement bound
// |F^n(x) - x - n rho| < 1: once |sum (d_k - theta)| >= 1.5 the sign of the
// drift is decided. Returns 0 when unresolved within the budget.
int displacement_sign(const CircleMapLift& F, double theta, long budget) {
    double y = F.critical_angles.empty() ? 0.0 : frac(F.critical_angles[0]);
    double D = 0.0;
    for (long k = 0; k < budget; ++k) {
        double d = F.eval(y) - y;
        D += d - theta;
        if (D >= 1.5) return 1;
        if (D <= -1.5) return -1;
        y = frac(y + d);
    }
    return 0;
}

}  // namespace

double solve_tau_combinatorial(const RotationTarget& theta, long N_order) {
    if (cf_expand(theta.value, 25).rational)
        throw std::invalid_argument("solve_tau_combinatorial: theta is rational");
    if (N_order < 10) throw std::invalid_argument("solve_tau_combinatorial: N_order too small");
    const long base_budget = std::max<long>(8 * N_order, 1L << 17);
    const long budget_cap = 800000000L;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 220; ++it) {
        double mid = 0.5 * (lo + hi);
        CircleMapLift F = lift_of_B_tau(mid);
        long budget = base_budget;
        int s = displacement_sign(F, theta.value, budget);
        while (s == 0) {
            try {
                conjugacy_to_rotation(F, theta, N_order);
                return mid;
            } catch (const std::exception&) {
                // order still wrong: rho is outside the Farey window but too
                // close for the current budget; escalate
            }
            if (budget >= budget_cap)
                throw std::runtime_error(
                    "solve_tau_combinatorial: sign unresolved at budget cap");
            budget = std::min(budget_cap, budget * 8);
            s = displacement_sign(F, theta.value, budget);
        }
        if (s < 0) lo = mid; else hi = mid;
    }
    throw std::runtime_error("solve_tau_combinatorial: bisection did not settle");
}

// ---------------------------------------------------------------------------
// Conjugacy table and quasisymmetry estimate
// ---------------------------------------------------------------------------

namespace {

// Positions of each index in the circular order of `vals`, starting the cycle
// at index 0. Throws on exact ties (ordering ambiguous).
std::vector<size_t> circular_order(const std::vector<double>& vals) {
    std::vector<size_t> idx(vals.size());
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    for (size_t k = 1; k < idx.size(); ++k)
        if (vals[idx[k]] == vals[idx[k - 1]])
            throw std::runtime_error("circular_order: tied samples, ordering ambiguous");
    auto pos0 = std::find(idx.begin(), idx.end(), size_t{0});
    std::rotate(idx.begin(), pos0, idx.end());
    return idx;
}

}  // namespace

ConjugacyTable conjugacy_to_rotation(const CircleMapLift& F, const RotationTarget& theta,
                                     long N) {
    if (F.critical_angles.size() != 1)
        throw std::invalid_argument("conjugacy_to_rotation: lift must have exactly one critical angle");
    if (N < 2) throw std::invalid_argument("conjugacy_to_rotation: N too small");
    double rho = rotation_number(F, F.critical_angles[0], std::max<long>(N, 100)).estimate;
    if (std::abs(rho - theta.value) > 2.0 / static_cast<double>(N))
        throw std::invalid_argument("conjugacy_to_rotation: rho(F) differs from theta beyond 1/N");

    ConjugacyTable table;
    table.theta = theta;
    table.pairs.reserve(static_cast<size_t>(N));
    std::vector<double> xs, ys;
    xs.reserve(static_cast<size_t>(N));
    ys.reserve(static_cast<size_t>(N));
    double x = frac(F.critical_angles[0]);
    for (long n = 0; n < N; ++n) {
        double y = frac(static_cast<double>(n) * theta.value);
        table.pairs.emplace_back(x, y);
        xs.push_back(x);
        ys.push_back(y);
        x = frac(F.eval(x));
    }
    std::vector<size_t> ox = circular_order(xs);
    std::vector<size_t> oy = circular_order(ys);
    for (size_t k = 0; k < ox.size(); ++k) {
        if (ox[k] != oy[k]) {
            throw std::runtime_error(
                "conjugacy_to_rotation: circular order violated at sorted position " +
                std::to_string(k) + " (orbit index " + std::to_string(ox[k]) +
                "); wrong tau or too-short orbit");
        }
    }
    return table;
}

void write_conjugacy_csv(const ConjugacyTable& table, std::ostream& os) {
    os << "n,x,y\n";
    char buf[128];
    for (size_t n = 0; n < table.pairs.size(); ++n) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, table.pairs[n].first,
                      table.pairs[n].second);
        os << buf;
    }
}

double qs_constant_estimate(const ConjugacyTable& table, std::span<const double> scales) {
    const size_t N = table.pairs.size();
    if (scales.empty()) throw std::invalid_argument("qs_constant_estimate: empty scales");
    for (double h : scales)
        if (!(h > 0.0 && h < 1.0) || h < 3.0 / static_cast<double>(N))
            throw std::invalid_argument("qs_constant_estimate: scale outside (0,1) or below resolution");

    // Sort by x and lift y monotonically; the order invariant makes the lift
    // strictly increasing with total increment 1 over a period.
    std::vector<std::pair<double, double>> pts(table.pairs.begin(), table.pairs.end());
    std::sort(pts.begin(), pts.end());
    std::vector<double> X(N + 1), Y(N + 1);
    X[0] = pts[0].first;
    Y[0] = pts[0].second;
    for (size_t k = 1; k < N; ++k) {
        X[k] = pts[k].first;
        double dy = pts[k].second - pts[k - 1].second;
        if (dy <= 0.0) dy += 1.0;
        Y[k] = Y[k - 1] + dy;
    }
    X[N] = X[0] + 1.0;
    {
        double dy = pts[0].second - pts[N - 1].second;
        if (dy <= 0.0) dy += 1.0;
        Y[N] = Y[N - 1] + dy;
    }

    auto eta = [&](double x) {
        double shift = std::floor(x - X[0]);
        double xr = x - shift;  // in [X0, X0+1)
        size_t k = static_cast<size_t>(std::upper_bound(X.begin(), X.end(), xr) - X.begin());
        if (k == 0) k = 1;
        if (k > N) k = N;
        double t = (xr - X[k - 1]) / (X[k] - X[k - 1]);
        return shift + Y[k - 1] + t * (Y[k] - Y[k - 1]);
    };

    double c = 1.0;
    for (double h : scales) {
        for (size_t k = 0; k < N; ++k) {
            double x = X[k];
            double up = eta(x + h) - eta(x);
            double dn = eta(x) - eta(x - h);
            double r = up / dn;
            c = std::max(c, std::max(r, 1.0 / r));
        }
    }
    return c;
}

}  // namespace cdyn
