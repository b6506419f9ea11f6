#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cdyn/numkit.hpp"

namespace cdyn {

// ---------------------------------------------------------------------------
// The two explicit Blaschke fractions
// ---------------------------------------------------------------------------

/// B(z) = z^2 (z-3)/(1-3z). Degree 3, preserves the unit circle, critical
/// point of local degree 3 at z = 1. Throws on the pole z = 1/3.
cplx blaschke_B(cplx z);

/// P(z) = (3z^2+1)/(z^2+3). Degree 2, preserves the unit circle, parabolic
/// fixed point at z = 1 with multiplier 1. Throws on the poles z^2 = -3.
cplx blaschke_P(cplx z);

struct BlaschkeParams {
    double a = 0.0;   // real, > 1
    cplx lambda;      // unit modulus
};

/// Solves, inside the family lambda z^2 (z-a)/(1 - conj(a) z) with real a > 1,
/// the constraints {z=1 critical of local degree 3} and {B(1)=1}.
BlaschkeParams derive_blaschke_params();

// ---------------------------------------------------------------------------
// Circle homeomorphism lifts
// ---------------------------------------------------------------------------

/// Monotone degree-one lift of a circle homeomorphism. Constructed through
/// make_circle_lift, which validates degree one and monotonicity on a grid.
struct CircleMapLift {
    std::function<double(double)> eval;
    std::vector<double> critical_angles;  // angles in [0,1)
    std::string label;
};

CircleMapLift make_circle_lift(std::function<double(double)> eval,
                               std::vector<double> critical_angles,
                               std::string label);

/// Lift of the rigid rotation x -> x + theta.
CircleMapLift rotation_lift(double theta);

/// Lift of B_tau = R_tau o B restricted to the circle, normalized so that
/// lift(0) lies in [tau, tau+1). Closed form, O(1) per evaluation.
CircleMapLift lift_of_B_tau(double tau);

struct RotationEstimate {
    double estimate = 0.0;
    double error_bound = 0.0;  // 1/n for degree-one monotone lifts
};

/// Birkhoff rotation-number estimate (F^n(x0) - x0)/n.
RotationEstimate rotation_number(const CircleMapLift& F, double x0, long n);

/// Unique tau in [0,1) with rho(B_tau) = theta, to within tol.
/// Adaptive-orbit bisection; base orbit length ceil(2/tol).
double solve_tau(const RotationTarget& theta, double tol);

/// Same solver applied to an arbitrary monotone one-parameter family.
double solve_rotation_parameter(const std::function<CircleMapLift(double)>& family,
                                const RotationTarget& theta, double tol);

/// Tau refined until the critical orbit's circular order matches the R_theta
/// orbit for the first N_order points. The circular order at length N is only
/// sensitive to rho within the Farey window of theta at level N (width about
/// 1/(q N) for convergent denominators q), far below any Birkhoff-resolvable
/// tolerance, so bisection here is driven by the exact displacement sign test
/// sign(F^n(x) - x - n theta) with escalating orbit budgets.
double solve_tau_combinatorial(const RotationTarget& theta, long N_order);

// ---------------------------------------------------------------------------
// Conjugacy to the rigid rotation
// ---------------------------------------------------------------------------

/// Sampled conjugacy: pairs (angle of n-th orbit point of the critical point,
/// n*theta mod 1). The circular order of the two columns agrees; this is the
/// combinatorial content of the conjugacy.
struct ConjugacyTable {
    std::vector<std::pair<double, double>> pairs;
    RotationTarget theta;
};

ConjugacyTable conjugacy_to_rotation(const CircleMapLift& F, const RotationTarget& theta,
                                     long N);

/// CSV dump: header `n,x,y`, one row per orbit index, 17 significant digits.
void write_conjugacy_csv(const ConjugacyTable& table, std::ostream& os);

/// Quasisymmetry-constant estimate of the piecewise-linear interpolant of the
/// table, maximized over the table's x-samples and the given scales h.
double qs_constant_estimate(const ConjugacyTable& table, std::span<const double> scales);

}  // namespace cdyn
