#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace prophet {

// Solved constants of a control problem.
struct ControlSolution {
    enum class Problem { P, Q };
    Problem problem = Problem::P;
    double beta = std::nan("");     // Q only
    double alpha = 0.0;
    double mu_bar = std::nan("");   // P only
    double a_star = 0.0;
    double t_star = std::nan("");   // Q only

    // diagnostics
    double root_residual = std::nan("");
    double conjectured_a_bt = std::nan("");   // exp(2(t-1)/(beta+t)^2)
    double conjectured_a_b1 = std::nan("");   // exp(2(t-1)/(beta+1)^2), as printed
    bool inner_min_at_zero = false;
};

// Root of 1 - e^{sqrt(mu)}/sqrt(mu) + e^{mu/2}/sqrt(mu) = 0, bracketed on
// [1, 3], |residual| < 1e-12.
double solve_mu_bar();

// residual of the defining equation (exposed for tests)
double mu_bar_equation(double mu);

// Closed-form optimum e^{-sqrt(mu)}(1 - e^{sqrt(mu)} + sqrt(mu)) / (e^{-mu/2} - 1).
double p_value(double mu_bar);

// Lower-bound family value at (mu, b); the b = 1 pole is evaluated by its
// analytic limit. The infimum over b is attained at b -> 1.
double p_lower_expression(double mu, double b);

// Upper-bound family value at (a, kappa), kappa >= -2 ln a. Diagnostic used
// to check the matching-bounds saddle numerically.
double p_upper_value(double a, double kappa);

// Objective of the budgeted problem at (beta, t, a): binding branch on [0, t]
// plus the parametric arc on [t, 1]. a = 1 is evaluated by its limit.
double q_objective(double beta, double t, double a);

ControlSolution solve_p();

// sup over t of (inf over a) of q_objective. Valid for 0 < beta <= 2/sqrt(mu_bar).
ControlSolution solve_q(double beta);

// Rows solve independently (parallelized when OpenMP is enabled).
std::vector<ControlSolution> solve_q_rows(const std::vector<double>& betas);

struct BoundRow {
    double beta, alpha, t, a;
};

// Published lower bounds used as regression references by the CLI and tests.
extern const std::array<BoundRow, 14> kReferenceBounds;

} // namespace prophet
