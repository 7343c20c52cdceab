#pragma once

#include <vector>

#include "h2opa/moments.hpp"

namespace h2opa {

// Gauss rules for the three weight functions appearing in the triple-integral
// form of the root criterion:
//   Laguerre        e^(-t)                  on [0, inf)
//   JacobiMinusHalf w^(-1/2) (1-w)^(-1/2)   on [0, 1]   (mass pi)
//   JacobiPlusHalf  w^(+1/2) (1-w)^(-1/2)   on [0, 1]   (mass pi/2)
enum class RuleKind { Laguerre, JacobiMinusHalf, JacobiPlusHalf };

struct QuadRule {
    RuleKind kind = RuleKind::Laguerre;
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes and weights by the Golub-Welsch method: eigenvalues and first
// eigenvector components of the symmetric tridiagonal matrix built from the
// three-term recurrence of the orthogonal polynomials for the weight.
// The weight sum is checked against the exact mass (InternalError on
// mismatch); the eigeniteration itself throws EigFailure if it stalls.
QuadRule make_rule(RuleKind kind, int order);

struct IntegralSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

// The two sides of the integral form of the criterion,
//   lhs = int e^(-t-y) t^(a-1) y^(a-1)
//             [(4/r) y w^(1/2) + w^(-1/2)] (1-w)^(-1/2) 0F1(;2;(4/r^2)tyw),
//   rhs = 2 int e^(-t-y) t^(a-1) y^(a-1) w^(-1/2) (1-w)^(-1/2)
//             0F1(;1;(4/r^2)tyw),
// by tensor-product Gauss rules of the given orders.  Nodes with
// t*y > 1e4 are dropped: the e^(-t-y) factor is below e^(-200) there.
// Requires alpha > 0 (the t^(alpha-1) singularity stays integrable and the
// Gauss nodes avoid 0, but alpha = 0 would not be integrable at all).
IntegralSides criterion_integral_sides(const FunctionParams& params,
                                       int order_t, int order_y, int order_w,
                                       double tol = kDefaultTol);

// What the moment side predicts for the two integrals: unwinding the same
// chain of reductions that produces the integral form (Laplace representation
// of each 3F2, Euler integral for the inner 1F2, and the 0F1 contiguous
// relation) gives
//   lhs = pi * Gamma(alpha)^2 * (2b + a - c),
//   rhs = 2 pi * Gamma(alpha)^2 * a,
// so lhs - rhs = pi * Gamma(alpha)^2 * (2b - a - c) carries the criterion's
// sign.
IntegralSides series_reference_sides(const FunctionParams& params,
                                     double tol = kDefaultTol,
                                     long max_terms = kDefaultMaxTerms);

} // namespace h2opa
