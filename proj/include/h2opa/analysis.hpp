#pragma once

#include <vector>

#include "h2opa/moments.hpp"

namespace h2opa {

// Everything the degree-1 root criterion needs in one place:
// the symmetric degree-1 approximant has a zero in the open bidisk exactly
// when 2b > a + c, i.e. when quotient = (a+c)/(2b) < 1.
struct CriterionReport {
    FunctionParams params;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double lhs = 0.0;       // 2b
    double rhs = 0.0;       // a + c
    double quotient = 0.0;  // (a+c)/(2b); +inf when b = 0 (constant f)
    bool has_root = false;  // lhs > rhs
};

CriterionReport check_criterion(const FunctionParams& params,
                                double tol = kDefaultTol,
                                long max_terms = kDefaultMaxTerms);

// (a+c)/(2b).  Equals |p0| / (2 |p1|) for the degree-1 approximant, which is
// also the modulus of its diagonal zero z1 = z2.
double quotient(const FunctionParams& params, double tol = kDefaultTol,
                long max_terms = kDefaultMaxTerms);

// Uniform grid endpoint-inclusive: lo, lo + (hi-lo)/(steps-1), ..., hi.
struct Range {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 0;
};

struct ScanResult {
    std::vector<double> alphas;
    std::vector<double> rs;
    // row i = alpha index, column j = r index
    std::vector<std::vector<bool>> verdicts;
    std::vector<std::vector<double>> quotients;
};

// Evaluates the quotient over the Cartesian grid.  A cell whose series
// evaluation fails is recorded as quotient = NaN, verdict = false, and the
// scan continues: one bad cell must not kill a long sweep.
ScanResult scan_region(Range alpha_range, Range r_range,
                       double tol = kDefaultTol,
                       long max_terms = kDefaultMaxTerms);

struct MinimizeResult {
    double alpha_star = 0.0;
    double r_star = 0.0;
    double quotient_star = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Derivative-free simplex descent (reflection 1, expansion 2, contraction
// 0.5, shrink 0.5) on (alpha, r), with +infinity returned at or below the
// barrier r = 2 + 1e-9.  Terminates when the simplex diameter drops under
// sim_tol; throws NoConvergence after 10000 objective evaluations.
MinimizeResult minimize_quotient(double alpha0, double r0,
                                 double sim_tol = 1e-12,
                                 double tol = kDefaultTol,
                                 long max_terms = kDefaultMaxTerms);

} // namespace h2opa
