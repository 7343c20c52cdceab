#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "h2opa/moments.hpp"

namespace h2opa {

// Exponents {(k1,k2): k1,k2 >= 0, k1+k2 <= n} in graded lexicographic order:
// (0,0) first, then within each total degree by ascending k1.  Degree 1 reads
// (0,0),(0,1),(1,0), which matches the ordering the 3x3 system below assumes.
struct IndexSet {
    int degree = 0;
    std::vector<MomentKey> members;
};

IndexSet make_index_set(int n);

// Gram-type matrix M[k][l] = c_{k-l} over an IndexSet; symmetric positive
// definite because |f|^2 > 0 on the torus, with constant diagonal c_{0,0}.
struct MomentMatrix {
    IndexSet index_set;
    std::vector<std::vector<double>> entries;
};

MomentMatrix build_moment_matrix(const FunctionParams& params, int n,
                                 double tol = kDefaultTol,
                                 long max_terms = kDefaultMaxTerms);

// Coefficients of the degree-n optimal polynomial approximant p of 1/f,
// i.e. the minimizer of ||1 - p f|| over polynomials supported on the
// index set: the solution of M p = e0 (f(0,0) = 1 normalizes the right side).
struct OpaSolution {
    IndexSet index_set;
    std::vector<double> coeffs;
    double residual_norm_sq = 0.0;  // ||1 - p f||^2 = 1 - p_{(0,0)}
    FunctionParams params;
};

// Solves M p = e0 by Cholesky, falling back to partially pivoted elimination
// (pivot tolerance 1e-13 * c00, below which SingularMatrix is thrown).  The
// solution is certified: every residual |(M p - e0)_k| must be <= 1e-10 * c00,
// else InternalError.
OpaSolution solve_opa(const FunctionParams& params, int n,
                      double tol = kDefaultTol,
                      long max_terms = kDefaultMaxTerms);

// Closed form for the symmetric degree-1 approximant p0 + p1 (z1 + z2):
// eliminating the duplicate row of the 3x3 system leaves
//   (a  2b) (p0)   (1)
//   (b a+c) (p1) = (0),
// so p0 = (a+c)/(a(a+c) - 2 b^2), p1 = -b/(a(a+c) - 2 b^2).
std::pair<double, double> opa_degree1(const FunctionParams& params,
                                      double tol = kDefaultTol,
                                      long max_terms = kDefaultMaxTerms);

// ||1 - p f||^2 = p^T M p - 2 p_{(0,0)} + 1 for the coefficients stored in
// sol (not necessarily optimal ones; perturbation tests rely on that).
double residual_norm_sq(const FunctionParams& params, const OpaSolution& sol,
                        double tol = kDefaultTol,
                        long max_terms = kDefaultMaxTerms);

// Searches the closed bidisk for a zero of the polynomial whose coefficients
// are stored in `poly`: z1 runs over a polar grid (grid_size radii x
// grid_size angles), the resulting univariate polynomial in z2 is solved by
// simultaneous (Durand-Kerner) iteration, and near misses are driven inward
// by a damped two-variable local iteration (at most 100 steps).  A returned
// witness always satisfies |z1| < 1, |z2| < 1 and
// |p(z1,z2)| <= 1e-8 * sum|coeffs|.
std::optional<std::pair<std::complex<double>, std::complex<double>>>
find_bidisk_root(const CoeffGrid& poly, int grid_size = 32);

} // namespace h2opa
