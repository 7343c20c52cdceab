#pragma once

#include <vector>

namespace h2opa {

// Parameters of a generalized hypergeometric series
//   pFq(a_1..a_p; b_1..b_q; z) = sum_n (a_1)_n...(a_p)_n / [(b_1)_n...(b_q)_n] z^n / n!.
// No lower parameter may be zero or a negative integer; when p = q+1 the
// series only converges for |z| < 1.
struct HypergeomSpec {
    std::vector<double> upper;
    std::vector<double> lower;
    double arg = 0.0;
};

struct SeriesResult {
    double value = 0.0;
    long terms_used = 0;
    bool converged = false;
    double last_term_magnitude = 0.0;
};

inline constexpr double kDefaultTol = 1e-14;
inline constexpr long kDefaultMaxTerms = 100000;

// Rising factorial (alpha)_n by forward product.  Deliberately not a ratio of
// gamma functions: the Chu-Vandermonde sums below need (-i)_j exactly.
double pochhammer(double alpha, int n);

// Term-by-term summation with the recurrence
//   term_{n+1} = term_n * z * prod(a_i + n) / [prod(b_j + n) * (n+1)],
// stopping once two consecutive terms fall below tol * max(1, |partial sum|).
// Two terms, not one: parameter combinations can make a single term
// accidentally small.  Throws NonConvergence at max_terms, InvalidParameters
// for a nonpositive-integer lower parameter, DivergentArgument when p = q+1
// and |z| > 0.999 (the applications here keep z = 4/r^2 with r > 2).
SeriesResult pfq(const HypergeomSpec& spec, double tol = kDefaultTol,
                 long max_terms = kDefaultMaxTerms);

// 0F1(; b; z), entire in z.  Larger default budget because quadrature drives
// it at arguments of order 1e4.
double hyp0f1(double b, double z, double tol = kDefaultTol,
              long max_terms = 1000000);

// Both sides of the Chu-Vandermonde identity
//   sum_{j=0}^{i} (-i)_j (-k1-i)_j / [(1)_j (k2+1)_j] = (k1+k2+i+1)_i / (k2+1)_i,
// exposed separately so equality can serve as a property test.
double chu_vandermonde_lhs(int i, int k1, int k2);
double chu_vandermonde_rhs(int i, int k1, int k2);

// Residual of the contiguous relation 0F1(;1;z) - 0F1(;2;z) = (z/2) 0F1(;3;z),
// evaluating each series independently; vanishes to series accuracy.
double f01_recurrence_residual(double z, double tol = kDefaultTol);

} // namespace h2opa
