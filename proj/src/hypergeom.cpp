#include "h2opa/hypergeom.hpp"

#include <cmath>
#include <cstdlib>

#include "h2opa/errors.hpp"

namespace h2opa {

double pochhammer(double alpha, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i)
        p *= alpha + i;
    return p;
}

SeriesResult pfq(const HypergeomSpec& spec, double tol, long max_terms) {
    if (!(tol > 0.0))
        throw InvalidParameters("pfq: tol must be positive");
    if (max_terms < 1)
        throw InvalidParameters("pfq: max_terms must be positive");
    for (double b : spec.lower) {
        if (b <= 0.0 && b == std::rint(b))
            throw InvalidParameters(
                "pfq: lower parameter is zero or a negative integer");
    }
    const std::size_t p = spec.upper.size(), q = spec.lower.size();
    if (p == q + 1 && std::fabs(spec.arg) > 0.999)
        throw DivergentArgument("pfq: p = q+1 series needs |z| < 1");

    if (spec.arg == 0.0)
        return {1.0, 1, true, 0.0};  // only the n = 0 term exists

    double term = 1.0;  // n = 0
    double sum = 1.0;
    long used = 1;
    int small_streak = 0;
    for (long n = 0; used < max_terms; ++n) {
        double num = spec.arg;
        for (double a : spec.upper)
            num *= a + n;
        double den = n + 1.0;
        for (double b : spec.lower)
            den *= b + n;
        term = term * num / den;
        sum += term;
        ++used;
        if (std::fabs(term) <= tol * std::fmax(1.0, std::fabs(sum))) {
            if (++small_streak >= 2)
                return {sum, used, true, std::fabs(term)};
        } else {
            small_streak = 0;
        }
    }
    throw NonConvergence("pfq: stopping rule did not fire within max_terms");
}

double hyp0f1(double b, double z, double tol, long max_terms) {
    HypergeomSpec spec;
    spec.lower = {b};
    spec.arg = z;
    return pfq(spec, tol, max_terms).value;
}

double chu_vandermonde_lhs(int i, int k1, int k2) {
    if (i < 0 || k1 < 0 || k2 < 0)
        throw InvalidParameters("chu_vandermonde: indices must be >= 0");
    double sum = 0.0;
    for (int j = 0; j <= i; ++j) {
        sum += pochhammer(-i, j) * pochhammer(-k1 - i, j) /
               (pochhammer(1.0, j) * pochhammer(k2 + 1.0, j));
    }
    return sum;
}

double chu_vandermonde_rhs(int i, int k1, int k2) {
    if (i < 0 || k1 < 0 || k2 < 0)
        throw InvalidParameters("chu_vandermonde: indices must be >= 0");
    return pochhammer(k1 + k2 + i + 1.0, i) / pochhammer(k2 + 1.0, i);
}

double f01_recurrence_residual(double z, double tol) {
    const double f1 = hyp0f1(1.0, z, tol, kDefaultMaxTerms);
    const double f2 = hyp0f1(2.0, z, tol, kDefaultMaxTerms);
    const double f3 = hyp0f1(3.0, z, tol, kDefaultMaxTerms);
    return f1 - f2 - 0.5 * z * f3;
}

} // namespace h2opa
