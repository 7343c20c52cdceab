#include "h2opa/moments.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "h2opa/errors.hpp"

namespace h2opa {

void validate(const FunctionParams& params) {
    if (!(params.alpha >= 0.0))
        throw InvalidParameters("params: alpha must be >= 0");
    if (!(params.r > 2.0))
        throw InvalidParameters("params: r must be > 2");
}

CoeffGrid::CoeffGrid(int max_total_degree) : degree_(max_total_degree) {
    if (max_total_degree < 0)
        throw InvalidParameters("CoeffGrid: degree must be >= 0");
    const std::size_t n = static_cast<std::size_t>(degree_) + 1;
    data_.assign(n * (n + 1) / 2, 0.0);
}

void CoeffGrid::set(int j, int k, double value) {
    if (j < 0 || k < 0 || j + k > degree_)
        throw InvalidParameters("CoeffGrid: index outside triangle");
    data_[offset(j) + k] = value;
}

namespace {

double factorial_of(int k) {
    return pochhammer(1.0, k);  // one audited product path for k!
}

double rpow(double r, int s) {
    double p = 1.0;
    for (int i = 0; i < s; ++i)
        p *= r;
    return p;
}

} // namespace

double coeff_pp(const FunctionParams& params, int k1, int k2, double tol,
                long max_terms) {
    validate(params);
    if (k1 < 0 || k2 < 0)
        throw InvalidParameters("coeff_pp: indices must be >= 0");
    const int s = k1 + k2;
    const double pre = pochhammer(params.alpha, s) /
                       (rpow(params.r, s) * factorial_of(k1) * factorial_of(k2));
    HypergeomSpec spec;
    spec.upper = {params.alpha, params.alpha + s, s / 2.0 + 1.0,
                  (s + 1) / 2.0};
    spec.lower = {s + 1.0, k1 + 1.0, k2 + 1.0};
    spec.arg = 4.0 / (params.r * params.r);
    return pre * pfq(spec, tol, max_terms).value;
}

double coeff_pm(const FunctionParams& params, int k1, int k2, double tol,
                long max_terms) {
    validate(params);
    if (k1 < 0 || k2 < 0)
        throw InvalidParameters("coeff_pm: indices must be >= 0");
    const int s = k1 + k2;
    const double pre = pochhammer(params.alpha, k1) *
                       pochhammer(params.alpha, k2) /
                       (rpow(params.r, s) * factorial_of(k1) * factorial_of(k2));
    HypergeomSpec spec;
    spec.upper = {params.alpha + k1, params.alpha + k2, (s + 1) / 2.0,
                  s / 2.0 + 1.0};
    spec.lower = {k1 + 1.0, k2 + 1.0, s + 1.0};
    spec.arg = 4.0 / (params.r * params.r);
    return pre * pfq(spec, tol, max_terms).value;
}

double coeff(const FunctionParams& params, MomentKey key, double tol,
             long max_terms) {
    int k1 = key.k1, k2 = key.k2;
    // c_{-k1,-k2} = c_{k1,k2}: flip an all-nonpositive key into the
    // nonnegative quadrant, and a mixed key so its positive index is first.
    if ((k1 <= 0 && k2 <= 0) || (k1 < 0 && k2 > 0)) {
        k1 = -k1;
        k2 = -k2;
    }
    if (k1 >= 0 && k2 >= 0) {
        if (k1 > k2)
            std::swap(k1, k2);
        return coeff_pp(params, k1, k2, tol, max_terms);
    }
    // now k1 > 0 > k2: c_{k1,k2} = c_{k1,-(-k2)} with sorted indices
    k2 = -k2;
    if (k1 > k2)
        std::swap(k1, k2);
    return coeff_pm(params, k1, k2, tol, max_terms);
}

CoeffGrid taylor_truncate(const FunctionParams& params, int N) {
    validate(params);
    if (N < 0)
        throw InvalidParameters("taylor_truncate: N must be >= 0");
    CoeffGrid grid(N);
    grid.set(0, 0, 1.0);
    for (int s = 1; s <= N; ++s) {
        // march in from the edge of each diagonal:
        //   f_{0,s} = f_{0,s-1} (alpha+s-1)/(s r),
        //   f_{j,k} = f_{j-1,k} (alpha+s-1)/(j r).
        grid.set(0, s, grid.at(0, s - 1) * (params.alpha + s - 1) /
                           (s * params.r));
        for (int j = 1; j <= s; ++j)
            grid.set(j, s - j, grid.at(j - 1, s - j) * (params.alpha + s - 1) /
                                   (j * params.r));
    }
    return grid;
}

double coeff_oracle(const CoeffGrid& grid, MomentKey key) {
    const int N = grid.max_total_degree();
    double sum = 0.0;
    for (int j = std::max(0, key.k1); j <= N; ++j) {
        const int j2 = j - key.k1;
        if (j2 > N)
            continue;
        for (int k = std::max(0, key.k2); k <= N - j; ++k) {
            const int k2 = k - key.k2;
            if (k2 < 0 || j2 + k2 > N)
                continue;
            sum += grid.at(j, k) * grid.at(j2, k2);
        }
    }
    return sum;
}

MomentsABC abc(const FunctionParams& params, double tol, long max_terms) {
    validate(params);
    MomentsABC m;
    m.a = coeff_pp(params, 0, 0, tol, max_terms);
    m.b = coeff_pp(params, 0, 1, tol, max_terms);
    m.c = coeff_pm(params, 1, 1, tol, max_terms);

    // Independent check against the reduced 3F2 forms.
    const double z = 4.0 / (params.r * params.r);
    const double al = params.alpha;
    const double a3 =
        pfq({{al, al, 0.5}, {1.0, 1.0}, z}, tol, max_terms).value;
    const double b3 =
        (al / params.r) *
        pfq({{al, al + 1.0, 1.5}, {2.0, 2.0}, z}, tol, max_terms).value;
    const double c3 =
        (al / params.r) * (al / params.r) *
        pfq({{al + 1.0, al + 1.0, 1.5}, {2.0, 3.0}, z}, tol, max_terms).value;
    const double bound = 2.0 * tol;
    if (std::fabs(m.a - a3) > bound * std::fmax(1.0, std::fabs(m.a)) ||
        std::fabs(m.b - b3) > bound * std::fmax(1.0, std::fabs(m.b)) ||
        std::fabs(m.c - c3) > bound * std::fmax(1.0, std::fabs(m.c)))
        throw InternalError("abc: 4F3 and 3F2 forms disagree");
    return m;
}

} // namespace h2opa
