#include "h2opa/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "h2opa/errors.hpp"

namespace h2opa {

CriterionReport check_criterion(const FunctionParams& params, double tol,
                                long max_terms) {
    const MomentsABC m = abc(params, tol, max_terms);
    CriterionReport rep;
    rep.params = params;
    rep.a = m.a;
    rep.b = m.b;
    rep.c = m.c;
    rep.lhs = 2.0 * m.b;
    rep.rhs = m.a + m.c;
    rep.quotient = rep.b == 0.0 ? std::numeric_limits<double>::infinity()
                                : rep.rhs / rep.lhs;
    rep.has_root = rep.lhs > rep.rhs;
    return rep;
}

double quotient(const FunctionParams& params, double tol, long max_terms) {
    return check_criterion(params, tol, max_terms).quotient;
}

namespace {

std::vector<double> make_grid(const Range& range) {
    std::vector<double> pts(range.steps);
    for (int i = 0; i < range.steps; ++i)
        pts[i] = range.lo + (range.hi - range.lo) * i / (range.steps - 1);
    return pts;
}

} // namespace

ScanResult scan_region(Range alpha_range, Range r_range, double tol,
                       long max_terms) {
    if (alpha_range.steps < 2 || r_range.steps < 2)
        throw InvalidParameters("scan_region: steps must be >= 2");
    if (!(r_range.lo > 2.0))
        throw InvalidParameters("scan_region: r range must start above 2");
    if (!(alpha_range.lo >= 0.0))
        throw InvalidParameters("scan_region: alpha range must be >= 0");
    if (!(alpha_range.hi >= alpha_range.lo) || !(r_range.hi >= r_range.lo))
        throw InvalidParameters("scan_region: ranges must be increasing");

    ScanResult result;
    result.alphas = make_grid(alpha_range);
    result.rs = make_grid(r_range);
    result.verdicts.assign(alpha_range.steps,
                           std::vector<bool>(r_range.steps, false));
    result.quotients.assign(alpha_range.steps,
                            std::vector<double>(r_range.steps, 0.0));
    for (int i = 0; i < alpha_range.steps; ++i) {
        for (int j = 0; j < r_range.steps; ++j) {
            double q;
            try {
                q = quotient({result.alphas[i], result.rs[j]}, tol, max_terms);
            } catch (const Error&) {
                q = std::numeric_limits<double>::quiet_NaN();
            }
            result.quotients[i][j] = q;
            result.verdicts[i][j] = q < 1.0;  // false for NaN and +inf
        }
    }
    return result;
}

MinimizeResult minimize_quotient(double alpha0, double r0, double sim_tol,
                                 double tol, long max_terms) {
    if (!(alpha0 > 0.0) || !(r0 > 2.0))
        throw InvalidParameters("minimize_quotient: start needs alpha > 0, r > 2");
    if (!(sim_tol > 0.0))
        throw InvalidParameters("minimize_quotient: tolerance must be positive");

    const double barrier_r = 2.0 + 1e-9;
    long evals = 0;
    const long max_evals = 10000;
    const auto objective = [&](const std::array<double, 2>& x) {
        if (++evals > max_evals)
            throw NoConvergence("minimize_quotient: evaluation budget exhausted");
        if (!(x[0] > 0.0) || x[1] <= barrier_r)
            return std::numeric_limits<double>::infinity();
        try {
            const double q = quotient({x[0], x[1]}, tol, max_terms);
            return std::isnan(q) ? std::numeric_limits<double>::infinity() : q;
        } catch (const NoConvergence&) {
            throw;
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    // Nelder-Mead with the standard coefficients.
    using Point = std::array<double, 2>;
    std::array<Point, 3> simplex = {Point{alpha0, r0},
                                    Point{alpha0 * 1.05, r0},
                                    Point{alpha0, r0 * 1.05}};
    std::array<double, 3> value{};
    for (int i = 0; i < 3; ++i)
        value[i] = objective(simplex[i]);

    MinimizeResult res;
    int iterations = 0;
    while (true) {
        std::array<int, 3> ord = {0, 1, 2};
        std::sort(ord.begin(), ord.end(),
                  [&](int u, int v) { return value[u] < value[v]; });
        const std::array<Point, 3> vs = {simplex[ord[0]], simplex[ord[1]],
                                         simplex[ord[2]]};
        const std::array<double, 3> fv = {value[ord[0]], value[ord[1]],
                                          value[ord[2]]};
        simplex = vs;
        value = fv;

        double diameter = 0.0;
        for (int i = 1; i < 3; ++i)
            diameter = std::fmax(
                diameter, std::fmax(std::fabs(simplex[i][0] - simplex[0][0]),
                                    std::fabs(simplex[i][1] - simplex[0][1])));
        if (diameter < sim_tol)
            break;
        ++iterations;

        const Point centroid = {(simplex[0][0] + simplex[1][0]) / 2.0,
                                (simplex[0][1] + simplex[1][1]) / 2.0};
        const auto blend = [&](double t) {
            return Point{centroid[0] + t * (simplex[2][0] - centroid[0]),
                         centroid[1] + t * (simplex[2][1] - centroid[1])};
        };
        const Point refl = blend(-1.0);
        const double f_refl = objective(refl);
        if (f_refl < value[0]) {
            const Point expa = blend(-2.0);
            const double f_expa = objective(expa);
            if (f_expa < f_refl) {
                simplex[2] = expa;
                value[2] = f_expa;
            } else {
                simplex[2] = refl;
                value[2] = f_refl;
            }
            continue;
        }
        if (f_refl < value[1]) {
            simplex[2] = refl;
            value[2] = f_refl;
            continue;
        }
        const bool outside = f_refl < value[2];
        const Point cont = blend(outside ? -0.5 : 0.5);
        const double f_cont = objective(cont);
        if (f_cont < (outside ? f_refl : value[2])) {
            simplex[2] = cont;
            value[2] = f_cont;
            continue;
        }
        // Shrink toward the best vertex.
        for (int i = 1; i < 3; ++i) {
            simplex[i] = {simplex[0][0] + 0.5 * (simplex[i][0] - simplex[0][0]),
                          simplex[0][1] + 0.5 * (simplex[i][1] - simplex[0][1])};
            value[i] = objective(simplex[i]);
        }
    }

    res.alpha_star = simplex[0][0];
    res.r_star = simplex[0][1];
    res.quotient_star = value[0];
    res.iterations = iterations;
    res.converged = true;
    return res;
}

} // namespace h2opa
