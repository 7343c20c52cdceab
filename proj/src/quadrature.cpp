#include "h2opa/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>

#include "h2opa/errors.hpp"

namespace h2opa {

namespace {

// Implicit-shift QL for a symmetric tridiagonal matrix, carrying the first
// components of the eigenvectors along (the imtqlx variant classically used
// for Gauss rules).  d: diagonal; e: subdiagonal (e[i] couples i and i+1);
// z: starts as (1,0,...,0), ends as the first eigenvector components.
void imtqlx(std::vector<double>& d, std::vector<double>& e,
            std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1)
        return;
    e.resize(n, 0.0);
    const double prec = DBL_EPSILON;
    for (int l = 0; l < n; ++l) {
        int j = 0;
        while (true) {
            int m = l;
            for (; m < n - 1; ++m)
                if (std::fabs(e[m]) <=
                    prec * (std::fabs(d[m]) + std::fabs(d[m + 1])))
                    break;
            if (m == l)
                break;
            if (++j > 30)
                throw EigFailure("imtqlx: QL iteration stalled");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                if (std::fabs(f) >= std::fabs(g)) {
                    c = g / f;
                    r = std::hypot(c, 1.0);
                    e[i + 1] = f * r;
                    s = 1.0 / r;
                    c *= s;
                } else {
                    s = f / g;
                    r = std::hypot(s, 1.0);
                    e[i + 1] = g * r;
                    c = 1.0 / r;
                    s *= c;
                }
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // ascending nodes, eigenvector components in tow
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int u, int v) { return d[u] < d[v]; });
    std::vector<double> d2(n), z2(n);
    for (int i = 0; i < n; ++i) {
        d2[i] = d[order[i]];
        z2[i] = z[order[i]];
    }
    d = std::move(d2);
    z = std::move(z2);
}

} // namespace

QuadRule make_rule(RuleKind kind, int order) {
    if (order < 1)
        throw InvalidParameters("make_rule: order must be >= 1");
    std::vector<double> d(order, 0.0), e(order > 1 ? order - 1 : 0, 0.0);
    double mass = 0.0;
    switch (kind) {
        case RuleKind::Laguerre:
            // monic Laguerre: alpha_k = 2k+1, beta_k = k^2
            for (int k = 0; k < order; ++k)
                d[k] = 2.0 * k + 1.0;
            for (int k = 0; k + 1 < order; ++k)
                e[k] = k + 1.0;
            mass = 1.0;
            break;
        case RuleKind::JacobiMinusHalf:
            // Chebyshev (first kind) on [-1,1]: alpha_k = 0,
            // beta_1 = 1/2, beta_k = 1/4
            if (order > 1)
                e[0] = std::sqrt(0.5);
            for (int k = 1; k + 1 < order; ++k)
                e[k] = 0.5;
            mass = std::numbers::pi;
            break;
        case RuleKind::JacobiPlusHalf:
            // Jacobi (-1/2, +1/2) on [-1,1]: alpha_0 = 1/2, alpha_k = 0,
            // beta_k = 1/4
            d[0] = 0.5;
            for (int k = 0; k + 1 < order; ++k)
                e[k] = 0.5;
            mass = std::numbers::pi / 2.0;
            break;
    }

    std::vector<double> z(order, 0.0);
    z[0] = 1.0;
    imtqlx(d, e, z);

    QuadRule rule;
    rule.kind = kind;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    // The recurrences above live on [-1,1] for the Jacobi kinds; the map
    // w = (x+1)/2 rescales their weight functions so that the [0,1] mass is
    // exactly `mass`, and sum(z^2) = 1 makes weight_i = mass * z_i^2.
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] =
            kind == RuleKind::Laguerre ? d[i] : (d[i] + 1.0) / 2.0;
        rule.weights[i] = mass * z[i] * z[i];
    }
    const double total =
        std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
    if (std::fabs(total - mass) > 1e-12 * std::fmax(1.0, mass))
        throw InternalError("make_rule: weight sum does not match mass");
    return rule;
}

IntegralSides criterion_integral_sides(const FunctionParams& params,
                                       int order_t, int order_y, int order_w,
                                       double tol) {
    validate(params);
    if (!(params.alpha > 0.0))
        throw InvalidParameters(
            "criterion_integral_sides: alpha must be positive");
    if (order_t < 2 || order_y < 2 || order_w < 2)
        throw InvalidParameters("criterion_integral_sides: orders must be >= 2");

    const QuadRule rt = make_rule(RuleKind::Laguerre, order_t);
    const QuadRule ry = make_rule(RuleKind::Laguerre, order_y);
    const QuadRule wm = make_rule(RuleKind::JacobiMinusHalf, order_w);
    const QuadRule wp = make_rule(RuleKind::JacobiPlusHalf, order_w);

    const double z_factor = 4.0 / (params.r * params.r);
    const long f01_budget = 1000000;  // large 0F1 arguments at the far nodes
    const double cutoff = 1e4;        // beyond t*y = 1e4, e^(-t-y) < e^(-200)

    IntegralSides sides;
    for (int i = 0; i < order_t; ++i) {
        const double t = rt.nodes[i];
        const double tpow = std::pow(t, params.alpha - 1.0);
        for (int j = 0; j < order_y; ++j) {
            const double y = ry.nodes[j];
            if (t * y > cutoff)
                continue;
            const double pref = rt.weights[i] * ry.weights[j] * tpow *
                                std::pow(y, params.alpha - 1.0);
            const double zeta = z_factor * t * y;
            double sum_m2 = 0.0, sum_m1 = 0.0, sum_p2 = 0.0;
            for (int k = 0; k < order_w; ++k) {
                const double arg = zeta * wm.nodes[k];
                sum_m2 += wm.weights[k] * hyp0f1(2.0, arg, tol, f01_budget);
                sum_m1 += wm.weights[k] * hyp0f1(1.0, arg, tol, f01_budget);
            }
            for (int k = 0; k < order_w; ++k)
                sum_p2 += wp.weights[k] *
                          hyp0f1(2.0, zeta * wp.nodes[k], tol, f01_budget);
            sides.lhs += pref * ((4.0 / params.r) * y * sum_p2 + sum_m2);
            sides.rhs += pref * 2.0 * sum_m1;
        }
    }
    return sides;
}

IntegralSides series_reference_sides(const FunctionParams& params, double tol,
                                     long max_terms) {
    validate(params);
    if (!(params.alpha > 0.0))
        throw InvalidParameters("series_reference_sides: alpha must be positive");
    const MomentsABC m = abc(params, tol, max_terms);
    const double g2 = std::tgamma(params.alpha) * std::tgamma(params.alpha);
    IntegralSides sides;
    sides.lhs = std::numbers::pi * g2 * (2.0 * m.b + m.a - m.c);
    sides.rhs = 2.0 * std::numbers::pi * g2 * m.a;
    return sides;
}

} // namespace h2opa
