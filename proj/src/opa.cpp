#include "h2opa/opa.hpp"

#include <cmath>
#include <numbers>

#include "h2opa/errors.hpp"

namespace h2opa {

IndexSet make_index_set(int n) {
    if (n < 0)
        throw InvalidParameters("make_index_set: degree must be >= 0");
    IndexSet set;
    set.degree = n;
    for (int d = 0; d <= n; ++d)
        for (int k1 = 0; k1 <= d; ++k1)
            set.members.push_back({k1, d - k1});
    return set;
}

MomentMatrix build_moment_matrix(const FunctionParams& params, int n,
                                 double tol, long max_terms) {
    validate(params);
    MomentMatrix mat;
    mat.index_set = make_index_set(n);
    const std::size_t m = mat.index_set.members.size();
    mat.entries.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const MomentKey& ki = mat.index_set.members[i];
            const MomentKey& kj = mat.index_set.members[j];
            mat.entries[i][j] =
                coeff(params, {ki.k1 - kj.k1, ki.k2 - kj.k2}, tol, max_terms);
        }
    }
    return mat;
}

namespace {

// Solve A x = rhs.  Cholesky first (A should be SPD); any nonpositive pivot
// falls through to partially pivoted elimination with tolerance
// 1e-13 * diag_scale.
std::vector<double> solve_spd(std::vector<std::vector<double>> A,
                              std::vector<double> rhs, double diag_scale) {
    const std::size_t m = A.size();
    std::vector<std::vector<double>> L(m, std::vector<double>(m, 0.0));
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = A[i][j];
            for (std::size_t k = 0; k < j; ++k)
                s -= L[i][k] * L[j][k];
            if (i == j) {
                if (!(s > 0.0)) {
                    ok = false;
                    break;
                }
                L[i][i] = std::sqrt(s);
            } else {
                L[i][j] = s / L[j][j];
            }
        }
    }
    if (ok) {
        std::vector<double> y(m, 0.0), x(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            double s = rhs[i];
            for (std::size_t k = 0; k < i; ++k)
                s -= L[i][k] * y[k];
            y[i] = s / L[i][i];
        }
        for (std::size_t ii = m; ii-- > 0;) {
            double s = y[ii];
            for (std::size_t k = ii + 1; k < m; ++k)
                s -= L[k][ii] * x[k];
            x[ii] = s / L[ii][ii];
        }
        return x;
    }

    // Fallback: Gaussian elimination with partial pivoting.
    const double pivot_tol = 1e-13 * diag_scale;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < m; ++i)
            if (std::fabs(A[i][col]) > std::fabs(A[piv][col]))
                piv = i;
        if (std::fabs(A[piv][col]) < pivot_tol)
            throw SingularMatrix("solve: pivot below tolerance");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t i = col + 1; i < m; ++i) {
            const double f = A[i][col] / A[col][col];
            for (std::size_t j = col; j < m; ++j)
                A[i][j] -= f * A[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    std::vector<double> x(m, 0.0);
    for (std::size_t ii = m; ii-- > 0;) {
        double s = rhs[ii];
        for (std::size_t j = ii + 1; j < m; ++j)
            s -= A[ii][j] * x[j];
        x[ii] = s / A[ii][ii];
    }
    return x;
}

} // namespace

OpaSolution solve_opa(const FunctionParams& params, int n, double tol,
                      long max_terms) {
    MomentMatrix mat = build_moment_matrix(params, n, tol, max_terms);
    const std::size_t m = mat.index_set.members.size();
    const double c00 = mat.entries[0][0];
    std::vector<double> rhs(m, 0.0);
    rhs[0] = 1.0;  // f(0,0) = 1
    std::vector<double> p = solve_spd(mat.entries, rhs, c00);

    // Certify the normal equations before anyone trusts the coefficients.
    for (std::size_t i = 0; i < m; ++i) {
        double s = (i == 0) ? -1.0 : 0.0;
        for (std::size_t j = 0; j < m; ++j)
            s += mat.entries[i][j] * p[j];
        if (std::fabs(s) > 1e-10 * c00)
            throw InternalError("solve_opa: residual above certification bound");
    }

    OpaSolution sol;
    sol.index_set = std::move(mat.index_set);
    sol.coeffs = std::move(p);
    sol.residual_norm_sq = 1.0 - sol.coeffs[0];
    sol.params = params;
    return sol;
}

std::pair<double, double> opa_degree1(const FunctionParams& params, double tol,
                                      long max_terms) {
    const MomentsABC m = abc(params, tol, max_terms);
    const double det = m.a * (m.a + m.c) - 2.0 * m.b * m.b;
    if (!(det > 0.0))
        throw DegenerateSystem("opa_degree1: reduced system not positive");
    return {(m.a + m.c) / det, -m.b / det};
}

double residual_norm_sq(const FunctionParams& params, const OpaSolution& sol,
                        double tol, long max_terms) {
    const MomentMatrix mat =
        build_moment_matrix(params, sol.index_set.degree, tol, max_terms);
    const std::size_t m = sol.coeffs.size();
    if (m != mat.index_set.members.size())
        throw InvalidParameters("residual_norm_sq: coefficient count mismatch");
    double quad = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            row += mat.entries[i][j] * sol.coeffs[j];
        quad += sol.coeffs[i] * row;
    }
    return quad - 2.0 * sol.coeffs[0] + 1.0;
}

namespace {

using cplx = std::complex<double>;

cplx eval_poly(const CoeffGrid& poly, cplx z1, cplx z2) {
    const int N = poly.max_total_degree();
    // Horner in z2 of q_k(z1), innermost Horner in z1 per row.
    cplx value = 0.0;
    for (int k = N; k >= 0; --k) {
        cplx qk = 0.0;
        for (int j = N - k; j >= 0; --j)
            qk = qk * z1 + poly.at(j, k);
        value = value * z2 + qk;
    }
    return value;
}

cplx eval_dz2(const CoeffGrid& poly, cplx z1, cplx z2) {
    const int N = poly.max_total_degree();
    cplx value = 0.0;
    for (int k = N; k >= 1; --k) {
        cplx qk = 0.0;
        for (int j = N - k; j >= 0; --j)
            qk = qk * z1 + poly.at(j, k);
        value = value * z2 + static_cast<double>(k) * qk;
    }
    return value;
}

cplx eval_dz1(const CoeffGrid& poly, cplx z1, cplx z2) {
    const int N = poly.max_total_degree();
    cplx value = 0.0;
    for (int k = N; k >= 0; --k) {
        cplx qk = 0.0;
        for (int j = N - k; j >= 1; --j)
            qk = qk * z1 + static_cast<double>(j) * poly.at(j, k);
        value = value * z2 + qk;
    }
    return value;
}

// Roots of sum_k c[k] z^k by Durand-Kerner simultaneous iteration.
std::vector<cplx> durand_kerner(const std::vector<cplx>& c) {
    const int deg = static_cast<int>(c.size()) - 1;
    std::vector<cplx> z(deg);
    double scale = 0.0;
    for (int k = 0; k < deg; ++k)
        scale = std::fmax(scale, std::abs(c[k] / c[deg]));
    const double radius = 1.0 + scale;
    const cplx seed(0.4, 0.9);
    cplx g = 1.0;
    for (int i = 0; i < deg; ++i) {
        g *= seed;
        z[i] = radius * g;
    }
    for (int iter = 0; iter < 200; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            cplx num = c[deg];
            for (int k = deg - 1; k >= 0; --k)
                num = num * z[i] + c[k];
            cplx den = c[deg];
            for (int j = 0; j < deg; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            if (std::abs(den) == 0.0)
                den = cplx(1e-300, 0.0);
            const cplx delta = num / den;
            z[i] -= delta;
            worst = std::fmax(worst, std::abs(delta) / (1.0 + std::abs(z[i])));
        }
        if (worst <= 1e-13)
            return z;
    }
    throw NoConvergence("durand_kerner: root iteration stalled");
}

// Univariate coefficients of z2 -> p(z1, z2), trimmed of a vanishing top.
std::vector<cplx> z2_coeffs(const CoeffGrid& poly, cplx z1) {
    const int N = poly.max_total_degree();
    std::vector<cplx> c(N + 1, cplx(0.0));
    double mag = 0.0;
    for (int k = 0; k <= N; ++k) {
        cplx qk = 0.0;
        for (int j = N - k; j >= 0; --j)
            qk = qk * z1 + poly.at(j, k);
        c[k] = qk;
        mag = std::fmax(mag, std::abs(qk));
    }
    int deg = N;
    while (deg > 0 && std::abs(c[deg]) <= 1e-12 * mag)
        --deg;
    c.resize(deg + 1);
    return c;
}

// A few Newton corrections of z2 at fixed z1, from the current z2.
bool newton_z2(const CoeffGrid& poly, cplx z1, cplx& z2) {
    for (int it = 0; it < 30; ++it) {
        const cplx f = eval_poly(poly, z1, z2);
        const cplx d = eval_dz2(poly, z1, z2);
        if (std::abs(d) < 1e-300)
            return false;
        const cplx step = f / d;
        z2 -= step;
        if (std::abs(step) <= 1e-13 * (1.0 + std::abs(z2)))
            return true;
    }
    return false;
}

// Minimum-norm damped Gauss-Newton on |p|^2 in (z1, z2) jointly; keeps the
// iterate inside the closed bidisk.
void polish(const CoeffGrid& poly, cplx& z1, cplx& z2) {
    double best = std::abs(eval_poly(poly, z1, z2));
    for (int it = 0; it < 20 && best > 0.0; ++it) {
        const cplx f = eval_poly(poly, z1, z2);
        const cplx d1 = eval_dz1(poly, z1, z2);
        const cplx d2 = eval_dz2(poly, z1, z2);
        const double nrm = std::norm(d1) + std::norm(d2);
        if (nrm < 1e-300)
            return;
        cplx s1 = std::conj(d1) * f / nrm;
        cplx s2 = std::conj(d2) * f / nrm;
        double lambda = 1.0;
        bool moved = false;
        for (int half = 0; half < 20; ++half, lambda *= 0.5) {
            const cplx t1 = z1 - lambda * s1;
            const cplx t2 = z2 - lambda * s2;
            if (std::abs(t1) > 1.0 || std::abs(t2) > 1.0)
                continue;
            const double val = std::abs(eval_poly(poly, t1, t2));
            if (val < best) {
                z1 = t1;
                z2 = t2;
                best = val;
                moved = true;
                break;
            }
        }
        if (!moved)
            return;
    }
}

} // namespace

std::optional<std::pair<cplx, cplx>> find_bidisk_root(const CoeffGrid& poly,
                                                      int grid_size) {
    if (grid_size < 8)
        throw InvalidParameters("find_bidisk_root: grid_size must be >= 8");
    const int N = poly.max_total_degree();
    double coeff_sum = 0.0;
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N - j; ++k)
            coeff_sum += std::fabs(poly.at(j, k));
    if (coeff_sum == 0.0)
        throw InvalidParameters("find_bidisk_root: zero polynomial");
    const double threshold = 1e-8 * coeff_sum;
    const double inside = 1.0 - 1e-12;

    const auto admit = [&](cplx z1, cplx z2)
        -> std::optional<std::pair<cplx, cplx>> {
        if (std::abs(z1) >= inside || std::abs(z2) >= inside)
            return std::nullopt;
        cplx a = z1, b = z2;
        polish(poly, a, b);
        if (std::abs(a) < inside && std::abs(b) < inside &&
            std::abs(eval_poly(poly, a, b)) <= threshold)
            return std::make_pair(a, b);
        if (std::abs(z1) < inside && std::abs(z2) < inside &&
            std::abs(eval_poly(poly, z1, z2)) <= threshold)
            return std::make_pair(z1, z2);
        return std::nullopt;
    };

    bool have_candidate = false;
    double best_score = 0.0;
    cplx best_z1 = 0.0, best_z2 = 0.0;
    for (int ir = 0; ir < grid_size; ++ir) {
        const double rho =
            static_cast<double>(ir) / static_cast<double>(grid_size - 1);
        for (int ia = 0; ia < grid_size; ++ia) {
            const double theta =
                2.0 * std::numbers::pi * ia / static_cast<double>(grid_size);
            const cplx z1 = std::polar(rho, theta);
            std::vector<cplx> c = z2_coeffs(poly, z1);
            if (c.size() < 2)
                continue;  // constant in z2 at this z1
            std::vector<cplx> roots;
            try {
                roots = durand_kerner(c);
            } catch (const NoConvergence&) {
                continue;  // skip this grid point, keep searching
            }
            for (const cplx& z2 : roots) {
                const double score = std::fmax(std::abs(z1), std::abs(z2));
                if (!have_candidate || score < best_score) {
                    have_candidate = true;
                    best_score = score;
                    best_z1 = z1;
                    best_z2 = z2;
                }
                if (auto hit = admit(z1, z2))
                    return hit;
            }
        }
    }
    if (!have_candidate)
        return std::nullopt;

    // Damped two-variable descent from the best grid candidate: move z1 by
    // compass steps, re-solve z2 by Newton, accept only when the pair moves
    // closer to the open bidisk.
    cplx z1 = best_z1, z2 = best_z2;
    double h = 0.1;
    for (int step = 0; step < 100 && h > 1e-12; ++step) {
        if (auto hit = admit(z1, z2))
            return hit;
        bool improved = false;
        const cplx dirs[4] = {cplx(h, 0), cplx(-h, 0), cplx(0, h), cplx(0, -h)};
        for (const cplx& d : dirs) {
            const cplx t1 = z1 + d;
            if (std::abs(t1) > 1.0)
                continue;
            cplx t2 = z2;
            if (!newton_z2(poly, t1, t2))
                continue;
            if (std::fmax(std::abs(t1), std::abs(t2)) <
                std::fmax(std::abs(z1), std::abs(z2)) - 1e-15) {
                z1 = t1;
                z2 = t2;
                improved = true;
                break;
            }
        }
        if (!improved)
            h *= 0.5;
    }
    if (auto hit = admit(z1, z2))
        return hit;
    return std::nullopt;
}

} // namespace h2opa
