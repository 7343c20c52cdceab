#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "h2opa/analysis.hpp"
#include "h2opa/errors.hpp"
#include "h2opa/moments.hpp"
#include "h2opa/opa.hpp"
#include "h2opa/quadrature.hpp"

namespace {

// 17 significant digits: enough for exact double round-trips, so every
// printed number is bit-identical to the library value that produced it.
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RangeSpec {
    h2opa::Range range;
};

bool parse_range(const std::string& text, h2opa::Range& out) {
    double lo = 0.0, hi = 0.0;
    int steps = 0;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &steps,
                    &trailing) != 3)
        return false;
    out = {lo, hi, steps};
    return true;
}

bool parse_orders(const std::string& text, int& nt, int& ny, int& nw) {
    char trailing = 0;
    return std::sscanf(text.c_str(), "%d:%d:%d%c", &nt, &ny, &nw,
                       &trailing) == 3;
}

int run(int argc, char** argv) {
    CLI::App app{
        "Moments, optimal polynomial approximants and root-criterion scans\n"
        "for the bidisk family f(z1,z2) = (1 - (z1+z2)/r)^(-alpha), r > 2"};
    app.require_subcommand(1);

    double tol = h2opa::kDefaultTol;
    long max_terms = h2opa::kDefaultMaxTerms;
    app.add_option("--tol", tol,
                   "series tolerance (on minimize: simplex diameter tolerance)");
    app.add_option("--max-terms", max_terms, "series term budget");

    double alpha = 0.0, r = 0.0;
    int k1 = 0, k2 = 0, degree = 1;
    bool with_oracle = false, with_root = false;
    std::string alpha_range_text, r_range_text, out_path;
    std::string orders_text = "64:64:64";

    CLI::App* c_coeff =
        app.add_subcommand("coeff", "one Fourier coefficient of |f|^2");
    c_coeff->add_option("--alpha", alpha)->required();
    c_coeff->add_option("--r", r)->required();
    c_coeff->add_option("--k1", k1)->required();
    c_coeff->add_option("--k2", k2)->required();
    c_coeff->add_flag("--oracle", with_oracle,
                      "also print the convolution value and relative gap");

    CLI::App* c_opa = app.add_subcommand(
        "opa", "optimal polynomial approximant of 1/f, graded coefficients");
    c_opa->add_option("--alpha", alpha)->required();
    c_opa->add_option("--r", r)->required();
    c_opa->add_option("--degree", degree)->required();
    c_opa->add_flag("--root", with_root, "search the bidisk for a zero");

    CLI::App* c_check =
        app.add_subcommand("check", "degree-1 root criterion at one point");
    c_check->add_option("--alpha", alpha)->required();
    c_check->add_option("--r", r)->required();

    CLI::App* c_scan = app.add_subcommand(
        "scan", "quotient over a parameter grid, CSV alpha,r,quotient,has_root");
    c_scan->add_option("--alpha", alpha_range_text, "lo:hi:steps")->required();
    c_scan->add_option("--r", r_range_text, "lo:hi:steps")->required();
    c_scan->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* c_min =
        app.add_subcommand("minimize", "simplex descent on the quotient");
    c_min->add_option("--alpha", alpha, "starting alpha")->required();
    c_min->add_option("--r", r, "starting r")->required();

    CLI::App* c_verify = app.add_subcommand(
        "verify-integral",
        "triple-integral form of the criterion vs the moment form");
    c_verify->add_option("--alpha", alpha)->required();
    c_verify->add_option("--r", r)->required();
    c_verify->add_option("--orders", orders_text, "nt:ny:nw (default 64:64:64)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (c_coeff->parsed()) {
        const h2opa::FunctionParams params{alpha, r};
        const double value =
            h2opa::coeff(params, {k1, k2}, tol, max_terms);
        std::printf("%s\n", fmt(value).c_str());
        if (with_oracle) {
            const h2opa::CoeffGrid grid = h2opa::taylor_truncate(params, 80);
            const double oracle = h2opa::coeff_oracle(grid, {k1, k2});
            std::printf("oracle %s\n", fmt(oracle).c_str());
            std::printf("rel_gap %s\n",
                        fmt(std::fabs(value - oracle) / std::fabs(value))
                            .c_str());
        }
        return 0;
    }
    if (c_opa->parsed()) {
        const h2opa::FunctionParams params{alpha, r};
        const h2opa::OpaSolution sol =
            h2opa::solve_opa(params, degree, tol, max_terms);
        for (std::size_t i = 0; i < sol.coeffs.size(); ++i) {
            const h2opa::MomentKey& key = sol.index_set.members[i];
            std::printf("%d %d %s\n", key.k1, key.k2,
                        fmt(sol.coeffs[i]).c_str());
        }
        std::printf("residual_norm_sq %s\n",
                    fmt(sol.residual_norm_sq).c_str());
        if (!with_root)
            return 0;
        h2opa::CoeffGrid poly(degree);
        for (std::size_t i = 0; i < sol.coeffs.size(); ++i) {
            const h2opa::MomentKey& key = sol.index_set.members[i];
            poly.set(key.k1, key.k2, sol.coeffs[i]);
        }
        const auto witness = h2opa::find_bidisk_root(poly);
        if (!witness) {
            std::printf("root none\n");
            return 1;
        }
        std::printf("root z1 %s %s z2 %s %s\n",
                    fmt(witness->first.real()).c_str(),
                    fmt(witness->first.imag()).c_str(),
                    fmt(witness->second.real()).c_str(),
                    fmt(witness->second.imag()).c_str());
        return 0;
    }
    if (c_check->parsed()) {
        const h2opa::CriterionReport rep =
            h2opa::check_criterion({alpha, r}, tol, max_terms);
        std::printf("alpha %s\n", fmt(rep.params.alpha).c_str());
        std::printf("r %s\n", fmt(rep.params.r).c_str());
        std::printf("a %s\n", fmt(rep.a).c_str());
        std::printf("b %s\n", fmt(rep.b).c_str());
        std::printf("c %s\n", fmt(rep.c).c_str());
        std::printf("lhs %s\n", fmt(rep.lhs).c_str());
        std::printf("rhs %s\n", fmt(rep.rhs).c_str());
        std::printf("quotient %s\n", fmt(rep.quotient).c_str());
        std::printf("has_root %s\n", rep.has_root ? "true" : "false");
        return rep.has_root ? 0 : 1;
    }
    if (c_scan->parsed()) {
        h2opa::Range alpha_range, r_range;
        if (!parse_range(alpha_range_text, alpha_range) ||
            !parse_range(r_range_text, r_range)) {
            std::fprintf(stderr, "scan: ranges must be lo:hi:steps\n");
            return 2;
        }
        const h2opa::ScanResult res =
            h2opa::scan_region(alpha_range, r_range, tol, max_terms);
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::binary);  // keep LF line endings
            if (!file) {
                std::fprintf(stderr, "scan: cannot open %s\n",
                             out_path.c_str());
                return 2;
            }
            out = &file;
        }
        *out << "alpha,r,quotient,has_root\n";
        for (std::size_t i = 0; i < res.alphas.size(); ++i)
            for (std::size_t j = 0; j < res.rs.size(); ++j)
                *out << fmt(res.alphas[i]) << ',' << fmt(res.rs[j]) << ','
                     << fmt(res.quotients[i][j]) << ','
                     << (res.verdicts[i][j] ? 1 : 0) << '\n';
        return 0;
    }
    if (c_min->parsed()) {
        // here --tol is the simplex diameter tolerance of the descent
        const double sim_tol =
            app.count("--tol") ? tol : 1e-12;
        const h2opa::MinimizeResult res =
            h2opa::minimize_quotient(alpha, r, sim_tol);
        std::printf("alpha_star %s\n", fmt(res.alpha_star).c_str());
        std::printf("r_star %s\n", fmt(res.r_star).c_str());
        std::printf("quotient_star %s\n", fmt(res.quotient_star).c_str());
        std::printf("iterations %d\n", res.iterations);
        std::printf("converged %s\n", res.converged ? "true" : "false");
        return 0;
    }
    if (c_verify->parsed()) {
        int nt = 0, ny = 0, nw = 0;
        if (!parse_orders(orders_text, nt, ny, nw)) {
            std::fprintf(stderr, "verify-integral: --orders must be nt:ny:nw\n");
            return 2;
        }
        const h2opa::FunctionParams params{alpha, r};
        const h2opa::IntegralSides quad =
            h2opa::criterion_integral_sides(params, nt, ny, nw, tol);
        const h2opa::IntegralSides ref =
            h2opa::series_reference_sides(params, tol, max_terms);
        std::printf("lhs %s\n", fmt(quad.lhs).c_str());
        std::printf("rhs %s\n", fmt(quad.rhs).c_str());
        std::printf("series_lhs %s\n", fmt(ref.lhs).c_str());
        std::printf("series_rhs %s\n", fmt(ref.rhs).c_str());
        std::printf("lhs_rel_gap %s\n",
                    fmt(std::fabs(quad.lhs - ref.lhs) / std::fabs(ref.lhs))
                        .c_str());
        std::printf("rhs_rel_gap %s\n",
                    fmt(std::fabs(quad.rhs - ref.rhs) / std::fabs(ref.rhs))
                        .c_str());
        const bool quad_root = quad.lhs > quad.rhs;
        const bool series_root = ref.lhs > ref.rhs;
        std::printf("integral_verdict %s\n", quad_root ? "root" : "no-root");
        std::printf("series_verdict %s\n", series_root ? "root" : "no-root");
        const bool agree = quad_root == series_root;
        std::printf("agreement %s\n", agree ? "true" : "false");
        return agree ? 0 : 1;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const h2opa::InvalidParameters& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const h2opa::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
