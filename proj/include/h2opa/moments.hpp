#pragma once

#include <vector>

#include "h2opa/hypergeom.hpp"

namespace h2opa {

// The two-parameter family f(z1,z2) = (1 - (z1+z2)/r)^(-alpha) on the bidisk.
// r > 2 keeps the singular set outside the closed bidisk and makes the
// hypergeometric argument 4/r^2 < 1; alpha >= 0 keeps all Taylor
// coefficients nonnegative.
struct FunctionParams {
    double alpha = 0.0;
    double r = 0.0;
};

// Throws InvalidParameters unless alpha >= 0 and r > 2.
void validate(const FunctionParams& params);

// Index (k1,k2) of a Fourier coefficient c_{k1,k2} of |f|^2 on the torus;
// any pair of integers is meaningful.
struct MomentKey {
    int k1 = 0;
    int k2 = 0;
};

// Dense triangular store for Taylor coefficients f_{j,k} of z1^j z2^k,
// j + k <= N.  Reads outside the triangle return 0, which is what the
// convolution oracle wants for truncated data.
class CoeffGrid {
public:
    explicit CoeffGrid(int max_total_degree);

    int max_total_degree() const { return degree_; }

    double at(int j, int k) const {
        if (j < 0 || k < 0 || j + k > degree_)
            return 0.0;
        return data_[offset(j) + k];
    }

    void set(int j, int k, double value);

private:
    std::size_t offset(int j) const {
        // row j holds columns 0..degree_-j; rows stacked in order
        return static_cast<std::size_t>(j) * (degree_ + 1) -
               static_cast<std::size_t>(j) * (j - 1) / 2;
    }

    int degree_;
    std::vector<double> data_;
};

// c_{k1,k2} for k1,k2 >= 0:
//   (alpha)_{k1+k2} / (r^{k1+k2} k1! k2!)
//     * 4F3(alpha, alpha+k1+k2, (k1+k2)/2+1, (k1+k2+1)/2;
//           k1+k2+1, k1+1, k2+1; 4/r^2).
double coeff_pp(const FunctionParams& params, int k1, int k2,
                double tol = kDefaultTol, long max_terms = kDefaultMaxTerms);

// c_{k1,-k2} for k1,k2 >= 0:
//   (alpha)_{k1} (alpha)_{k2} / (r^{k1+k2} k1! k2!)
//     * 4F3(alpha+k1, alpha+k2, (k1+k2+1)/2, (k1+k2)/2+1;
//           k1+1, k2+1, k1+k2+1; 4/r^2).
double coeff_pm(const FunctionParams& params, int k1, int k2,
                double tol = kDefaultTol, long max_terms = kDefaultMaxTerms);

// Any key in Z^2, routed through c_{-k1,-k2} = c_{k1,k2} and
// c_{k1,k2} = c_{k2,k1}.  The canonical form sorts the two indices, so all
// four symmetry images of a key evaluate bit-identically.
double coeff(const FunctionParams& params, MomentKey key,
             double tol = kDefaultTol, long max_terms = kDefaultMaxTerms);

// Taylor coefficients f_{j,k} = (alpha)_{j+k} / (j! k! r^{j+k}) for
// j + k <= N, built by a degree recurrence (no factorial overflow).
CoeffGrid taylor_truncate(const FunctionParams& params, int N);

// Brute-force convolution: sum over f_{j,k} * f_{j-k1,k-k2} with both
// factors inside the grid.  Independent of the hypergeometric formulas;
// truncation error is controlled by the grid degree.
double coeff_oracle(const CoeffGrid& grid, MomentKey key);

// The three moments entering the degree-1 criterion:
//   a = c_{0,0}, b = c_{0,1}, c = c_{1,-1}.
struct MomentsABC {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// Computes (a, b, c) by the 4F3 formulas and cross-validates each against
// its reduced 3F2 form
//   a = 3F2(alpha, alpha, 1/2; 1, 1; 4/r^2)
//   b = (alpha/r)   3F2(alpha, alpha+1, 3/2; 2, 2; 4/r^2)
//   c = (alpha/r)^2 3F2(alpha+1, alpha+1, 3/2; 2, 3; 4/r^2)
// to within 2*tol (scaled); a mismatch throws InternalError.
MomentsABC abc(const FunctionParams& params, double tol = kDefaultTol,
               long max_terms = kDefaultMaxTerms);

} // namespace h2opa
