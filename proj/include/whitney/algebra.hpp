#pragma once

// Pointwise algebra of the Lagrangian trace-free second fundamental form:
// the umbilic c-tensor, trace-free projection, the contraction identities
// behind the Simons-type formula, the Li-Li matrix inequality and the
// spectral data used to bound the cubic and quartic terms.
//
// Index conventions: a CubicSymTensor a(m, i, j) stores a^{m*}_{ij}. All
// contractions are written as explicit loops that mirror the index
// expressions they evaluate.

#include <random>
#include <span>
#include <string>
#include <vector>

#include "whitney/tensor.hpp"

namespace whitney::algebra {

// c^{m*}_{ij} = n/(n+2) (H^m d_ij + H^i d_jm + H^j d_im).
CubicSymTensor c_tensor(const VectorField1& H);

// H^{k*} = (1/n) sum_i h^{k*}_{ii}.
VectorField1 mean_curvature(const CubicSymTensor& h);

// h - c_tensor(H). Throws kInvalidArgument unless H is trace(h)/n to `tol`.
CubicSymTensor tracefree_part(const CubicSymTensor& h, const VectorField1& H, double tol = 1e-10);

struct Residual {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const;
};

// Auxiliary contraction identities used to reduce the curvature terms of the
// Simons formula, each evaluated by brute-force summation (lhs) and by its
// closed form (rhs). Requires hhat tri-symmetric and trace-free.
std::vector<Residual> contraction_identities(const CubicSymTensor& hhat, const VectorField1& H);

struct LiLiResult {
  double lhs = 0.0;  // sum N(B_m B_k - B_k B_m) + sum S_mk^2
  double rhs = 0.0;  // 3/2 S^2
};

// Requires at least two symmetric matrices of equal size.
LiLiResult li_li_check(std::span<const RealTensor> matrices);

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  RealTensor vectors;          // column k is the eigenvector of values[k]
};

// Cyclic Jacobi rotations; stops when the off-diagonal Frobenius norm drops
// below tol * ||M||_F.
SymmetricEigen jacobi_eigen(const RealTensor& symmetric, double tol = 1e-13);

struct SpectralSummary {
  std::vector<double> lambdas;  // eigenvalues of M_ij = sum_l hhat^l_ij H^l
  std::vector<double> s_star;   // S_{i*} in the eigenbasis of M
  double s_h = 0.0;             // sum lambda_i^2
};

SpectralSummary spectral_summary(const CubicSymTensor& hhat, const VectorField1& H);

// Scalar pieces of the curvature block of the Simons identity.
struct SimonsTerms {
  int n = 0;
  double hhat_norm2 = 0.0;
  double H_norm2 = 0.0;
  double commutator = 0.0;        // sum_{i,j} tr((A_i A_j - A_j A_i)^2), A_i = (hhat^{i*}_{jk})
  double commutator_norm = 0.0;   // sum_{i,j} N(A_i A_j - A_j A_i)  (= -commutator)
  double trace_products = 0.0;    // sum_{i,j} (tr A_i A_j)^2
  double cubic = 0.0;             // sum hhat^m_ji hhat^m_jt hhat^l_ti H^l
  double quadratic = 0.0;         // sum hhat^m_ij hhat^m_jk H^i H^k

  // Everything on the right of the identity except <hhat, grad T> and
  // |grad hhat|^2, for ambient curvature parameter c.
  double curvature_block(double c) const;
  // The matching part of the lower bound: (n+1)c|hhat|^2 + n^2/(n+2)|hhat|^2|H|^2
  // - (n+3)/2 |hhat|^4.
  double lower_bound_block(double c) const;
};

SimonsTerms simons_terms(const CubicSymTensor& hhat, const VectorField1& H);

// The three curvature contractions I, II, III obtained by brute force from
// the Gauss-equation curvature of h = hhat + c_tensor(H) with ambient
// parameter c.
struct CurvatureContractions {
  double first = 0.0;
  double second = 0.0;
  double third = 0.0;
};

CurvatureContractions curvature_contractions(const CubicSymTensor& hhat, const VectorField1& H,
                                             double c);

// The same three quantities from their closed forms in terms of |hhat|^2,
// |H|^2 and the cubic, quadratic and quartic contractions of hhat.
CurvatureContractions curvature_contractions_closed(const CubicSymTensor& hhat, const VectorField1& H,
                                                    double c);

// Gauss-equation curvature R_ijkl = c(d_ik d_jl - d_il d_jk)
//   + sum_m (h^m_ik h^m_jl - h^m_il h^m_jk).
RealTensor gauss_curvature(const CubicSymTensor& h, double c);

// Margin of the purely algebraic step from the curvature block to its lower
// bound; nonnegative whenever the estimate holds.
double simons_algebraic_margin(const CubicSymTensor& hhat, const VectorField1& H);

// The intermediate bound with (|H| lambda_i + S_{i*})^2; reported, never
// asserted. Returns curvature block minus that intermediate expression.
double simons_intermediate_margin(const CubicSymTensor& hhat, const VectorField1& H);

// Random data for identity suites.
CubicSymTensor random_tracefree(int n, std::mt19937_64& rng);
CubicSymTensor random_cubic(int n, std::mt19937_64& rng);
VectorField1 random_vector(int n, std::mt19937_64& rng);
RealTensor random_symmetric(int n, std::mt19937_64& rng);
RealTensor random_orthogonal(int n, std::mt19937_64& rng);

// New frame e'_a = sum_i Q(a, i) e_i.
CubicSymTensor rotate(const CubicSymTensor& a, const RealTensor& Q);
VectorField1 rotate(const VectorField1& v, const RealTensor& Q);

}  // namespace whitney::algebra
