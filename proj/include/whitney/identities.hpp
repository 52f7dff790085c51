#pragma once

// Named residuals for the structure equations of a Lagrangian immersion,
// the Simons-type identity and inequality, and the algebraic identities
// behind them. Geometric checks act on GeometryStates; algebraic suites act
// on random tensors.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "whitney/geometry.hpp"

namespace whitney::identities {

// Tolerance ladder: jet-exact, once finite-differenced, twice
// finite-differenced. `scale` multiplies all three.
struct Tolerances {
  double jet_exact = 1e-9;
  double once_fd = 1e-6;
  double twice_fd = 1e-4;
  double simons_fd = 1e-3;  // relative, Laplacian by finite differences
  double scale = 1.0;

  double rung(int level) const;
};

struct Check {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool pass() const { return max_residual <= tolerance; }
};

struct IdentityReport {
  std::string immersion;
  std::map<std::string, std::vector<double>> params;
  std::vector<ChartPoint> points;
  std::vector<Check> checks;
  // Which sign of the commutator term makes the Simons identity balance:
  // "trace_of_square" (tr C^2 = -N(C)) or "frobenius" (+N(C)).
  std::string commutator_convention;
  double commutator_alt_residual = 0.0;
  // Reported values that are not asserted.
  std::map<std::string, double> diagnostics;

  void record(const std::string& name, double residual, double tolerance);
  const Check* find(const std::string& name) const;
  bool all_pass() const;
};

// Pointwise residuals. Derivative-dependent checks need the depth noted.
double lagrangian_condition(const GeometryState& s);
double tri_symmetry(const GeometryState& s);
double codazzi(const GeometryState& s);                            // derivatives
double mean_curvature_derivative_symmetry(const GeometryState& s);  // derivatives
double maslov_tensor_consistency(const GeometryState& s);           // derivatives
double norm_identity(const GeometryState& s);
double gauss_equation(const GeometryState& s);                      // derivatives
double ricci_equation(const GeometryState& s);                      // derivatives
double maslov_form_norm(const GeometryState& s);                    // derivatives
double ricci_identity(const GeometryState& s);                      // full
double rough_laplacian_formula(const GeometryState& s);             // full

// Right side of the Ricci equation R_{ijk*l*} for the state's h and c.
RealTensor ricci_equation_rhs(const CubicSymTensor& h, double c);

// (n+2) <hhat, grad T> = (n+2) sum hhat^{m*}_{ij} T_{ij,m}.
double hhat_dot_grad_T(const GeometryState& s);

struct SimonsEvaluation {
  double lhs = 0.0;          // 1/2 Laplacian |hhat|^2 through jets
  double lhs_fd = 0.0;       // 1/2 Laplacian |hhat|^2 by finite differences (if computed)
  double rhs = 0.0;          // with the tr(C^2) commutator
  double rhs_frobenius = 0.0;// with +N(C) in its place
  double gradient_term = 0.0;
  double grad_hhat_norm2 = 0.0;
  double curvature_block = 0.0;
  double lower_bound = 0.0;  // right side of the inequality
  double residual() const;   // |lhs - rhs| / (1 + |lhs|)
  double residual_fd() const;
  double inequality_margin() const { return lhs - lower_bound; }
};

// Needs a kFull state.
SimonsEvaluation simons(const GeometryState& s);
// Adds the finite-difference Laplacian of |hhat|^2 around s.point.
SimonsEvaluation simons(const Immersion& imm, const GeometryState& s, double step = 1e-3);

// Runs every geometric check over the points.
IdentityReport check_immersion(const Immersion& imm, const std::vector<ChartPoint>& points,
                               const Tolerances& tol = {}, const GeometryOptions& options = {},
                               bool with_fd_simons = true);

// Random algebraic suites; each returns the worst residual over all trials.
double norm_identity_suite(int n, int trials, std::mt19937_64& rng);
double contraction_identity_suite(int n, int trials, std::mt19937_64& rng);
double curvature_closed_form_suite(int n, int trials, std::mt19937_64& rng);
// Largest lhs - rhs (never positive when the inequality holds).
double li_li_suite(int trials, int max_dim, int max_count, std::mt19937_64& rng);
// Smallest algebraic Simons margin.
double simons_algebraic_suite(int n, int trials, std::mt19937_64& rng);
// Largest change of rotation-invariant scalars under random rotations.
double rotation_equivariance_suite(int n, int trials, std::mt19937_64& rng);

IdentityReport algebraic_report(const std::vector<int>& dims, int trials, std::mt19937_64& rng,
                                const Tolerances& tol = {});

}  // namespace whitney::identities
