#pragma once

// Quadrature over the compact model manifolds and the energy functionals
// of a Lagrangian immersion.
//
// S^n rule: Gauss-Legendre in the polar angles psi_1..psi_{n-1} of
// hyperspherical coordinates and the periodic trapezoid rule in the
// azimuth, nodes mapped into the stereographic atlas. T^n rule: periodic
// trapezoid in every angle.

#include <functional>
#include <string>
#include <vector>

#include "whitney/geometry.hpp"

namespace whitney {

inline constexpr double kDefaultBallRadius = 10.0;

struct QuadratureRule {
  SourceKind domain = SourceKind::kSphere;
  int n = 0;
  int nodes_per_axis = 0;
  int degree = 0;                 // polynomial exactness per polar axis
  double radius = 0.0;            // ball rules only
  std::vector<ChartPoint> nodes;
  std::vector<double> weights;    // chart-parameter measure

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule sphere_rule(int n, int nodes_per_axis);
QuadratureRule torus_rule(int n, int nodes_per_axis);
QuadratureRule ball_rule(int n, double radius, int nodes_per_axis);
// Default resolution for the immersion's model manifold (0 picks the
// default); immersions of R^n get a ball of radius kDefaultBallRadius.
QuadratureRule make_rule(const Immersion& imm, int nodes_per_axis = 0);
int default_nodes_per_axis(SourceKind domain, int n);

// Vol(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_volume(int n);
// Sum of w_k times the round-sphere chart density; reproduces Vol(S^n).
double round_sphere_volume(const QuadratureRule& rule);

// sum_k w_k f(p_k) sqrt(det g)(p_k), reduced by pairwise summation.
double integrate(const Immersion& imm, const ChartField& f, const QuadratureRule& rule);

struct EnergyReport {
  std::string immersion;
  double hhat_n = 0.0;        // int |hhat|^n
  double hhat_2 = 0.0;        // int |hhat|^2
  double h_2 = 0.0;           // int |h|^2
  double H_2 = 0.0;           // int |H|^2
  double hhat_2_from_norm_identity = 0.0;  // int |h|^2 - 3n^2/(n+2) |H|^2
  double volume = 0.0;
  double growth_limit = 0.0;  // lim R^{-2} int_{M_R} |h|^2
  std::string growth_note;
  int nodes_per_axis = 0;
  int degree = 0;
  std::size_t node_count = 0;
};

// For immersions of R^n the integrals run over the ball of the rule and
// growth_limit is R^{-2} int_{B_R} |h|^2.
EnergyReport energy_report(const Immersion& imm, const QuadratureRule& rule);

struct MichaelSimon {
  double lhs = 0.0;         // (int v^{n/(n-1)})^{(n-1)/n}
  double rhs = 0.0;         // int |grad v| + v |H|
  bool has_sobolev = false; // n >= 3
  double sobolev_lhs = 0.0; // (int v^{2n/(n-2)})^{(n-2)/n}
  double sobolev_rhs = 0.0; // int |grad v|^2 + v^2 |H|^2
};

// Throws kInvalidArgument if v is negative at a node.
MichaelSimon michael_simon_ratio(const Immersion& imm, const ModelFunction& v, const QuadratureRule& rule);

// R^{-2} int_{B_R} |h|^2 for immersions of R^n, in polar coordinates.
double ball_growth_ratio(const Immersion& imm, double radius, int nodes_per_axis = 12);

}  // namespace whitney
