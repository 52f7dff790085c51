#pragma once

// Pointwise Lagrangian geometry from derivative jets: induced metric,
// adapted frame {e_i, Je_i}, second fundamental form h^{m*}_{ij}, mean
// curvature, trace-free part, covariant derivatives, the tensor T,
// intrinsic and normal curvature, and the Maslov form.
//
// All frame tensors are stored with the covariant-derivative indices
// appended last: grad_h(m, i, j, k) = h^{m*}_{ij,k}.

#include <functional>
#include <string>
#include <vector>

#include "whitney/immersion.hpp"
#include "whitney/tensor.hpp"

namespace whitney {

// Jet order used to build a state: kPointwise 2, kWithDerivatives 3, kFull 4.
enum class Depth { kPointwise, kWithDerivatives, kFull };
int jet_order(Depth depth);

struct MetricData {
  RealTensor g;            // g(a, b)
  RealTensor g_inv;
  RealTensor christoffel;  // christoffel(k, i, j) = Gamma^k_ij
  double sqrt_det_g = 0.0;
};

struct AdaptedFrame {
  std::vector<std::vector<double>> e;   // ambient tangent vectors
  std::vector<std::vector<double>> Je;  // normal frame
  RealTensor gauge;                     // e = gauge * (Gram-Schmidt frame)
  double orthonormality_defect = 0.0;   // max |<e_i, e_j> - d_ij|
  double lagrangian_defect = 0.0;       // max |<e_i, J e_j>|
};

struct MaslovForm {
  std::vector<double> alpha;        // <JH, e_i>
  std::vector<double> chart_alpha;  // <JH, d_a phi>
};

struct GeometryOptions {
  RealTensor gauge;  // constant orthogonal re-gauge of the frame; empty means identity
  double lagrangian_tol = 1e-6;
};

struct GeometryState {
  ChartPoint point;
  std::string immersion;
  int n = 0;
  double c_amb = 0.0;
  Depth depth = Depth::kPointwise;

  MetricData metric;
  AdaptedFrame frame;
  CubicSymTensor h;
  VectorField1 H;
  CubicSymTensor hhat;
  double tri_symmetry_defect = 0.0;  // of the raw Gauss-formula components

  // kWithDerivatives and deeper.
  RealTensor grad_h;      // h^{m*}_{ij,k}
  RealTensor grad_hhat;   // hhat^{m*}_{ij,k}
  RealTensor grad_H;      // grad_H(m, k) = H^{m*}_{,k}
  SymTraceFree2 T;        // (n H^{i*}_{,j} - div JH d_ij) / (n+2)
  RealTensor T_from_hhat; // (1/n) sum_m hhat^{m*}_{ij,m}
  RealTensor R;           // intrinsic curvature R_ijkl from chart Christoffels
  RealTensor R_normal;    // R_{ijk*l*} from the curvature of the normal connection
  MaslovForm maslov;
  double maslov_closedness = 0.0;  // max_ab |d_a alpha_b - d_b alpha_a|

  // kFull only.
  RealTensor hess_h;       // h^{m*}_{ij,kl}
  RealTensor hess_hhat;    // hhat^{m*}_{ij,kl}
  RealTensor grad_T;       // T_{ij,k}
  double laplacian_hhat_norm2 = 0.0;

  bool has_derivatives() const { return depth != Depth::kPointwise; }
  bool has_second_derivatives() const { return depth == Depth::kFull; }
};

// Runs the flat-ambient pipeline on interleaved ambient jets. c_amb is
// recorded in the state; it does not enter the computation.
GeometryState geometry_from_components(std::vector<Jet> components, int n, double c_amb, Depth depth,
                                       const GeometryOptions& options = {});

// C^n immersions; CP^n immersions are routed through the horizontal lift.
GeometryState geometry_state(const Immersion& imm, const ChartPoint& p, Depth depth,
                             const GeometryOptions& options = {});

SymTraceFree2 maslov_tensor(const GeometryState& state);
RealTensor intrinsic_curvature(const Immersion& imm, const ChartPoint& p);
MaslovForm maslov_one_form(const GeometryState& state);
double closedness_residual(const Immersion& imm, const ChartPoint& p);

MetricData metric_data(const Immersion& imm, const ChartPoint& p);

using ChartField = std::function<double(const ChartPoint&)>;

// g^{ab}(d_a d_b f - Gamma^c_ab d_c f) with central differences (step 1e-3,
// one Richardson step). The stencil must stay inside p's chart.
double scalar_laplacian(const Immersion& imm, const ChartField& field, const ChartPoint& p,
                        double step = 1e-3);
// Same operator on a model-coordinate function through exact jets.
double scalar_laplacian(const Immersion& imm, const ModelFunction& field, const ChartPoint& p);

// |grad f| for a model-coordinate function, exact through jets.
double gradient_norm(const Immersion& imm, const ModelFunction& field, const ChartPoint& p);

}  // namespace whitney
