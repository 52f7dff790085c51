#pragma once

// Parametrized immersions of model manifolds (S^n, T^n, R^n) into C^n, or
// into C^{n+1} as homogeneous coordinates of CP^n, and their derivative jets.
//
// Ambient points are stored as interleaved reals (Re z_1, Im z_1, ...). The
// complex structure J acts per complex coordinate as (a, b) -> (-b, a).

#include <complex>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "whitney/error.hpp"
#include "whitney/jet.hpp"

namespace whitney {

enum class AmbientKind { kComplexEuclidean, kHomogeneousSphere };
enum class SourceKind { kSphere, kTorus, kEuclidean };

struct ChartPoint {
  int chart_id = 0;
  std::vector<double> coords;
};

// Analytic map from model coordinates (the embedded x in S^n, the angles of
// T^n, or the point of R^n) to interleaved ambient coordinates.
using ModelMap = std::function<std::vector<Jet>(std::span<const Jet> model)>;
// A scalar on the model manifold, written in model coordinates.
using ModelFunction = std::function<Jet(std::span<const Jet> model)>;
// Point evaluation only; derivatives come from finite differences.
using BlackBoxMap = std::function<std::vector<double>(std::span<const double> chart_coords, int chart_id)>;

struct Immersion {
  std::string name;
  int source_dim = 0;
  SourceKind source = SourceKind::kEuclidean;
  AmbientKind ambient = AmbientKind::kComplexEuclidean;
  int ambient_complex_dim = 0;
  std::map<std::string, std::vector<double>> params;
  // Families that are not Lagrangian by construction (used for metric-only
  // computations) clear this flag.
  bool lagrangian = true;
  ModelMap model_map;
  BlackBoxMap black_box;

  int model_dim() const { return source == SourceKind::kSphere ? source_dim + 1 : source_dim; }
  int ambient_real_dim() const { return 2 * ambient_complex_dim; }
  double c_amb() const { return ambient == AmbientKind::kHomogeneousSphere ? 1.0 : 0.0; }
};

struct ImmersionJet {
  int order = 0;
  int source_dim = 0;
  std::vector<Jet> components;  // ambient real coordinates as jets in the chart variables

  std::vector<double> values() const;
  // d^alpha of one ambient real coordinate.
  double partial(int component, std::span<const int> multi_index) const;
};

Immersion make_whitney_cn(double r, std::vector<std::complex<double>> A, int n);
Immersion make_product_torus(std::vector<double> radii);
// complexify != 0 adds i * complexify * x_1 to z_2, which breaks the
// Lagrangian condition.
Immersion make_lagrangian_plane(int n, double complexify = 0.0);
// Whitney sphere phi_{r,0} followed by the exact symplectic shear
// (X, Y) -> (X, Y + eps grad F(X)) with a polynomial potential of degree mode+2.
Immersion make_perturbed_whitney(double r, double eps, int mode, int n);
// S^n sitting in the real slots of C^{n+1}; not Lagrangian, metric-only.
Immersion make_round_sphere(int n);
Immersion make_black_box(std::string name, int n, SourceKind source, AmbientKind ambient,
                         int ambient_complex_dim, BlackBoxMap map);

// lambda * phi.
Immersion dilate(const Immersion& imm, double lambda);
// z -> U z + b with U unitary.
Immersion unitary_motion(const Immersion& imm, const std::vector<std::complex<double>>& U,
                         const std::vector<std::complex<double>>& b);
std::vector<std::complex<double>> random_unitary(int n, std::mt19937_64& rng);

bool in_domain(const Immersion& imm, const ChartPoint& p);
// Model coordinates of the chart point as jets in the chart variables.
std::vector<Jet> model_jets(const Immersion& imm, const ChartPoint& p, int order);
std::vector<double> model_point(const Immersion& imm, const ChartPoint& p);
// Preferred chart for a model point (hemisphere for S^n, wrapped angles for T^n).
ChartPoint chart_from_model(const Immersion& imm, std::span<const double> model);

ImmersionJet eval_jet(const Immersion& imm, const ChartPoint& p, int order);
std::vector<double> evaluate(const Immersion& imm, const ChartPoint& p);
// Jet of a model-coordinate scalar at p.
Jet eval_model_function(const Immersion& imm, const ModelFunction& f, const ChartPoint& p, int order);

ChartPoint chart_transition(const Immersion& imm, const ChartPoint& p, int target_chart);
// Moves sphere points with |u| > 1 to the opposite chart.
ChartPoint normalize_chart(const Immersion& imm, const ChartPoint& p);

std::vector<ChartPoint> sample_points(const Immersion& imm, int count, std::mt19937_64& rng);

}  // namespace whitney
