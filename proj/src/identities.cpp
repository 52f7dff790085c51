#include "whitney/identities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "whitney/algebra.hpp"

namespace whitney::identities {
namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

void require_derivatives(const GeometryState& s, const char* what) {
  if (!s.has_derivatives()) fail(ErrorKind::kUnsupportedOrder, std::string(what) + " needs a state with derivatives");
}

void require_full(const GeometryState& s, const char* what) {
  if (!s.has_second_derivatives()) {
    fail(ErrorKind::kUnsupportedOrder, std::string(what) + " needs second covariant derivatives");
  }
}

std::vector<RealTensor> slices(const CubicSymTensor& a) {
  const int n = a.dim();
  std::vector<RealTensor> out;
  for (int i = 0; i < n; ++i) {
    RealTensor m(n, 2);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(j, k) = a(i, j, k);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

double Tolerances::rung(int level) const {
  switch (std::clamp(level, 0, 2)) {
    case 0: return jet_exact * scale;
    case 1: return once_fd * scale;
    default: return twice_fd * scale;
  }
}

void IdentityReport::record(const std::string& name, double residual, double tolerance) {
  for (Check& c : checks) {
    if (c.name == name) {
      if (!(residual <= c.max_residual)) c.max_residual = residual;
      c.tolerance = tolerance;
      ++c.samples;
      return;
    }
  }
  checks.push_back({name, residual, tolerance, 1});
}

const Check* IdentityReport::find(const std::string& name) const {
  for (const Check& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool IdentityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

double lagrangian_condition(const GeometryState& s) { return s.frame.lagrangian_defect; }

double tri_symmetry(const GeometryState& s) { return s.tri_symmetry_defect; }

double codazzi(const GeometryState& s) {
  require_derivatives(s, "codazzi");
  const int n = s.n;
  double worst = 0.0;
  std::array<int, 4> idx{};
  for (std::size_t p = 0; p < s.grad_h.size(); ++p) {
    const auto u = s.grad_h.unflatten(p);
    for (int r = 0; r < 4; ++r) idx[r] = u[r];
    const double v = s.grad_h.flat()[p];
    std::array<int, 4> perm = idx;
    std::sort(perm.begin(), perm.end());
    do {
      worst = std::max(worst, std::abs(s.grad_h(perm[0], perm[1], perm[2], perm[3]) - v));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  (void)n;
  return worst;
}

double mean_curvature_derivative_symmetry(const GeometryState& s) {
  require_derivatives(s, "H-derivative symmetry");
  double worst = 0.0;
  for (int i = 0; i < s.n; ++i)
    for (int k = 0; k < s.n; ++k) worst = std::max(worst, std::abs(s.grad_H(k, i) - s.grad_H(i, k)));
  return worst;
}

double maslov_tensor_consistency(const GeometryState& s) {
  require_derivatives(s, "T consistency");
  return max_abs_diff(s.T.raw(), s.T_from_hhat);
}

double norm_identity(const GeometryState& s) {
  const int n = s.n;
  return std::abs(s.hhat.norm2() - s.h.norm2() + 3.0 * n * n / (n + 2.0) * s.H.norm2());
}

double gauss_equation(const GeometryState& s) {
  require_derivatives(s, "Gauss equation");
  return max_abs_diff(s.R, algebra::gauss_curvature(s.h, s.c_amb));
}

RealTensor ricci_equation_rhs(const CubicSymTensor& h, double c) {
  const int n = h.dim();
  RealTensor r(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = c * (delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k));
          for (int m = 0; m < n; ++m) v += h(k, i, m) * h(l, j, m) - h(l, i, m) * h(k, j, m);
          r(i, j, k, l) = v;
        }
  return r;
}

double ricci_equation(const GeometryState& s) {
  require_derivatives(s, "Ricci equation");
  return max_abs_diff(s.R_normal, ricci_equation_rhs(s.h, s.c_amb));
}

double maslov_form_norm(const GeometryState& s) {
  require_derivatives(s, "Maslov form");
  double a2 = 0.0;
  for (double a : s.maslov.alpha) a2 += a * a;
  // chart components through the inverse metric
  double c2 = 0.0;
  for (int a = 0; a < s.n; ++a)
    for (int b = 0; b < s.n; ++b) c2 += s.metric.g_inv(a, b) * s.maslov.chart_alpha[a] * s.maslov.chart_alpha[b];
  return std::max(std::abs(a2 - s.H.norm2()), std::abs(c2 - s.H.norm2()));
}

double ricci_identity(const GeometryState& s) {
  require_full(s, "Ricci identity");
  const int n = s.n;
  const RealTensor R = algebra::gauss_curvature(s.h, s.c_amb);
  const RealTensor Rn = ricci_equation_rhs(s.h, s.c_amb);
  double worst = 0.0;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          for (int p = 0; p < n; ++p) {
            const double lhs = s.hess_h(m, i, j, l, p) - s.hess_h(m, i, j, p, l);
            double rhs = 0.0;
            for (int k = 0; k < n; ++k) {
              rhs += s.h(m, k, j) * R(k, i, l, p) + s.h(m, i, k) * R(k, j, l, p) + s.h(k, i, j) * Rn(l, p, k, m);
            }
            worst = std::max(worst, std::abs(lhs - rhs));
          }
  return worst;
}

double hhat_dot_grad_T(const GeometryState& s) {
  require_full(s, "<hhat, grad T>");
  const int n = s.n;
  double v = 0.0;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v += s.hhat(m, i, j) * s.grad_T(i, j, m);
  return (n + 2) * v;
}

double rough_laplacian_formula(const GeometryState& s) {
  require_full(s, "rough Laplacian formula");
  const int n = s.n;
  double lhs = 0.0;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) lhs += s.hhat(m, i, j) * s.hess_hhat(m, i, j, k, k);
  double curv = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l) {
            curv += s.hhat(m, i, j) * (s.hhat(m, l, k) * s.R(l, i, j, k) + s.hhat(m, i, l) * s.R(l, k, j, k) +
                                       s.hhat(l, i, k) * s.R_normal(j, k, l, m));
          }
  const double rhs = hhat_dot_grad_T(s) + curv;
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double SimonsEvaluation::residual() const { return std::abs(lhs - rhs) / (1.0 + std::abs(lhs)); }
double SimonsEvaluation::residual_fd() const { return std::abs(lhs_fd - rhs) / (1.0 + std::abs(lhs_fd)); }

SimonsEvaluation simons(const GeometryState& s) {
  require_full(s, "Simons identity");
  const algebra::SimonsTerms t = algebra::simons_terms(s.hhat, s.H);
  SimonsEvaluation e;
  e.lhs = 0.5 * s.laplacian_hhat_norm2;
  e.gradient_term = hhat_dot_grad_T(s);
  e.grad_hhat_norm2 = norm2(s.grad_hhat);
  e.curvature_block = t.curvature_block(s.c_amb);
  e.rhs = e.gradient_term + e.grad_hhat_norm2 + e.curvature_block;
  e.rhs_frobenius = e.rhs - t.commutator + t.commutator_norm;
  e.lower_bound = e.gradient_term + e.grad_hhat_norm2 + t.lower_bound_block(s.c_amb);
  e.lhs_fd = e.lhs;
  return e;
}

SimonsEvaluation simons(const Immersion& imm, const GeometryState& s, double step) {
  SimonsEvaluation e = simons(s);
  const ChartField field = [&imm](const ChartPoint& q) {
    return geometry_state(imm, q, Depth::kPointwise).hhat.norm2();
  };
  e.lhs_fd = 0.5 * scalar_laplacian(imm, field, s.point, step);
  return e;
}

IdentityReport check_immersion(const Immersion& imm, const std::vector<ChartPoint>& points, const Tolerances& tol,
                               const GeometryOptions& options, bool with_fd_simons) {
  IdentityReport rep;
  rep.immersion = imm.name;
  rep.params = imm.params;
  rep.points = points;
  // Black-box immersions lose accuracy with each finite-differenced order.
  const bool fd = !imm.model_map;
  const int k1 = fd ? 1 : 0, k2 = fd ? 2 : 0;

  double balance_trace = 0.0, balance_frob = 0.0;
  double min_intermediate = std::numeric_limits<double>::infinity();
  double min_algebraic = std::numeric_limits<double>::infinity();
  for (const ChartPoint& p : points) {
    const GeometryState s = geometry_state(imm, p, Depth::kFull, options);
    rep.record("lagrangian_condition", lagrangian_condition(s), tol.rung(k1));
    rep.record("tri_symmetry", tri_symmetry(s), tol.rung(k1));
    rep.record("norm_identity", norm_identity(s), tol.rung(0));
    rep.record("codazzi", codazzi(s), tol.rung(k2));
    rep.record("mean_curvature_derivative_symmetry", mean_curvature_derivative_symmetry(s), tol.rung(k2));
    rep.record("maslov_tensor_consistency", maslov_tensor_consistency(s), tol.rung(k2));
    rep.record("gauss_equation", gauss_equation(s), tol.rung(k2));
    rep.record("ricci_equation", ricci_equation(s), tol.rung(k2));
    rep.record("maslov_form_norm", maslov_form_norm(s), tol.rung(k1));
    rep.record("maslov_form_closed", s.maslov_closedness, tol.rung(k2));
    rep.record("ricci_identity", ricci_identity(s), tol.rung(k2));
    rep.record("rough_laplacian_formula", rough_laplacian_formula(s), tol.rung(k2));

    const SimonsEvaluation e = with_fd_simons ? simons(imm, s) : simons(s);
    rep.record("simons_identity", e.residual(), tol.rung(k2));
    if (with_fd_simons) rep.record("simons_identity_fd", e.residual_fd(), tol.simons_fd * tol.scale);
    rep.record("simons_inequality", std::max(0.0, -e.inequality_margin()), tol.rung(k2));
    balance_trace += std::abs(e.lhs - e.rhs);
    balance_frob += std::abs(e.lhs - e.rhs_frobenius);

    const double alg = algebra::simons_algebraic_margin(s.hhat, s.H);
    min_algebraic = std::min(min_algebraic, alg);
    rep.record("simons_algebraic_bound", std::max(0.0, -alg), tol.rung(0));
    min_intermediate = std::min(min_intermediate, algebra::simons_intermediate_margin(s.hhat, s.H));

    double worst = 0.0;
    for (const auto& r : algebra::contraction_identities(s.hhat, s.H)) {
      worst = std::max(worst, r.residual() / (1.0 + std::abs(r.lhs)));
    }
    rep.record("contraction_identities", worst, tol.rung(0));
    const auto mats = slices(s.hhat);
    const auto ll = algebra::li_li_check(mats);
    rep.record("li_li_inequality", std::max(0.0, ll.lhs - ll.rhs), tol.rung(0));
  }
  if (!points.empty()) {
    const double n = static_cast<double>(points.size());
    if (std::abs(balance_trace - balance_frob) <= 1e-12 * (1.0 + balance_trace)) {
      rep.commutator_convention = "indistinguishable";
    } else {
      rep.commutator_convention = balance_trace < balance_frob ? "trace_of_square" : "frobenius";
    }
    rep.commutator_alt_residual = balance_frob / n;
    rep.diagnostics["simons_algebraic_margin_min"] = min_algebraic;
    rep.diagnostics["simons_intermediate_margin_min"] = min_intermediate;
  }
  return rep;
}

double norm_identity_suite(int n, int trials, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CubicSymTensor h = algebra::random_cubic(n, rng);
    const VectorField1 H = algebra::mean_curvature(h);
    const CubicSymTensor hhat = algebra::tracefree_part(h, H);
    worst = std::max(worst, std::abs(hhat.norm2() - h.norm2() + 3.0 * n * n / (n + 2.0) * H.norm2()));
  }
  return worst;
}

double contraction_identity_suite(int n, int trials, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CubicSymTensor hhat = algebra::random_tracefree(n, rng);
    const VectorField1 H = algebra::random_vector(n, rng);
    for (const auto& r : algebra::contraction_identities(hhat, H)) worst = std::max(worst, r.residual());
  }
  return worst;
}

double curvature_closed_form_suite(int n, int trials, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CubicSymTensor hhat = algebra::random_tracefree(n, rng);
    const VectorField1 H = algebra::random_vector(n, rng);
    const double c = t % 2;
    const auto brute = algebra::curvature_contractions(hhat, H, c);
    const auto closed = algebra::curvature_contractions_closed(hhat, H, c);
    worst = std::max({worst, std::abs(brute.first - closed.first), std::abs(brute.second - closed.second),
                      std::abs(brute.third - closed.third)});
  }
  return worst;
}

double li_li_suite(int trials, int max_dim, int max_count, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<int> count(2, max_count);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const int n = dim(rng);
    const int m = count(rng);
    std::vector<RealTensor> mats;
    for (int k = 0; k < m; ++k) mats.push_back(algebra::random_symmetric(n, rng));
    const auto r = algebra::li_li_check(mats);
    worst = std::max(worst, r.lhs - r.rhs);
  }
  return worst;
}

double simons_algebraic_suite(int n, int trials, std::mt19937_64& rng) {
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const CubicSymTensor hhat = algebra::random_tracefree(n, rng);
    const VectorField1 H = algebra::random_vector(n, rng);
    worst = std::min(worst, algebra::simons_algebraic_margin(hhat, H));
  }
  return worst;
}

double rotation_equivariance_suite(int n, int trials, std::mt19937_64& rng) {
  auto scalars = [](const CubicSymTensor& a, const VectorField1& H) {
    std::vector<double> v{a.norm2(), H.norm2()};
    const auto s = algebra::spectral_summary(a, H);
    v.push_back(s.s_h);
    const auto t = algebra::simons_terms(a, H);
    v.insert(v.end(), {t.commutator, t.trace_products, t.cubic, t.quadratic});
    for (const auto& r : algebra::contraction_identities(a, H)) {
      v.push_back(r.lhs);
      v.push_back(r.residual());
    }
    return v;
  };
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const CubicSymTensor hhat = algebra::random_tracefree(n, rng);
    const VectorField1 H = algebra::random_vector(n, rng);
    const RealTensor Q = algebra::random_orthogonal(n, rng);
    const auto a = scalars(hhat, H);
    const auto b = scalars(algebra::rotate(hhat, Q), algebra::rotate(H, Q));
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]) / (1.0 + std::abs(a[k])));
  }
  return worst;
}

IdentityReport algebraic_report(const std::vector<int>& dims, int trials, std::mt19937_64& rng,
                                const Tolerances& tol) {
  IdentityReport rep;
  rep.immersion = "algebraic";
  for (int n : dims) {
    rep.record("norm_identity_random", norm_identity_suite(n, trials, rng), 1e-12 * tol.scale);
    rep.record("contraction_identities_random", contraction_identity_suite(n, trials, rng), 1e-10 * tol.scale);
    rep.record("curvature_closed_forms_random", curvature_closed_form_suite(n, trials, rng), 1e-10 * tol.scale);
    rep.record("simons_algebraic_random", std::max(0.0, -simons_algebraic_suite(n, trials, rng)), 1e-10 * tol.scale);
    rep.record("rotation_equivariance_random", rotation_equivariance_suite(n, trials, rng), 1e-10 * tol.scale);
  }
  const int max_dim = dims.empty() ? 2 : *std::max_element(dims.begin(), dims.end());
  rep.record("li_li_random", std::max(0.0, li_li_suite(trials, max_dim, 5, rng)), 1e-12 * tol.scale);
  return rep;
}

}  // namespace whitney::identities
