#include "whitney/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace whitney::algebra {
namespace {

double delta(int a, int b) { return a == b ? 1.0 : 0.0; }

void require_same_dim(const CubicSymTensor& a, const VectorField1& H) {
  if (a.dim() != H.dim()) fail(ErrorKind::kInvalidArgument, "tensor and vector dimensions differ");
}

void require_tracefree(const CubicSymTensor& hhat) {
  const double scale = 1.0 + std::sqrt(hhat.norm2());
  if (hhat.symmetry_defect() > 1e-9 * scale) {
    fail(ErrorKind::kSymmetryViolation, "hhat is not tri-symmetric");
  }
  for (double t : hhat.trace()) {
    if (std::abs(t) > 1e-9 * scale) fail(ErrorKind::kSymmetryViolation, "hhat is not trace-free");
  }
}

}  // namespace

double Residual::residual() const { return std::abs(lhs - rhs); }

CubicSymTensor c_tensor(const VectorField1& H) {
  const int n = H.dim();
  const double k = static_cast<double>(n) / (n + 2);
  CubicSymTensor c(n);
  for (int m = 0; m < n; ++m)
    for (int i = m; i < n; ++i)
      for (int j = i; j < n; ++j) {
        c.set(m, i, j, k * (H[m] * delta(i, j) + H[i] * delta(j, m) + H[j] * delta(i, m)));
      }
  return c;
}

VectorField1 mean_curvature(const CubicSymTensor& h) {
  std::vector<double> t = h.trace();
  for (double& x : t) x /= h.dim();
  return VectorField1(std::move(t));
}

CubicSymTensor tracefree_part(const CubicSymTensor& h, const VectorField1& H, double tol) {
  require_same_dim(h, H);
  const VectorField1 expected = mean_curvature(h);
  for (int k = 0; k < h.dim(); ++k) {
    if (std::abs(expected[k] - H[k]) > tol * (1.0 + std::abs(expected[k]))) {
      fail(ErrorKind::kInvalidArgument, "H is not trace(h)/n");
    }
  }
  const CubicSymTensor c = c_tensor(H);
  RealTensor out = h.raw();
  for (std::size_t p = 0; p < out.size(); ++p) out.flat()[p] -= c.raw().flat()[p];
  return CubicSymTensor(std::move(out), 1e-9 * (1.0 + std::sqrt(h.norm2())));
}

std::vector<Residual> contraction_identities(const CubicSymTensor& hhat, const VectorField1& H) {
  require_same_dim(hhat, H);
  require_tracefree(hhat);
  const int n = hhat.dim();
  const CubicSymTensor c = c_tensor(H);
  const double q = static_cast<double>(n) / (n + 2);
  const double q2 = q * q;
  const auto& a = hhat;

  double cross_a = 0, cross_b = 0, trace_a = 0, trace_b = 0, cc_cross = 0, cc_trace = 0;
  double chain_a = 0, chain_b = 0, cc_chain = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l)
            for (int t = 0; t < n; ++t) {
              const double pair = a(m, i, j) * a(m, k, l);
              cross_a += pair * a(t, l, j) * c(t, i, k);
              cross_b += pair * c(t, l, j) * a(t, i, k);
              trace_a += pair * a(t, l, k) * c(t, i, j);
              trace_b += pair * c(t, l, k) * a(t, i, j);
              cc_cross += pair * c(t, l, j) * c(t, i, k);
              cc_trace += pair * c(t, l, k) * c(t, i, j);
              const double chain = a(m, i, j) * a(m, l, i);
              chain_a += chain * a(t, l, k) * c(t, k, j);
              chain_b += chain * a(t, k, j) * c(t, l, k);
              cc_chain += chain * c(t, l, k) * c(t, k, j);
            }

  double hcH = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l)
          for (int t = 0; t < n; ++t) hcH += a(m, i, j) * a(m, l, i) * c(t, l, j) * H[t];
  hcH *= n;

  // Closed-form ingredients.
  double cubic = 0, cubic_chain = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          for (int t = 0; t < n; ++t) {
            cubic += a(m, j, k) * a(m, k, l) * a(t, l, j) * H[t];
            cubic_chain += a(m, j, k) * a(m, l, j) * a(t, l, k) * H[t];
          }
  double quad = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) quad += a(m, i, j) * a(m, j, k) * H[i] * H[k];
  const double nh = a.norm2();
  const double nH = H.norm2();
  const double nn = static_cast<double>(n) * n;

  return {
      {"hhhc_cross_a", cross_a, 3 * q * cubic},
      {"hhhc_cross_b", cross_b, 3 * q * cubic},
      {"hhhc_trace_a", trace_a, 2 * q * cubic},
      {"hhhc_trace_b", trace_b, 2 * q * cubic},
      {"hhcc_cross", cc_cross, q2 * nh * nH + 6 * q2 * quad},
      {"hhcc_trace", cc_trace, 4 * q2 * quad},
      {"hhcH", hcH, nn / (n + 2) * nh * nH + 2 * nn / (n + 2) * quad},
      {"hhhc_chain_a", chain_a, 2 * q * cubic_chain},
      {"hhhc_chain_b", chain_b, 2 * q * cubic_chain},
      {"hhcc_chain", cc_chain, 2 * q2 * nh * nH + (n + 6) * q2 * quad},
  };
}

LiLiResult li_li_check(std::span<const RealTensor> matrices) {
  if (matrices.size() < 2) fail(ErrorKind::kInvalidArgument, "Li-Li check needs at least two matrices");
  const int n = matrices[0].dim();
  for (const auto& b : matrices) {
    if (b.rank() != 2 || b.dim() != n) fail(ErrorKind::kInvalidArgument, "matrices must be n x n");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (std::abs(b(i, j) - b(j, i)) > 1e-12 * (1.0 + std::abs(b(i, j)))) {
          fail(ErrorKind::kSymmetryViolation, "Li-Li check requires symmetric matrices");
        }
  }
  const std::size_t count = matrices.size();
  LiLiResult r;
  double s_total = 0.0;
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t q = 0; q < count; ++q) {
      const auto& bp = matrices[p];
      const auto& bq = matrices[q];
      double s_pq = 0.0;
      double commutator = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          s_pq += bp(i, j) * bq(i, j);
          double cij = 0.0;
          for (int k = 0; k < n; ++k) cij += bp(i, k) * bq(k, j) - bq(i, k) * bp(k, j);
          commutator += cij * cij;
        }
      r.lhs += commutator + s_pq * s_pq;
      if (p == q) s_total += s_pq;
    }
  }
  r.rhs = 1.5 * s_total * s_total;
  return r;
}

SymmetricEigen jacobi_eigen(const RealTensor& symmetric, double tol) {
  const int n = symmetric.dim();
  RealTensor a = symmetric;
  RealTensor v(n, 2, 0.0);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  const double scale = std::sqrt(norm2(a));

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale || off == 0.0) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
  SymmetricEigen out{std::vector<double>(n), RealTensor(n, 2)};
  for (int k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

SpectralSummary spectral_summary(const CubicSymTensor& hhat, const VectorField1& H) {
  require_same_dim(hhat, H);
  const int n = hhat.dim();
  RealTensor mat(n, 2, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) mat(i, j) += hhat(l, i, j) * H[l];
  const SymmetricEigen eig = jacobi_eigen(mat);

  // Frame rotated to the eigenbasis: e'_a = sum_i V(i, a) e_i.
  RealTensor q(n, 2);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) q(a, i) = eig.vectors(i, a);
  const CubicSymTensor rotated = rotate(hhat, q);

  SpectralSummary s;
  s.lambdas = eig.values;
  s.s_star.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) s.s_star[i] += rotated(i, j, l) * rotated(i, j, l);
  for (double l : s.lambdas) s.s_h += l * l;
  return s;
}

double SimonsTerms::curvature_block(double c) const {
  const double nn = static_cast<double>(n) * n;
  return (n + 1) * c * hhat_norm2 + nn / (n + 2) * hhat_norm2 * H_norm2 + commutator -
         trace_products + n * cubic + nn / (n + 2) * quadratic;
}

double SimonsTerms::lower_bound_block(double c) const {
  const double nn = static_cast<double>(n) * n;
  return (n + 1) * c * hhat_norm2 + nn / (n + 2) * hhat_norm2 * H_norm2 -
         0.5 * (n + 3) * hhat_norm2 * hhat_norm2;
}

SimonsTerms simons_terms(const CubicSymTensor& hhat, const VectorField1& H) {
  require_same_dim(hhat, H);
  const int n = hhat.dim();
  SimonsTerms t;
  t.n = n;
  t.hhat_norm2 = hhat.norm2();
  t.H_norm2 = H.norm2();

  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      // C = A_p A_q - A_q A_p with (A_p)_{jk} = hhat^p_{jk}
      RealTensor comm(n, 2, 0.0);
      double tr_pq = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          tr_pq += hhat(p, j, k) * hhat(q, k, j);
          for (int s = 0; s < n; ++s) comm(j, k) += hhat(p, j, s) * hhat(q, s, k) - hhat(q, j, s) * hhat(p, s, k);
        }
      double tr_sq = 0.0, frob = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          tr_sq += comm(j, k) * comm(k, j);
          frob += comm(j, k) * comm(j, k);
        }
      t.commutator += tr_sq;
      t.commutator_norm += frob;
      t.trace_products += tr_pq * tr_pq;
    }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          for (int s = 0; s < n; ++s) t.cubic += hhat(m, j, i) * hhat(m, j, s) * hhat(l, s, i) * H[l];

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) t.quadratic += hhat(m, i, j) * hhat(m, j, k) * H[i] * H[k];
  return t;
}

RealTensor gauss_curvature(const CubicSymTensor& h, double c) {
  const int n = h.dim();
  RealTensor r(n, 4, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = c * (delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k));
          for (int m = 0; m < n; ++m) v += h(m, i, k) * h(m, j, l) - h(m, i, l) * h(m, j, k);
          r(i, j, k, l) = v;
        }
  return r;
}

CurvatureContractions curvature_contractions(const CubicSymTensor& hhat, const VectorField1& H,
                                             double c) {
  require_same_dim(hhat, H);
  const int n = hhat.dim();
  RealTensor h = hhat.raw();
  const CubicSymTensor ct = c_tensor(H);
  for (std::size_t p = 0; p < h.size(); ++p) h.flat()[p] += ct.raw().flat()[p];
  const RealTensor r = gauss_curvature(CubicSymTensor(std::move(h)), c);

  CurvatureContractions out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l) {
            out.first += hhat(m, i, j) * hhat(m, l, k) * r(l, i, j, k);
            out.second += hhat(m, i, j) * hhat(m, i, l) * r(l, k, j, k);
            // normal curvature R_{l*m*jk} = R_{jkl*m*}, equal to the tangential one
            out.third += hhat(m, i, j) * hhat(l, i, k) * r(j, k, l, m);
          }
  return out;
}

CurvatureContractions curvature_contractions_closed(const CubicSymTensor& hhat, const VectorField1& H,
                                                    double c) {
  require_same_dim(hhat, H);
  const int n = hhat.dim();
  const auto& a = hhat;
  double quartic_cross = 0.0, quartic_chain = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l)
            for (int t = 0; t < n; ++t) {
              quartic_cross += a(m, i, j) * a(m, k, l) * (a(t, l, j) * a(t, i, k) - a(t, l, k) * a(t, i, j));
              quartic_chain += a(m, i, j) * a(m, l, i) * a(t, l, k) * a(t, k, j);
            }
  double cubic = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m)
          for (int t = 0; t < n; ++t) cubic += a(m, j, k) * a(m, k, l) * a(t, l, j) * H[t];
  double quad = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) quad += a(m, i, j) * a(m, j, k) * H[i] * H[k];
  const double nh = a.norm2(), nH = H.norm2();
  const double d = n + 2.0;
  const double nn = static_cast<double>(n) * n;
  CurvatureContractions out;
  out.first = c * nh + nn / (d * d) * nh * nH + 2.0 * n / d * cubic + quartic_cross + 2.0 * nn / (d * d) * quad;
  out.second = (n - 1) * c * nh + nn * n / (d * d) * nh * nH + (nn - 2.0 * n) / d * cubic +
               nn * (n - 2) / (d * d) * quad - quartic_chain;
  out.third = out.first;
  return out;
}

double simons_algebraic_margin(const CubicSymTensor& hhat, const VectorField1& H) {
  const SimonsTerms t = simons_terms(hhat, H);
  return t.curvature_block(0.0) - t.lower_bound_block(0.0);
}

double simons_intermediate_margin(const CubicSymTensor& hhat, const VectorField1& H) {
  const SimonsTerms t = simons_terms(hhat, H);
  const SpectralSummary s = spectral_summary(hhat, H);
  const double abs_h = std::sqrt(t.H_norm2);
  double squares = 0.0;
  for (int i = 0; i < t.n; ++i) {
    const double v = abs_h * s.lambdas[i] + s.s_star[i];
    squares += v * v;
  }
  return t.curvature_block(0.0) - (t.lower_bound_block(0.0) + 0.5 * t.n * squares);
}

CubicSymTensor random_cubic(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealTensor raw(n, 3);
  for (double& x : raw.flat()) x = normal(rng);
  return CubicSymTensor::symmetrized(raw);
}

CubicSymTensor random_tracefree(int n, std::mt19937_64& rng) {
  const CubicSymTensor h = random_cubic(n, rng);
  return tracefree_part(h, mean_curvature(h));
}

VectorField1 random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorField1 v(n);
  for (int k = 0; k < n; ++k) v[k] = normal(rng);
  return v;
}

RealTensor random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealTensor b(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) b(i, j) = b(j, i) = normal(rng);
  return b;
}

RealTensor random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealTensor q(n, 2);
  for (int a = 0; a < n; ++a) {
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    for (int b = 0; b < a; ++b) {
      double d = 0.0;
      for (int i = 0; i < n; ++i) d += v[i] * q(b, i);
      for (int i = 0; i < n; ++i) v[i] -= d * q(b, i);
    }
    double len = 0.0;
    for (double x : v) len += x * x;
    len = std::sqrt(len);
    for (int i = 0; i < n; ++i) q(a, i) = v[i] / len;
  }
  return q;
}

CubicSymTensor rotate(const CubicSymTensor& a, const RealTensor& Q) {
  const int n = a.dim();
  RealTensor out(n, 3, 0.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        double v = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) v += Q(x, i) * Q(y, j) * Q(z, k) * a(i, j, k);
        out(x, y, z) = v;
      }
  return CubicSymTensor::symmetrized(out);
}

VectorField1 rotate(const VectorField1& v, const RealTensor& Q) {
  const int n = v.dim();
  VectorField1 out(n);
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) out[a] += Q(a, i) * v[i];
  return out;
}

}  // namespace whitney::algebra
