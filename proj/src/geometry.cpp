#include "whitney/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "whitney/algebra.hpp"
#include "whitney/cpn.hpp"

namespace whitney {
namespace {

using JetVec = std::vector<Jet>;

Jet dot(const JetVec& a, const JetVec& b) {
  Jet s = a[0] * b[0];
  for (std::size_t k = 1; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

template <class V>
V apply_j(const V& v) {
  V out(v.size());
  for (std::size_t k = 0; k + 1 < v.size(); k += 2) {
    out[k] = -v[k + 1];
    out[k + 1] = v[k];
  }
  return out;
}

JetVec derivative(const JetVec& v, int var) {
  JetVec out;
  out.reserve(v.size());
  for (const Jet& c : v) out.push_back(c.derivative(var));
  return out;
}

std::size_t ipow(int n, int r) {
  std::size_t s = 1;
  for (int k = 0; k < r; ++k) s *= static_cast<std::size_t>(n);
  return s;
}

RealTensor values(const JetVec& jets, int n, int rank) {
  RealTensor t(n, rank);
  for (std::size_t p = 0; p < jets.size(); ++p) t.flat()[p] = jets[p].value();
  return t;
}

// F_{I,k} = e_k(F_I) - sum_s sum_l omega_{i_s l}(e_k) F_{I with i_s -> l}
// with omega(k, i, l) = <D_{e_k} e_i, e_l> and E(k, a) the frame coefficients.
JetVec covariant_derivative(const JetVec& F, int rank, int n, const JetVec& E, const JetVec& omega) {
  const std::size_t count = F.size();
  std::vector<JetVec> dF(n);
  for (int a = 0; a < n; ++a) {
    dF[a].reserve(count);
    for (const Jet& f : F) dF[a].push_back(f.derivative(a));
  }
  const int order = dF[0][0].order();
  JetVec Et, Wt;
  for (const Jet& x : E) Et.push_back(x.truncated(order));
  for (const Jet& x : omega) Wt.push_back(x.truncated(order));

  JetVec out(count * n);
  std::vector<int> idx(rank);
  for (std::size_t I = 0; I < count; ++I) {
    std::size_t rem = I;
    for (int s = rank - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(rem % n);
      rem /= n;
    }
    for (int k = 0; k < n; ++k) {
      Jet v = Et[k * n] * dF[0][I];
      for (int a = 1; a < n; ++a) v += Et[k * n + a] * dF[a][I];
      for (int s = 0; s < rank; ++s) {
        const std::size_t stride = ipow(n, rank - 1 - s);
        const std::size_t base = I - static_cast<std::size_t>(idx[s]) * stride;
        for (int l = 0; l < n; ++l) {
          const Jet& w = Wt[(k * n + idx[s]) * n + l];
          v -= w * F[base + l * stride];
        }
      }
      out[I * n + k] = std::move(v);
    }
  }
  return out;
}

JetVec invert_spd(JetVec A, int n) {
  JetVec B(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B[i * n + j] = Jet::constant_like(A[0], i == j ? 1.0 : 0.0);
  for (int col = 0; col < n; ++col) {
    const Jet inv = reciprocal(A[col * n + col]);
    for (int j = 0; j < n; ++j) {
      A[col * n + j] *= inv;
      B[col * n + j] *= inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet f = A[r * n + col];
      for (int j = 0; j < n; ++j) {
        A[r * n + j] -= f * A[col * n + j];
        B[r * n + j] -= f * B[col * n + j];
      }
    }
  }
  return B;
}

double determinant(const RealTensor& g) {
  const int n = g.dim();
  RealTensor a = g;
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

struct Pipeline {
  int n = 0;
  int K = 0;
  std::vector<JetVec> X;  // X[a] = d_a phi
  JetVec g;               // g[a*n+b]
  JetVec E;               // E[i*n+a]
  std::vector<JetVec> e;  // ambient frame
  std::vector<JetVec> Je;
};

}  // namespace

int jet_order(Depth depth) {
  switch (depth) {
    case Depth::kPointwise: return 2;
    case Depth::kWithDerivatives: return 3;
    case Depth::kFull: return 4;
  }
  return 2;
}

GeometryState geometry_from_components(std::vector<Jet> phi, int n, double c_amb, Depth depth,
                                       const GeometryOptions& options) {
  const int K = jet_order(depth);
  if (phi.empty() || phi[0].order() < K) fail(ErrorKind::kUnsupportedOrder, "jet order too low for the requested depth");
  for (Jet& c : phi) c = c.truncated(K);
  const int dim = static_cast<int>(phi.size());

  Pipeline P;
  P.n = n;
  P.K = K;
  for (int a = 0; a < n; ++a) P.X.push_back(derivative(phi, a));
  P.g.resize(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      P.g[a * n + b] = dot(P.X[a], P.X[b]);
      if (b != a) P.g[b * n + a] = P.g[a * n + b];
    }

  GeometryState s;
  s.n = n;
  s.c_amb = c_amb;
  s.depth = depth;
  s.metric.g = values(P.g, n, 2);
  const double det = determinant(s.metric.g);
  double scale = 0.0;
  for (int a = 0; a < n; ++a) scale = std::max(scale, s.metric.g(a, a));
  if (!(det > 1e-10 * std::pow(scale, n))) fail(ErrorKind::kDegenerateMetric, "induced metric is degenerate");
  s.metric.sqrt_det_g = std::sqrt(det);

  // Gram-Schmidt on d_1 phi, ..., d_n phi in order.
  P.E.assign(n * n, Jet(0.0));
  for (int i = 0; i < n; ++i) {
    JetVec u = P.X[i];
    JetVec coeff(n, Jet(0.0));
    coeff[i] = 1.0;
    for (int j = 0; j < i; ++j) {
      const Jet d = dot(P.X[i], P.e[j]);
      for (int k = 0; k < dim; ++k) u[k] -= d * P.e[j][k];
      for (int a = 0; a <= j; ++a) coeff[a] -= d * P.E[j * n + a];
    }
    const Jet len2 = dot(u, u);
    if (!(len2.value() > 1e-14 * scale)) fail(ErrorKind::kDegenerateMetric, "coordinate frame is degenerate");
    const Jet inv = reciprocal(sqrt(len2));
    for (Jet& c : u) c *= inv;
    for (int a = 0; a <= i; ++a) P.E[i * n + a] = coeff[a] * inv;
    P.e.push_back(std::move(u));
  }

  RealTensor Q;
  if (options.gauge.size() > 0) {
    Q = options.gauge;
    if (Q.dim() != n || Q.rank() != 2) fail(ErrorKind::kInvalidArgument, "frame gauge must be n x n");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double d = 0.0;
        for (int k = 0; k < n; ++k) d += Q(i, k) * Q(j, k);
        if (std::abs(d - (i == j ? 1.0 : 0.0)) > 1e-10) fail(ErrorKind::kInvalidArgument, "frame gauge is not orthogonal");
      }
    std::vector<JetVec> e2(n, JetVec(dim, Jet(0.0)));
    JetVec E2(n * n, Jet(0.0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        if (Q(i, k) == 0.0) continue;
        for (int c = 0; c < dim; ++c) e2[i][c].add_scaled(Q(i, k), P.e[k][c]);
        for (int a = 0; a < n; ++a) E2[i * n + a].add_scaled(Q(i, k), P.E[k * n + a]);
      }
    P.e = std::move(e2);
    P.E = std::move(E2);
  } else {
    Q = RealTensor(n, 2);
    for (int i = 0; i < n; ++i) Q(i, i) = 1.0;
  }
  for (const auto& v : P.e) P.Je.push_back(apply_j(v));

  s.frame.gauge = Q;
  for (int i = 0; i < n; ++i) {
    std::vector<double> ev, jv;
    for (int c = 0; c < dim; ++c) {
      ev.push_back(P.e[i][c].value());
      jv.push_back(P.Je[i][c].value());
    }
    s.frame.e.push_back(std::move(ev));
    s.frame.Je.push_back(std::move(jv));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double ee = 0.0, ej = 0.0;
      for (int c = 0; c < dim; ++c) {
        ee += s.frame.e[i][c] * s.frame.e[j][c];
        ej += s.frame.e[i][c] * s.frame.Je[j][c];
      }
      s.frame.orthonormality_defect = std::max(s.frame.orthonormality_defect, std::abs(ee - (i == j ? 1.0 : 0.0)));
      s.frame.lagrangian_defect = std::max(s.frame.lagrangian_defect, std::abs(ej));
    }
  if (s.frame.lagrangian_defect > options.lagrangian_tol) {
    fail(ErrorKind::kNotLagrangian, "Lagrangian condition violated: max |<e_i, J e_j>| = " +
                                        std::to_string(s.frame.lagrangian_defect));
  }

  // h^{m*}_{ij} = E_i^a E_j^b <d_a d_b phi, J e_m>
  std::vector<JetVec> second(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) second[a * n + b] = derivative(P.X[b], a);
  JetVec Pm(n * n * n);
  for (int m = 0; m < n; ++m) {
    JetVec Jm;
    for (const Jet& c : P.Je[m]) Jm.push_back(c.truncated(K - 2));
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        Pm[(m * n + a) * n + b] = dot(second[a * n + b], Jm);
        Pm[(m * n + b) * n + a] = Pm[(m * n + a) * n + b];
      }
  }
  JetVec Et;
  for (const Jet& x : P.E) Et.push_back(x.truncated(K - 2));
  JetVec half(n * n * n), h_raw(n * n * n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < n; ++b) {
        Jet v = Et[i * n] * Pm[(m * n) * n + b];
        for (int a = 1; a < n; ++a) v += Et[i * n + a] * Pm[(m * n + a) * n + b];
        half[(m * n + i) * n + b] = std::move(v);
      }
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet v = Et[j * n] * half[(m * n + i) * n];
        for (int b = 1; b < n; ++b) v += Et[j * n + b] * half[(m * n + i) * n + b];
        h_raw[(m * n + i) * n + j] = std::move(v);
      }
  const RealTensor h_values = values(h_raw, n, 3);
  s.tri_symmetry_defect = symmetry_defect(h_values);

  JetVec hj(n * n * n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet v = h_raw[(m * n + i) * n + j];
        v += h_raw[(m * n + j) * n + i];
        v += h_raw[(i * n + m) * n + j];
        v += h_raw[(i * n + j) * n + m];
        v += h_raw[(j * n + m) * n + i];
        v += h_raw[(j * n + i) * n + m];
        hj[(m * n + i) * n + j] = v / 6.0;
      }
  JetVec Hj(n);
  for (int m = 0; m < n; ++m) {
    Jet v = hj[(m * n) * n];
    for (int i = 1; i < n; ++i) v += hj[(m * n + i) * n + i];
    Hj[m] = v / static_cast<double>(n);
  }
  const double q = static_cast<double>(n) / (n + 2);
  JetVec hhatj(n * n * n);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet v = hj[(m * n + i) * n + j];
        if (i == j) v.add_scaled(-q, Hj[m]);
        if (j == m) v.add_scaled(-q, Hj[i]);
        if (i == m) v.add_scaled(-q, Hj[j]);
        hhatj[(m * n + i) * n + j] = std::move(v);
      }
  s.h = CubicSymTensor(values(hj, n, 3));
  s.H = VectorField1(n);
  for (int m = 0; m < n; ++m) s.H[m] = Hj[m].value();
  s.hhat = CubicSymTensor(values(hhatj, n, 3));

  // Chart metric data; Christoffels need one derivative of g.
  const JetVec ginv = invert_spd(P.g, n);
  s.metric.g_inv = values(ginv, n, 2);
  std::vector<JetVec> dg(n);
  for (int c = 0; c < n; ++c) dg[c] = derivative(P.g, c);
  JetVec gamma(n * n * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet v = 0.0;
        for (int d = 0; d < n; ++d) {
          const Jet t = dg[i][j * n + d] + dg[j][i * n + d] - dg[d][i * n + j];
          v += ginv[k * n + d] * t;
        }
        v *= 0.5;
        gamma[(k * n + i) * n + j] = v;
        gamma[(k * n + j) * n + i] = v;
      }
  s.metric.christoffel = values(gamma, n, 3);

  if (depth == Depth::kPointwise) return s;

  // Frame connection omega(k, i, l) = <D_{e_k} e_i, e_l>.
  JetVec D(n * n * n);  // D[(a*n+i)*n+l] = <d_a e_i, e_l>
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) {
      const JetVec dei = derivative(P.e[i], a);
      for (int l = 0; l < n; ++l) D[(a * n + i) * n + l] = dot(dei, P.e[l]);
    }
  JetVec omega(n * n * n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        Jet v = P.E[k * n] * D[(0 * n + i) * n + l];
        for (int a = 1; a < n; ++a) v += P.E[k * n + a] * D[(a * n + i) * n + l];
        omega[(k * n + i) * n + l] = std::move(v);
      }

  const JetVec grad_h = covariant_derivative(hj, 3, n, P.E, omega);
  const JetVec grad_hhat = covariant_derivative(hhatj, 3, n, P.E, omega);
  const JetVec grad_H = covariant_derivative(Hj, 1, n, P.E, omega);
  s.grad_h = values(grad_h, n, 4);
  s.grad_hhat = values(grad_hhat, n, 4);
  s.grad_H = values(grad_H, n, 2);

  JetVec Tj(n * n);
  Jet div = grad_H[0];
  for (int m = 1; m < n; ++m) div += grad_H[m * n + m];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet v = static_cast<double>(n) * grad_H[i * n + j];
      if (i == j) v -= div;
      Tj[i * n + j] = v / static_cast<double>(n + 2);
    }
  RealTensor T_values = values(Tj, n, 2);
  s.T = SymTraceFree2(T_values, 1e-6 * (1.0 + std::sqrt(norm2(T_values))));
  s.T_from_hhat = RealTensor(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int m = 0; m < n; ++m) v += s.grad_hhat(m, i, j, m);
      s.T_from_hhat(i, j) = v / n;
    }

  // Intrinsic curvature from chart Christoffels:
  // R_{abd}^e = d_a G^e_bd - d_b G^e_ad + G^f_bd G^e_af - G^f_ad G^e_bf,
  // R_abcd = g(R(d_a, d_b) d_d, d_c).
  {
    std::vector<RealTensor> dG;
    for (int a = 0; a < n; ++a) {
      JetVec d;
      for (const Jet& x : gamma) d.push_back(x.derivative(a));
      dG.push_back(values(d, n, 3));
    }
    const RealTensor& G = s.metric.christoffel;
    const RealTensor& gv = s.metric.g;
    RealTensor Rc(n, 4);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) {
          std::vector<double> up(n);
          for (int e = 0; e < n; ++e) {
            double v = dG[a](e, b, d) - dG[b](e, a, d);
            for (int f = 0; f < n; ++f) v += G(f, b, d) * G(e, a, f) - G(f, a, d) * G(e, b, f);
            up[e] = v;
          }
          for (int c = 0; c < n; ++c) {
            double v = 0.0;
            for (int e = 0; e < n; ++e) v += up[e] * gv(e, c);
            Rc(a, b, c, d) = v;
          }
        }
    RealTensor Ev(n, 2);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < n; ++a) Ev(i, a) = P.E[i * n + a].value();
    // Successive contraction of each chart index with E.
    RealTensor cur = Rc;
    for (int slot = 0; slot < 4; ++slot) {
      RealTensor next(n, 4);
      for (std::size_t p = 0; p < next.size(); ++p) {
        auto idx = next.unflatten(p);
        double v = 0.0;
        const int i = idx[slot];
        for (int a = 0; a < n; ++a) {
          auto src = idx;
          src[slot] = a;
          v += Ev(i, a) * cur.at(std::span<const int>(src.data(), 4));
        }
        next.flat()[p] = v;
      }
      cur = std::move(next);
    }
    s.R = std::move(cur);
  }

  // Normal curvature from A_a(m, l) = <d_a J e_m, J e_l> = <d_a e_m, e_l>:
  // F_ab(m, l) = d_a A_b - d_b A_a + sum_p A_b(m,p) A_a(p,l) - A_a(m,p) A_b(p,l),
  // R_{ijk*l*} = E_i^a E_j^b F_ab(l, k).
  {
    RealTensor A(n, 3), dA(n, 4);  // A(a, m, l), dA(c, a, m, l) = d_c A_a(m, l)
    for (int a = 0; a < n; ++a)
      for (int m = 0; m < n; ++m)
        for (int l = 0; l < n; ++l) {
          const Jet& x = D[(a * n + m) * n + l];
          A(a, m, l) = x.value();
          for (int c = 0; c < n; ++c) dA(c, a, m, l) = x.derivative(c).value();
        }
    RealTensor F(n, 4);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int m = 0; m < n; ++m)
          for (int l = 0; l < n; ++l) {
            double v = dA(a, b, m, l) - dA(b, a, m, l);
            for (int p = 0; p < n; ++p) v += A(b, m, p) * A(a, p, l) - A(a, m, p) * A(b, p, l);
            F(a, b, m, l) = v;
          }
    s.R_normal = RealTensor(n, 4);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double v = 0.0;
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) v += P.E[i * n + a].value() * P.E[j * n + b].value() * F(a, b, l, k);
            s.R_normal(i, j, k, l) = v;
          }
  }

  // Maslov form alpha = <JH, .> with JH = -sum_k H^k e_k.
  {
    JetVec chart_alpha(n);
    for (int a = 0; a < n; ++a) {
      Jet v = 0.0;
      for (int k = 0; k < n; ++k) v -= Hj[k] * dot(P.e[k], P.X[a]);
      chart_alpha[a] = std::move(v);
    }
    s.maslov.alpha.resize(n);
    s.maslov.chart_alpha.resize(n);
    for (int i = 0; i < n; ++i) {
      s.maslov.alpha[i] = -s.H[i];
      s.maslov.chart_alpha[i] = chart_alpha[i].value();
    }
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        const double d = chart_alpha[b].derivative(a).value() - chart_alpha[a].derivative(b).value();
        s.maslov_closedness = std::max(s.maslov_closedness, std::abs(d));
      }
  }

  if (depth != Depth::kFull) return s;

  const JetVec hess_h = covariant_derivative(grad_h, 4, n, P.E, omega);
  const JetVec hess_hhat = covariant_derivative(grad_hhat, 4, n, P.E, omega);
  const JetVec grad_T = covariant_derivative(Tj, 2, n, P.E, omega);
  s.hess_h = values(hess_h, n, 5);
  s.hess_hhat = values(hess_hhat, n, 5);
  s.grad_T = values(grad_T, n, 3);

  double lap = 0.0;
  const double* hh = s.hhat.raw().flat().data();
  for (std::size_t I = 0; I < ipow(n, 3); ++I) {
    double trace = 0.0;
    for (int k = 0; k < n; ++k) trace += s.hess_hhat.flat()[(I * n + k) * n + k];
    lap += hh[I] * trace;
  }
  lap += norm2(s.grad_hhat);
  s.laplacian_hhat_norm2 = 2.0 * lap;
  return s;
}

GeometryState geometry_state(const Immersion& imm, const ChartPoint& p, Depth depth,
                             const GeometryOptions& options) {
  if (imm.ambient == AmbientKind::kHomogeneousSphere) return cpn_geometry_state(imm, p, depth, options);
  if (!imm.lagrangian || imm.ambient_complex_dim != imm.source_dim) {
    fail(ErrorKind::kNotLagrangian, imm.name + ": Lagrangian condition violated (not a Lagrangian family)");
  }
  const ChartPoint q = normalize_chart(imm, p);
  ImmersionJet jet = eval_jet(imm, q, jet_order(depth));
  GeometryState s = geometry_from_components(std::move(jet.components), imm.source_dim, 0.0, depth, options);
  s.point = q;
  s.immersion = imm.name;
  return s;
}

SymTraceFree2 maslov_tensor(const GeometryState& state) {
  if (!state.has_derivatives()) fail(ErrorKind::kUnsupportedOrder, "maslov_tensor needs a state with derivatives");
  return state.T;
}

RealTensor intrinsic_curvature(const Immersion& imm, const ChartPoint& p) {
  return geometry_state(imm, p, Depth::kWithDerivatives).R;
}

MaslovForm maslov_one_form(const GeometryState& state) {
  if (!state.has_derivatives()) fail(ErrorKind::kUnsupportedOrder, "maslov_one_form needs a state with derivatives");
  return state.maslov;
}

double closedness_residual(const Immersion& imm, const ChartPoint& p) {
  return geometry_state(imm, p, Depth::kWithDerivatives).maslov_closedness;
}

MetricData metric_data(const Immersion& imm, const ChartPoint& p) {
  const int n = imm.source_dim;
  const JetVec phi = imm.ambient == AmbientKind::kHomogeneousSphere ? lifted_components(imm, p, 2)
                                                                     : eval_jet(imm, p, 2).components;
  std::vector<JetVec> X;
  for (int a = 0; a < n; ++a) X.push_back(derivative(phi, a));
  JetVec g(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g[a * n + b] = dot(X[a], X[b]);
  MetricData m;
  m.g = values(g, n, 2);
  const double det = determinant(m.g);
  if (!(det > 0.0)) fail(ErrorKind::kDegenerateMetric, "induced metric is degenerate");
  m.sqrt_det_g = std::sqrt(det);
  const JetVec ginv = invert_spd(g, n);
  m.g_inv = values(ginv, n, 2);
  m.christoffel = RealTensor(n, 3);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int d = 0; d < n; ++d) {
          v += m.g_inv(k, d) * (g[j * n + d].derivative(i).value() + g[i * n + d].derivative(j).value() -
                                g[i * n + j].derivative(d).value());
        }
        m.christoffel(k, i, j) = 0.5 * v;
      }
  return m;
}

double scalar_laplacian(const Immersion& imm, const ChartField& field, const ChartPoint& p, double step) {
  const int n = imm.source_dim;
  auto shifted = [&](int a, int sa, int b, int sb, double h) {
    ChartPoint q = p;
    q.coords[a] += sa * h;
    q.coords[b] += sb * h;
    if (!in_domain(imm, q)) fail(ErrorKind::kOutOfDomain, "Laplacian stencil leaves the chart domain");
    return field(q);
  };
  const double f0 = field(p);
  auto derivatives = [&](double h, RealTensor& hess, std::vector<double>& grad) {
    hess = RealTensor(n, 2);
    grad.assign(n, 0.0);
    for (int a = 0; a < n; ++a) {
      const double fp = shifted(a, 1, a, 0, h), fm = shifted(a, -1, a, 0, h);
      grad[a] = (fp - fm) / (2.0 * h);
      hess(a, a) = (fp - 2.0 * f0 + fm) / (h * h);
      for (int b = a + 1; b < n; ++b) {
        const double v = (shifted(a, 1, b, 1, h) - shifted(a, 1, b, -1, h) - shifted(a, -1, b, 1, h) +
                          shifted(a, -1, b, -1, h)) /
                         (4.0 * h * h);
        hess(a, b) = hess(b, a) = v;
      }
    }
  };
  RealTensor h1, h2;
  std::vector<double> g1, g2;
  derivatives(step, h1, g1);
  derivatives(0.5 * step, h2, g2);
  const MetricData m = metric_data(imm, p);
  double lap = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double v = (4.0 * h2(a, b) - h1(a, b)) / 3.0;
      for (int c = 0; c < n; ++c) v -= m.christoffel(c, a, b) * (4.0 * g2[c] - g1[c]) / 3.0;
      lap += m.g_inv(a, b) * v;
    }
  return lap;
}

double scalar_laplacian(const Immersion& imm, const ModelFunction& field, const ChartPoint& p) {
  const int n = imm.source_dim;
  const Jet f = eval_model_function(imm, field, p, 2);
  const MetricData m = metric_data(imm, p);
  double lap = 0.0;
  std::vector<int> alpha(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      alpha.assign(n, 0);
      ++alpha[a];
      ++alpha[b];
      double v = f.partial(alpha);
      for (int c = 0; c < n; ++c) {
        alpha.assign(n, 0);
        alpha[c] = 1;
        v -= m.christoffel(c, a, b) * f.partial(alpha);
      }
      lap += m.g_inv(a, b) * v;
    }
  return lap;
}

double gradient_norm(const Immersion& imm, const ModelFunction& field, const ChartPoint& p) {
  const int n = imm.source_dim;
  const Jet f = eval_model_function(imm, field, p, 1);
  const MetricData m = metric_data(imm, p);
  std::vector<double> d(n);
  std::vector<int> alpha(n, 0);
  for (int a = 0; a < n; ++a) {
    alpha.assign(n, 0);
    alpha[a] = 1;
    d[a] = f.partial(alpha);
  }
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s += m.g_inv(a, b) * d[a] * d[b];
  return std::sqrt(std::max(0.0, s));
}

}  // namespace whitney
