#include "tubeband/fiber_fd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tubeband/band_structure.hpp"
#include "tubeband/error.hpp"
#include "tubeband/homogenization.hpp"

namespace tubeband {

namespace {

const cdouble I(0.0, 1.0);

DiscretizedFiber discretize(const FundamentalGraph& g, double t, int n, double eps) {
  g.require_one_dimensional();
  if (n < 8) throw Error(ErrorCode::invalid_argument, "n must be >= 8 interior points per edge");
  DiscretizedFiber f;
  f.n = n;
  f.t = t;
  f.vertex_count = g.vertex_count();
  const std::size_t p = g.vertex_count();
  const Eigen::Index N = static_cast<Eigen::Index>(p + g.edges().size() * n);
  f.weights = Eigen::VectorXd::Zero(N);
  struct Entry {
    Eigen::Index r, c;
    cdouble v;
  };
  std::vector<Entry> stiffness;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const Edge& edge = g.edges()[e];
    const double l = edge.length * eps;
    const double h = l / (n + 1);
    f.h.push_back(h);
    const double B = g.edge_phase(e, t, eps, eps) / l;
    const cdouble ph = std::exp(I * B * h);
    const double c = edge.weight / h;
    const Eigen::Index a = static_cast<Eigen::Index>(g.index_of(edge.tail));
    const Eigen::Index b = static_cast<Eigen::Index>(g.index_of(edge.head));
    const Eigen::Index off = f.interior_offset(e);
    auto node = [&](int j) -> Eigen::Index { return j == 0 ? a : (j == n + 1 ? b : off + j - 1); };
    for (int j = 0; j <= n; ++j) {
      const Eigen::Index p0 = node(j), q0 = node(j + 1);
      stiffness.push_back({p0, p0, c});
      stiffness.push_back({q0, q0, c});
      stiffness.push_back({p0, q0, -c * ph});
      stiffness.push_back({q0, p0, -c * std::conj(ph)});
    }
    for (int j = 1; j <= n; ++j) f.weights(node(j)) += h;
    f.weights(a) += h / 2.0;
    f.weights(b) += h / 2.0;
  }
  const Eigen::VectorXd s = f.weights.cwiseSqrt().cwiseInverse();
  std::vector<Eigen::Triplet<cdouble>> trips;
  trips.reserve(stiffness.size());
  for (const auto& en : stiffness) trips.emplace_back(en.r, en.c, en.v * s(en.r) * s(en.c));
  f.matrix.resize(N, N);
  f.matrix.setFromTriplets(trips.begin(), trips.end());
  f.matrix.makeCompressed();
  return f;
}

Eigen::MatrixXcd gamma_samples_scaled(const FundamentalGraph& g, const DiscretizedFiber& f, cdouble z) {
  const std::size_t p = g.vertex_count();
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(f.size(), static_cast<Eigen::Index>(p));
  for (std::size_t v = 0; v < p; ++v) {
    Eigen::VectorXcd bv = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(p));
    bv(static_cast<Eigen::Index>(v)) = 1.0;
    G(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) = std::sqrt(f.weights(static_cast<Eigen::Index>(v)));
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const Edge& edge = g.edges()[e];
      const EdgeSolution s = solve_edge(bv(g.index_of(edge.tail)), bv(g.index_of(edge.head)), z,
                                        g.edge_phase(e, f.t), edge.length);
      const Eigen::Index off = f.interior_offset(e);
      for (int j = 1; j <= f.n; ++j)
        G(off + j - 1, static_cast<Eigen::Index>(v)) = s.value(j * f.h[e]) * std::sqrt(f.weights(off + j - 1));
    }
  }
  return G;
}

}  // namespace

DiscretizedFiber discretize_fiber(const FundamentalGraph& g, double t, int n) { return discretize(g, t, n, 1.0); }

DiscretizedFiber discretize_fiber(const ScaledGraph& g, double t, int n) {
  return discretize(g.base(), t, n, g.epsilon());
}

DiscretizedFiber discretize_g1(double A, double t, int n) {
  DiscretizedFiber f = discretize(build_g1(A), t, n, 1.0);
  f.potential = A;
  return f;
}

Eigen::VectorXd fiber_eigenvalues(const DiscretizedFiber& f) {
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(f.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::numerical, "eigenvalue solver failed");
  return es.eigenvalues();
}

std::vector<double> analytic_fiber_spectrum(double A, double t, int count) {
  if (count < 1) throw Error(ErrorCode::invalid_argument, "count must be >= 1");
  std::vector<double> vals;
  const int branches = count + 2;
  for (Sign sign : {Sign::plus, Sign::minus})
    for (int j = 0; j < branches; ++j)
      if (auto z = solve_dispersion(A, sign, j, t)) vals.push_back(*z);
  for (int m = 1; m <= branches; ++m) {
    const double d = std::pow(std::numbers::pi * m, 2);
    vals.push_back(d);
    vals.push_back(d);
  }
  std::sort(vals.begin(), vals.end());
  vals.resize(static_cast<std::size_t>(count));
  return vals;
}

DispersionCheck dispersion_check(double A, double t, int n, int kmax) {
  if (kmax < 1) throw Error(ErrorCode::invalid_argument, "kmax must be >= 1");
  const Eigen::VectorXd ev = fiber_eigenvalues(discretize_g1(A, t, n));
  if (ev.size() < kmax) throw Error(ErrorCode::invalid_argument, "kmax exceeds the discrete spectrum size");
  DispersionCheck r;
  r.analytic = analytic_fiber_spectrum(A, t, kmax);
  for (int i = 0; i < kmax; ++i) {
    r.discrete.push_back(ev(i));
    const double d = std::abs(ev(i) - r.analytic[i]);
    r.max_abs_deviation = std::max(r.max_abs_deviation, d);
    r.max_rel_deviation = std::max(r.max_rel_deviation, d / std::max(1.0, std::abs(r.analytic[i])));
  }
  return r;
}

Eigen::MatrixXcd gamma_samples(const FundamentalGraph& g, const DiscretizedFiber& f, cdouble z) {
  return gamma_samples_scaled(g, f, z);
}

ShiftedSolver::ShiftedSolver(const SparseMatrixC& matrix, cdouble w) {
  SparseMatrixC id(matrix.rows(), matrix.cols());
  id.setIdentity();
  SparseMatrixC shifted = matrix - w * id;
  shifted.makeCompressed();
  lu_.analyzePattern(shifted);
  lu_.factorize(shifted);
  if (lu_.info() != Eigen::Success)
    throw Error(ErrorCode::numerical, "shift lies on the discrete spectrum (factorization failed)");
}

Eigen::VectorXcd ShiftedSolver::solve(const Eigen::VectorXcd& b) const {
  return const_cast<Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>>&>(lu_).solve(b);
}

Eigen::MatrixXcd ShiftedSolver::solve(const Eigen::MatrixXcd& b) const {
  return const_cast<Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>>&>(lu_).solve(b);
}

double operator_norm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                     const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adjoint,
                     Eigen::Index dim, int max_iterations, double tol) {
  if (dim < 1) return 0.0;
  const int m = static_cast<int>(std::min<Eigen::Index>(max_iterations, dim));
  Eigen::MatrixXcd V(dim, m + 1);
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = cdouble(1.0 + 0.5 * std::sin(0.7 * i), 0.3 * std::cos(1.3 * i));
  V.col(0) = v.normalized();
  std::vector<double> alpha, beta;
  double prev = -1.0, theta = 0.0;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXcd w = apply_adjoint(apply(V.col(j)));
    alpha.push_back(V.col(j).dot(w).real());
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i) w -= V.col(i).dot(w) * V.col(i);
    const double b = w.norm();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(j + 1, j + 1);
    for (int i = 0; i <= j; ++i) {
      T(i, i) = alpha[i];
      if (i < j) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    theta = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(T, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    if (std::abs(theta - prev) <= tol * std::abs(theta) || b <= 1e-12 * std::abs(theta)) break;
    prev = theta;
    beta.push_back(b);
    V.col(j + 1) = w / b;
  }
  return std::sqrt(std::max(theta, 0.0));
}

KreinCheck krein_check(double A, double t, cdouble z, int n) {
  if (std::abs(z.imag()) < 1e-12) throw Error(ErrorCode::invalid_argument, "z must be off the real axis");
  const FundamentalGraph g = build_g1(A);
  const DiscretizedFiber f = discretize_g1(A, t, n);
  const SparseMatrixC& H = f.matrix;
  const Eigen::Index N = f.size();
  const Eigen::Index p = static_cast<Eigen::Index>(f.vertex_count);
  const Eigen::Index Ni = N - p;
  const cdouble zb = std::conj(z);

  const SparseMatrixC Hii = H.bottomRightCorner(Ni, Ni);
  const Eigen::MatrixXcd Hvi = Eigen::MatrixXcd(H.topRightCorner(p, Ni));
  const Eigen::MatrixXcd Hvv = Eigen::MatrixXcd(H.topLeftCorner(p, p));
  const Eigen::MatrixXcd Hiv = Hvi.adjoint();

  const ShiftedSolver K(H, z), Kb(H, zb), D(Hii, z), Db(Hii, zb);
  auto dirichlet = [&](const ShiftedSolver& s, const Eigen::VectorXcd& x) {
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(N);
    y.tail(Ni) = s.solve(Eigen::VectorXcd(x.tail(Ni)));
    return y;
  };

  KreinCheck out;
  {
    const Eigen::MatrixXcd G = gamma_samples(g, f, z), Gb = gamma_samples(g, f, zb);
    const Eigen::Matrix2cd Minv = closed_form_m_g1(z, t, A).entries.inverse();
    const Eigen::Matrix2cd Mbinv = closed_form_m_g1(zb, t, A).entries.inverse();
    out.residual = operator_norm(
        [&](const Eigen::VectorXcd& x) {
          return Eigen::VectorXcd(K.solve(x) - dirichlet(D, x) + G * (Minv * (Gb.adjoint() * x)));
        },
        [&](const Eigen::VectorXcd& x) {
          return Eigen::VectorXcd(Kb.solve(x) - dirichlet(Db, x) + Gb * (Mbinv * (G.adjoint() * x)));
        },
        N);
  }

  auto gamma_h = [&](const ShiftedSolver& s) {
    Eigen::MatrixXcd G(N, p);
    G.topRows(p).setIdentity();
    G.bottomRows(Ni) = -s.solve(Hiv);
    return G;
  };
  const Eigen::MatrixXcd Gz = gamma_h(D), Gzb = gamma_h(Db);
  const Eigen::MatrixXcd S = Hvv - z * Eigen::MatrixXcd::Identity(p, p) - Hvi * D.solve(Hiv);
  const Eigen::MatrixXcd Sinv = S.inverse();
  const Eigen::MatrixXcd SinvH = Sinv.adjoint();
  auto adjoint_form = [&](const Eigen::VectorXcd& x) {
    return Eigen::VectorXcd(Kb.solve(x) - dirichlet(Db, x) - Gzb * (SinvH * (Gz.adjoint() * x)));
  };
  out.first_form_gap = operator_norm(
      [&](const Eigen::VectorXcd& x) {
        return Eigen::VectorXcd(K.solve(x) - dirichlet(D, x) - Gz * (Sinv * (Gzb.adjoint() * x)));
      },
      adjoint_form, N);
  out.second_form_gap = operator_norm(
      [&](const Eigen::VectorXcd& x) {
        const Eigen::VectorXcd rd = dirichlet(D, x);
        const Eigen::VectorXcd trace = x.head(p) - Hvi * rd.tail(Ni);
        return Eigen::VectorXcd(K.solve(x) - rd - Gz * (Sinv * trace));
      },
      adjoint_form, N);
  return out;
}

}  // namespace tubeband
