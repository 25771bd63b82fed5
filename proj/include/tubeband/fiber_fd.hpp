#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "tubeband/graph_model.hpp"
#include "tubeband/m_matrix.hpp"

namespace tubeband {

using SparseMatrixC = Eigen::SparseMatrix<cdouble>;

// Three-point discretization of the fiber operator on the unit cell. Unknowns: the
// vertex values first, then n interior points per edge. matrix = W^{-1/2} K W^{-1/2}
// with K the phased stiffness form and W the (half-cell at vertices) mass weights.
struct DiscretizedFiber {
  int n = 0;
  std::vector<double> h;  // grid step per edge
  double t = 0;
  std::optional<double> potential;
  std::size_t vertex_count = 0;
  SparseMatrixC matrix;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return matrix.rows(); }
  Eigen::Index interior_offset(std::size_t edge) const {
    return static_cast<Eigen::Index>(vertex_count + edge * static_cast<std::size_t>(n));
  }
};

DiscretizedFiber discretize_fiber(const FundamentalGraph& g, double t, int n);
DiscretizedFiber discretize_fiber(const ScaledGraph& g, double t, int n);
DiscretizedFiber discretize_g1(double A, double t, int n);

// Ascending eigenvalues of the discretized operator (dense Hermitian solver).
Eigen::VectorXd fiber_eigenvalues(const DiscretizedFiber& f);

// Analytic fiber spectrum of G1 below the cut: dispersion roots of both signs
// and the Dirichlet points (pi m)^2 with multiplicity two; ascending, at least `count` values.
std::vector<double> analytic_fiber_spectrum(double A, double t, int count);

struct DispersionCheck {
  std::vector<double> discrete;
  std::vector<double> analytic;
  double max_abs_deviation = 0;
  double max_rel_deviation = 0;  // |dz| / max(1, z)
};

DispersionCheck dispersion_check(double A, double t, int n, int kmax);

// W^{1/2}-weighted samples of the continuum solution operator gamma(z) (columns: unit boundary data).
Eigen::MatrixXcd gamma_samples(const FundamentalGraph& g, const DiscretizedFiber& f, cdouble z);

struct KreinCheck {
  double residual = 0;         // continuum gamma and analytic M against the discrete resolvents
  double second_form_gap = 0;  // discrete triple, rank term through Gamma_1 of the Dirichlet resolvent
  double first_form_gap = 0;   // discrete triple, rank term through gamma(conj z)^*
};

KreinCheck krein_check(double A, double t, cdouble z, int n);

// Largest singular value of a linear map given by its action and adjoint action
// (Lanczos on X^* X with full reorthogonalization).
double operator_norm(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply,
                     const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& apply_adjoint,
                     Eigen::Index dim, int max_iterations = 80, double tol = 1e-11);

// Sparse LU of (matrix - w I).
class ShiftedSolver {
 public:
  ShiftedSolver(const SparseMatrixC& matrix, cdouble w);
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& b) const;

 private:
  Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> lu_;
};

}  // namespace tubeband
