#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "tubeband/graph_model.hpp"

namespace tubeband {

using cdouble = std::complex<double>;

// Principal branch (cut on the negative real axis); Im >= 0 off the cut.
cdouble principal_sqrt(cdouble z);

struct MMatrix {
  cdouble z;
  double t = 0.0;
  std::optional<double> potential;  // set for G1 evaluations
  Eigen::MatrixXcd entries;
};

struct MEigenSystem {
  cdouble lambda_plus;
  cdouble lambda_minus;
  Eigen::Vector2d nu_plus;
  Eigen::Vector2d nu_minus;
};

MMatrix assemble_m(const FundamentalGraph& g, cdouble z, double t);

// Scaled-cell convention: lengths eps*l, lattice period eps, stored potentials
// taken as physical, and the result multiplied by 1/eps so that
// assemble_m(rescale(build_g1(A/eps), eps), z/eps^2, t/eps) = assemble_m(build_g1(A), z, t) / eps^2.
MMatrix assemble_m(const ScaledGraph& g, cdouble z, double t);

// (2 sqrt z / sin sqrt z) [[-2cos sqrt z + cos(t+A), 1], [1, -2cos sqrt z + cos(t-A)]]
MMatrix closed_form_m_g1(cdouble z, double t, double A);

// Eigenvalues lambda_{+-} = (2 sqrt z / sin sqrt z)(-2cos sqrt z + cosA cos t +- sqrt(1 + sin^2A sin^2t))
// with eigenvectors nu_+ = (sqrt(1-q), sqrt(1+q))/sqrt2, nu_- = (sqrt(1+q), -sqrt(1-q))/sqrt2,
// q = sinA sin t / sqrt(1 + sin^2A sin^2t). M nu_{+-} = lambda_{+-} nu_{+-}.
MEigenSystem m_eigensystem(cdouble z, double t, double A);

// Unit vectors for the two eigen-directions; independent of z.
Eigen::Vector2d nu_plus(double t, double A);
Eigen::Vector2d nu_minus(double t, double A);

}  // namespace tubeband
