#pragma once

// Independent finite-difference oracle for the circle ground state:
// 5-point Laplacian on a Dirichlet box with the delta potential mollified to
// a strip, smallest eigenvalue by (shifted) inverse iteration. The inner
// solves use MINRES preconditioned by the exact DST diagonalization of the
// shifted Laplacian, so the preconditioned operator is a low-rank
// perturbation of the identity.
namespace lqw_test {

struct FdOracleResult {
  double lambda0 = 0.0;
  int outer_iterations = 0;
  int inner_iterations = 0;  // total Krylov steps across solves
};

// Ground state of -Laplace - (alpha/w) * 1{ | |x| - R | < w/2 } on
// [-half_box, half_box]^2 with Dirichlet walls, grid spacing h, strip width
// w = 2h.
FdOracleResult fd_circle_ground_state(double alpha, double radius,
                                      double half_box, double h);

}  // namespace lqw_test
