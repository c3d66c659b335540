#pragma once

namespace qsg {

// Numerical tolerances shared by the spectral machinery.
//
//   rank_tol  relative singular-value cutoff for rank decisions
//   quad_tol  absolute per-entry tolerance for adaptive quadrature
//   eig_tol   eigenvalue matching / clustering tolerance
//   ode_tol   step-accuracy target of the evolution-family integrator
struct ToleranceContext {
    double rank_tol = 1e-8;
    double quad_tol = 1e-10;
    double eig_tol = 1e-6;
    double ode_tol = 1e-8;

    // Throws DomainError unless every tolerance is strictly positive.
    void validate() const;
};

}  // namespace qsg
