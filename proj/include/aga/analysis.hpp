#pragma once

// Fixed-point classification, symmetric eigen-analysis, alignment
// diagnostics, and the welfare/equality metrics.

#include "aga/adjust.hpp"
#include "aga/game.hpp"
#include "aga/matrix.hpp"

namespace aga {

enum class PointClass { stable, unstable, indefinite, not_fixed };

std::string point_class_name(PointClass c);

struct FixedPointReport {
    Vec point;
    double residual = 0.0;  // ||xi_c|| or ||xi||, depending on use_collective
    Vec eigenvalues;        // ascending, of H_c or of S
    PointClass cls = PointClass::not_fixed;
};

struct ClassifyOptions {
    double tol = 1e-6;        // residual threshold for "fixed"
    double eig_slack = 1e-9;  // eigenvalue slack for >= 0
    double tol_det = 1e-8;    // invertibility: every |eigenvalue| must exceed this
};

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
Vec sym_eigvals(Matrix m);

// Classify w as a fixed point of the collective field (use_collective) or of
// the simultaneous gradient field. Definiteness of the non-symmetric game
// Hessian is judged through its symmetric part.
FixedPointReport classify_point(const GameDefinition& game, std::span<const double> w,
                                bool use_collective, const ClassifyOptions& opt = {});

double social_welfare(std::span<const double> rewards);

struct EqualityResult {
    double gini = 0.0;
    double equality = 0.0;  // 1 - gini
};

// Gini over the ascending-sorted reward vector; requires a nonzero mean.
EqualityResult equality(std::span<const double> rewards);

double angle(std::span<const double> a, std::span<const double> b);

// Sign of the infinitesimal alignment between the adjusted gradient and
// grad Hc, with the epsilon tie-break.
int alignment_sign(const GameDefinition& game, std::span<const double> w,
                   double epsilon = 1e-10);

}  // namespace aga
