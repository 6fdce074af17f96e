#pragma once

// Dense complex linear algebra shared by the cohomology, torsion and
// symplectic code: SVD rank decomposition, minimum-norm preimages,
// transition determinants and Pfaffians.

#include <Eigen/Dense>

#include <complex>

namespace torvol {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative singular-value threshold used for every rank decision.
double default_rank_tolerance();
void set_default_rank_tolerance(double tol);

struct RankData {
	int rank = 0;
	CMatrix kernel_basis; ///< orthonormal columns spanning Ker A
	CMatrix image_basis;  ///< orthonormal columns spanning Im A
	Eigen::VectorXd singular_values;
	double tolerance_used = 0.0; ///< absolute threshold rel_tol * sigma_max
};

/// rank = #{sigma_i > max(rel_tol * sigma_max, 1e-13)}.
RankData rank_decompose(const CMatrix& a, double rel_tol = default_rank_tolerance());

/// Minimum-norm x with A x = b, column by column. Throws not_in_image when
/// the relative residual exceeds `residual_tol`.
CMatrix min_norm_preimage(const CMatrix& a, const CMatrix& b, double residual_tol = 1e-8);

/// det(M) with old * M = new_basis.
std::complex<double> transition_det(const CMatrix& new_basis, const CMatrix& old_basis,
	double max_condition = 1e12);

/// 2-norm condition number (infinity for singular or empty-rank input).
double condition_number(const CMatrix& a);

/// Pfaffian by Parlett-Reid skew tridiagonalization with partial pivoting.
/// The input is checked for antisymmetry (||W + W^T|| < 1e-8 ||W||) and
/// antisymmetrized before elimination.
std::complex<double> pfaffian(const CMatrix& w);

/// Columns of `candidates` that complete `fixed` to a basis of the ambient
/// space, picked greedily by largest residual after projecting out the
/// span chosen so far.
Eigen::VectorXi greedy_completion(const CMatrix& fixed, const CMatrix& candidates);

} // namespace torvol
