#include "torvol/numlin.hpp"

#include "torvol/error.hpp"

#include <atomic>
#include <cstdio>
#include <cmath>
#include <limits>
#include <string>

namespace torvol {

namespace {

std::atomic<double> g_rank_tolerance{1e-9};
constexpr double kAbsoluteFloor = 1e-13;

void require_finite(const CMatrix& a, const char* what)
{
	if (!a.allFinite())
		throw Error(ErrorKind::numeric_input, std::string("non-finite entries in ") + what);
}

std::string sci(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3e", v);
	return buf;
}

} // namespace

double default_rank_tolerance()
{
	return g_rank_tolerance.load();
}

void set_default_rank_tolerance(double tol)
{
	if (!(tol > 0.0 && tol < 1.0))
		throw Error(ErrorKind::numeric_input, "rank tolerance must lie in (0, 1)");
	g_rank_tolerance.store(tol);
}

RankData rank_decompose(const CMatrix& a, double rel_tol)
{
	require_finite(a, "rank_decompose input");
	RankData out;
	const Eigen::Index rows = a.rows(), cols = a.cols();
	if (rows == 0 || cols == 0) {
		out.kernel_basis = CMatrix::Identity(cols, cols);
		out.image_basis = CMatrix(rows, 0);
		return out;
	}

	Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
	out.singular_values = svd.singularValues();
	const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
	// absolute floor so round-off-sized matrices count as zero
	out.tolerance_used = std::max(rel_tol * smax, kAbsoluteFloor);
	int r = 0;
	if (smax > 0.0)
		for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
			if (out.singular_values(i) > out.tolerance_used)
				++r;
	out.rank = r;
	out.image_basis = svd.matrixU().leftCols(r);
	out.kernel_basis = svd.matrixV().rightCols(cols - r);
	return out;
}

CMatrix min_norm_preimage(const CMatrix& a, const CMatrix& b, double residual_tol)
{
	require_finite(a, "min_norm_preimage matrix");
	require_finite(b, "min_norm_preimage rhs");
	if (a.rows() != b.rows())
		throw Error(ErrorKind::shape, "preimage rhs has wrong row count");
	if (b.cols() == 0 || a.cols() == 0)
		return CMatrix::Zero(a.cols(), b.cols());

	Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
	const auto& s = svd.singularValues();
	const double cut = std::max(default_rank_tolerance() * (s.size() ? s(0) : 0.0), kAbsoluteFloor);
	CMatrix x = CMatrix::Zero(a.cols(), b.cols());
	const CMatrix utb = svd.matrixU().adjoint() * b;
	for (Eigen::Index i = 0; i < s.size(); ++i)
		if (s(i) > cut && s(i) > 0.0)
			x += svd.matrixV().col(i) * (utb.row(i) / s(i));

	for (Eigen::Index j = 0; j < b.cols(); ++j) {
		const double bn = b.col(j).norm();
		const double res = (a * x.col(j) - b.col(j)).norm();
		if (res > residual_tol * std::max(bn, 1e-300) && res > 0.0)
			throw Error(ErrorKind::not_in_image,
				"column " + std::to_string(j) + " relative residual " + sci(res / bn));
	}
	return x;
}

double condition_number(const CMatrix& a)
{
	if (a.size() == 0)
		return 1.0;
	Eigen::JacobiSVD<CMatrix> svd(a);
	const auto& s = svd.singularValues();
	const double lo = s(s.size() - 1);
	if (lo == 0.0)
		return std::numeric_limits<double>::infinity();
	return s(0) / lo;
}

std::complex<double> transition_det(const CMatrix& new_basis, const CMatrix& old_basis,
	double max_condition)
{
	if (old_basis.rows() != old_basis.cols() || new_basis.rows() != old_basis.rows() ||
		new_basis.cols() != old_basis.cols())
		throw Error(ErrorKind::shape, "transition_det needs square bases of equal size");
	if (old_basis.size() == 0)
		return 1.0;
	require_finite(new_basis, "transition_det new basis");
	require_finite(old_basis, "transition_det old basis");
	const double cond = condition_number(old_basis);
	if (!(cond <= max_condition))
		throw Error(ErrorKind::ill_conditioned_basis,
			"old basis condition number " + std::to_string(cond));
	// det(old^{-1} new) = det(new) / det(old), via LU of each
	Eigen::PartialPivLU<CMatrix> lu_old(old_basis);
	Eigen::PartialPivLU<CMatrix> lu_new(new_basis);
	return lu_new.determinant() / lu_old.determinant();
}

std::complex<double> pfaffian(const CMatrix& w)
{
	using cplx = std::complex<double>;
	if (w.rows() != w.cols())
		throw Error(ErrorKind::shape, "Pfaffian of non-square matrix");
	const Eigen::Index n = w.rows();
	if (n % 2 != 0)
		throw Error(ErrorKind::shape, "Pfaffian of odd-dimensional matrix");
	if (n == 0)
		return 1.0;
	require_finite(w, "pfaffian input");
	const double scale = w.norm();
	if ((w + w.transpose()).norm() > 1e-8 * scale)
		throw Error(ErrorKind::symmetry, "matrix is not antisymmetric");

	CMatrix a = 0.5 * (w - w.transpose());
	cplx pf = 1.0;
	for (Eigen::Index k = 0; k + 1 < n; k += 2) {
		Eigen::Index kp;
		a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
		kp += k + 1;
		if (kp != k + 1) {
			a.row(k + 1).swap(a.row(kp));
			a.col(k + 1).swap(a.col(kp));
			pf = -pf;
		}
		if (a(k + 1, k) == cplx(0.0))
			return 0.0;
		pf *= a(k, k + 1);
		if (k + 2 < n) {
			const Eigen::Index m = n - k - 2;
			const CVector tau = a.row(k).tail(m).transpose() / a(k, k + 1);
			const CVector col = a.col(k + 1).tail(m);
			a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
		}
	}
	return pf;
}

Eigen::VectorXi greedy_completion(const CMatrix& fixed, const CMatrix& candidates)
{
	const Eigen::Index dim = candidates.rows();
	const Eigen::Index need = dim - fixed.cols();
	if (need < 0)
		throw Error(ErrorKind::basis_completion, "fixed vectors exceed the dimension");
	// orthonormal frame of the span chosen so far
	CMatrix q(dim, 0);
	auto absorb = [&](const CVector& v) {
		CVector r = v - q * (q.adjoint() * v);
		r -= q * (q.adjoint() * r);
		const double nr = r.norm();
		if (nr == 0.0)
			return 0.0;
		q.conservativeResize(Eigen::NoChange, q.cols() + 1);
		q.col(q.cols() - 1) = r / nr;
		return nr;
	};
	for (Eigen::Index j = 0; j < fixed.cols(); ++j)
		if (absorb(fixed.col(j)) <= 1e-12 * std::max(1.0, fixed.col(j).norm()))
			throw Error(ErrorKind::basis_completion, "fixed vectors are dependent");

	Eigen::VectorXi picked(need);
	std::vector<bool> used(candidates.cols(), false);
	for (Eigen::Index step = 0; step < need; ++step) {
		double best = -1.0;
		Eigen::Index best_j = -1;
		for (Eigen::Index j = 0; j < candidates.cols(); ++j) {
			if (used[j])
				continue;
			const CVector v = candidates.col(j);
			const double rel = (v - q * (q.adjoint() * v)).norm() / std::max(v.norm(), 1e-300);
			if (rel > best) {
				best = rel;
				best_j = j;
			}
		}
		if (best_j < 0 || best < 1e-10)
			throw Error(ErrorKind::basis_completion, "candidates do not complete the basis");
		used[best_j] = true;
		picked(step) = static_cast<int>(best_j);
		absorb(candidates.col(best_j));
	}
	return picked;
}

} // namespace torvol
