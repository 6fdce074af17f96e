#include "torvol/lie_sl2.hpp"

#include "torvol/error.hpp"
#include "torvol/words.hpp"

#include <cmath>
#include <string>

namespace torvol {

const char* to_string(ErrorKind kind)
{
	switch (kind) {
	case ErrorKind::invalid_representation: return "invalid-representation";
	case ErrorKind::malformed_word: return "malformed-word";
	case ErrorKind::out_of_scope: return "out-of-scope";
	case ErrorKind::numeric_input: return "numeric-input";
	case ErrorKind::not_in_image: return "not-in-image";
	case ErrorKind::ill_conditioned_basis: return "ill-conditioned-basis";
	case ErrorKind::shape: return "shape";
	case ErrorKind::symmetry: return "symmetry";
	case ErrorKind::sampling_failure: return "sampling-failure";
	case ErrorKind::solver_failure: return "solver-failure";
	case ErrorKind::condition_c_undefined: return "condition-C-undefined";
	case ErrorKind::tolerance_failure: return "tolerance-failure";
	case ErrorKind::not_a_cocycle: return "not-a-cocycle";
	case ErrorKind::degenerate_basis: return "degenerate-basis";
	case ErrorKind::not_exact: return "not-exact";
	case ErrorKind::cup_formula: return "cup-formula";
	case ErrorKind::snake_construction: return "snake-construction";
	case ErrorKind::decomposition_inconsistency: return "decomposition-inconsistency";
	case ErrorKind::basis_completion: return "basis-completion";
	case ErrorKind::io: return "io";
	}
	return "unknown";
}

namespace {

std::array<Mat2, 3> make_basis()
{
	const cplx i(0.0, 1.0);
	Mat2 h, e, f;
	h << 1, 0, 0, -1;
	e << 0, 1, 0, 0;
	f << 0, 0, 1, 0;
	const double s = 2.0 * std::sqrt(2.0);
	return {h / s, (e + f) / s, (e - f) / (s * i)};
}

} // namespace

const std::array<Mat2, 3>& orthonormal_basis()
{
	static const std::array<Mat2, 3> basis = make_basis();
	return basis;
}

Mat2 LieVec::matrix() const
{
	const auto& a = orthonormal_basis();
	return coords(0) * a[0] + coords(1) * a[1] + coords(2) * a[2];
}

LieVec LieVec::from_matrix(const Mat2& m)
{
	// orthonormality: coordinate k is B(a_k, m)
	const auto& a = orthonormal_basis();
	Vec3 c;
	for (int k = 0; k < 3; ++k)
		c(k) = killing_form(a[k], m);
	return LieVec(c);
}

SL2Matrix SL2Matrix::checked(const Mat2& m, double tol)
{
	if (!m.allFinite())
		throw Error(ErrorKind::numeric_input, "non-finite SL2 entry");
	const cplx d = m.determinant();
	if (std::abs(d - 1.0) > tol)
		throw Error(ErrorKind::invalid_representation,
			"determinant deviates from 1 by " + std::to_string(std::abs(d - 1.0)));
	return SL2Matrix(m);
}

SL2Matrix SL2Matrix::normalized(const Mat2& m)
{
	const cplx d = m.determinant();
	if (std::abs(d) == 0.0 || !m.allFinite())
		throw Error(ErrorKind::invalid_representation, "cannot normalize singular matrix");
	return SL2Matrix(m / std::sqrt(d));
}

SL2Matrix SL2Matrix::inverse() const
{
	Mat2 adj;
	adj << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
	return SL2Matrix(adj / m_.determinant());
}

SL2Matrix commutator(const SL2Matrix& a, const SL2Matrix& b)
{
	return a * b * a.inverse() * b.inverse();
}

cplx killing_form(const Mat2& a, const Mat2& b)
{
	return 4.0 * (a * b).trace();
}

cplx killing_form(const LieVec& a, const LieVec& b)
{
	// the basis is B-orthonormal, so B is the bilinear dot product of coordinates
	return (a.coords.transpose() * b.coords)(0, 0);
}

LieVec adjoint(const SL2Matrix& g, const LieVec& v)
{
	return LieVec(adjoint_matrix(g) * v.coords);
}

Mat3 adjoint_matrix(const SL2Matrix& g)
{
	// round-off in long products grows like ||g||^2
	if (std::abs(g.det() - 1.0) > 1e-10 * std::max(1.0, g.matrix().squaredNorm()))
		throw Error(ErrorKind::invalid_representation, "adjoint of non-unimodular matrix");
	const auto& a = orthonormal_basis();
	const Mat2 gi = g.inverse().matrix();
	Mat3 out;
	for (int j = 0; j < 3; ++j) {
		const Mat2 conj = g.matrix() * a[j] * gi;
		for (int k = 0; k < 3; ++k)
			out(k, j) = killing_form(a[k], conj);
	}
	return out;
}

Mat3 ad_ring(std::span<const SL2Matrix> images, const GroupRingElement& z)
{
	Mat3 out = Mat3::Zero();
	for (const auto& [word, coeff] : z.terms())
		out += static_cast<double>(coeff) * adjoint_matrix(evaluate_word(images, word));
	return out;
}

} // namespace torvol
