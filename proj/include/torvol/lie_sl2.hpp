#pragma once

// The Lie algebra sl2(C) with its Killing form B(A, B) = 4 tr(AB), a fixed
// B-orthonormal basis, and the adjoint action of SL2(C).

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>

namespace torvol {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;

/// Element of sl2(C), stored as coordinates in the orthonormal basis.
struct LieVec {
	Vec3 coords = Vec3::Zero();

	LieVec() = default;
	explicit LieVec(const Vec3& c) : coords(c) {}

	/// Traceless 2x2 matrix form.
	Mat2 matrix() const;
	static LieVec from_matrix(const Mat2& m);

	LieVec operator+(const LieVec& o) const { return LieVec(coords + o.coords); }
	LieVec operator-(const LieVec& o) const { return LieVec(coords - o.coords); }
	LieVec operator-() const { return LieVec(-coords); }
	LieVec operator*(cplx s) const { return LieVec(coords * s); }
	LieVec& operator+=(const LieVec& o)
	{
		coords += o.coords;
		return *this;
	}
};

/// Element of SL2(C). Construction through `checked` enforces |det - 1| < 1e-10.
class SL2Matrix {
public:
	SL2Matrix() : m_(Mat2::Identity()) {}

	static SL2Matrix checked(const Mat2& m, double tol = 1e-10);
	/// Rescales by a square root of the determinant.
	static SL2Matrix normalized(const Mat2& m);
	static SL2Matrix identity() { return SL2Matrix(); }

	const Mat2& matrix() const { return m_; }
	cplx trace() const { return m_.trace(); }
	cplx det() const { return m_.determinant(); }
	/// Inverse via the adjugate (exact for unit determinant).
	SL2Matrix inverse() const;

	SL2Matrix operator*(const SL2Matrix& o) const { return SL2Matrix(m_ * o.m_); }

private:
	explicit SL2Matrix(const Mat2& m) : m_(m) {}
	Mat2 m_;
};

SL2Matrix commutator(const SL2Matrix& a, const SL2Matrix& b);

cplx killing_form(const LieVec& a, const LieVec& b);
cplx killing_form(const Mat2& a, const Mat2& b);

/// {H/(2 sqrt 2), (E+F)/(2 sqrt 2), (E-F)/(2 sqrt 2 i)}.
const std::array<Mat2, 3>& orthonormal_basis();

/// g v g^{-1}; throws invalid_representation if det g is not 1.
LieVec adjoint(const SL2Matrix& g, const LieVec& v);

/// Matrix of Ad_g in the orthonormal basis. Requires
/// |det g - 1| <= 1e-10 max(1, ||g||^2).
Mat3 adjoint_matrix(const SL2Matrix& g);

class GroupRingElement;

/// Sum of n_gamma Ad(rho(gamma)) over the terms of z.
Mat3 ad_ring(std::span<const SL2Matrix> images, const GroupRingElement& z);

} // namespace torvol
