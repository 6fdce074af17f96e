#include "torvol/cochain.hpp"

#include "torvol/error.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <string>

namespace torvol {

CMatrix coboundary0(std::span<const SL2Matrix> images)
{
	const Eigen::Index n = static_cast<Eigen::Index>(images.size());
	CMatrix d(3 * n, 3);
	for (Eigen::Index i = 0; i < n; ++i)
		d.block(3 * i, 0, 3, 3) = adjoint_matrix(images[i]) - Mat3::Identity();
	return d;
}

CMatrix coboundary1(std::span<const SL2Matrix> images, const GroupWord& relator)
{
	const int n = static_cast<int>(images.size());
	CMatrix d(3, 3 * n);
	for (int i = 0; i < n; ++i)
		d.block(0, 3 * i, 3, 3) = ad_ring(images, fox_derivative(relator, i + 1));
	return d;
}

TwistedComplex build_complex(const Representation& rep)
{
	const auto& pres = rep.presentation;
	if (static_cast<int>(rep.images.size()) != pres.generator_count)
		throw Error(ErrorKind::invalid_representation, "representation does not match presentation");
	const double res = rep.relator_residual();
	if (!(res <= 1e-8))
		throw Error(ErrorKind::invalid_representation,
			"relator residual too large: " + std::to_string(res));

	TwistedComplex cx;
	const int n = pres.generator_count;
	cx.dims = {3, 3 * n};
	cx.delta.push_back(coboundary0(rep.images));
	if (!pres.relators.empty()) {
		if (pres.relators.size() != 1)
			throw Error(ErrorKind::out_of_scope, "only one-relator presentations are supported");
		cx.dims.push_back(3);
		cx.delta.push_back(coboundary1(rep.images, pres.relators.front()));
	}
	return cx;
}

TwistedComplex circle_complex(const SL2Matrix& s)
{
	TwistedComplex cx;
	cx.dims = {3, 3};
	cx.delta.push_back(CMatrix(adjoint_matrix(s) - Mat3::Identity()));
	return cx;
}

TwistedComplex disk_complex()
{
	TwistedComplex cx;
	cx.dims = {3};
	return cx;
}

CohomologyData cohomology(const TwistedComplex& cx, double rel_tol)
{
	CohomologyData out;
	out.complex = cx;
	out.tolerance = rel_tol;
	const int top = cx.top_degree();
	for (int p = 0; p <= top; ++p) {
		const int d = cx.dims[p];
		CMatrix cocycles = p < top ? rank_decompose(cx.delta[p], rel_tol).kernel_basis
		                           : CMatrix(CMatrix::Identity(d, d));
		CMatrix image = p > 0 ? rank_decompose(cx.delta[p - 1], rel_tol).image_basis : CMatrix(d, 0);
		const int h = static_cast<int>(cocycles.cols() - image.cols());
		if (h < 0)
			throw Error(ErrorKind::tolerance_failure,
				"negative cohomology dimension in degree " + std::to_string(p));
		// cocycles are orthonormal, so the harmonic part has singular values near 0 or 1
		const CMatrix harmonic = cocycles - image * (image.adjoint() * cocycles);
		CMatrix reps(d, 0);
		if (h > 0) {
			Eigen::JacobiSVD<CMatrix> svd(harmonic, Eigen::ComputeThinU);
			const auto& s = svd.singularValues();
			int r = 0;
			while (r < s.size() && s(r) > 1e-6)
				++r;
			if (r != h)
				throw Error(ErrorKind::tolerance_failure,
					"inconsistent ranks in degree " + std::to_string(p));
			reps = svd.matrixU().leftCols(h);
		} else if (harmonic.size() > 0 && harmonic.norm() > 1e-6) {
			throw Error(ErrorKind::tolerance_failure,
				"inconsistent ranks in degree " + std::to_string(p));
		}
		out.dims.push_back(h);
		out.reps.push_back(reps);
		out.coboundaries.push_back(image);
	}
	return out;
}

namespace {

void require_cocycles(const CohomologyData& coh, int degree, const CMatrix& z)
{
	const auto& cx = coh.complex;
	if (degree >= cx.top_degree())
		return;
	const CMatrix& d = cx.delta[degree];
	const double scale = std::max(1.0, d.norm());
	for (Eigen::Index j = 0; j < z.cols(); ++j) {
		const double r = (d * z.col(j)).norm();
		if (r > 1e-8 * scale * std::max(1.0, z.col(j).norm()))
			throw Error(ErrorKind::not_a_cocycle,
				"input is not a cocycle (residual " + std::to_string(r) + ")");
	}
}

} // namespace

CMatrix class_coordinates(const CohomologyData& coh, int degree, const CMatrix& z,
	const CMatrix& basis)
{
	if (degree < 0 || degree > coh.complex.top_degree())
		throw Error(ErrorKind::shape, "degree out of range");
	const int d = coh.complex.dims[degree];
	if (z.rows() != d || basis.rows() != d || basis.cols() != coh.dims[degree])
		throw Error(ErrorKind::shape, "class_coordinates: shape mismatch");
	require_cocycles(coh, degree, z);

	const CMatrix& image = coh.coboundaries[degree];
	CMatrix frame(d, basis.cols() + image.cols());
	frame << basis, image;
	const Eigen::ColPivHouseholderQR<CMatrix> qr(frame);
	const CMatrix sol = qr.solve(z);
	for (Eigen::Index j = 0; j < z.cols(); ++j) {
		const double r = (frame * sol.col(j) - z.col(j)).norm();
		if (r > 1e-8 * std::max(1.0, z.col(j).norm()))
			throw Error(ErrorKind::not_a_cocycle,
				"cocycle outside span of basis and coboundaries (residual " + std::to_string(r) + ")");
	}
	return sol.topRows(basis.cols());
}

CMatrix class_coordinates(const CohomologyData& coh, int degree, const CMatrix& z)
{
	return class_coordinates(coh, degree, z, coh.reps.at(degree));
}

double chain_defect(const TwistedComplex& cx)
{
	double worst = 0.0;
	for (std::size_t p = 0; p + 1 < cx.delta.size(); ++p) {
		const double scale = cx.delta[p + 1].norm() * cx.delta[p].norm();
		if (scale > 0.0)
			worst = std::max(worst, (cx.delta[p + 1] * cx.delta[p]).norm() / scale);
	}
	return worst;
}

} // namespace torvol
