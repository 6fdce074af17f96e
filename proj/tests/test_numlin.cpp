#include "support.hpp"

#include "torvol/error.hpp"

using namespace testing;

TEST_CASE("rank decomposition basics")
{
	const RankData z = rank_decompose(CMatrix::Zero(3, 3));
	CHECK(z.rank == 0);
	CHECK(z.kernel_basis.cols() == 3);

	CMatrix d = CMatrix::Zero(3, 3);
	d(0, 0) = 1.0;
	d(1, 1) = 1e-15;
	CHECK(rank_decompose(d, 1e-9).rank == 1);

	Rng rng = substream(3, 1);
	const CMatrix a = random_cmatrix(7, 3, rng) * random_cmatrix(3, 5, rng);
	const RankData rd = rank_decompose(a);
	CHECK(rd.rank == 3);
	CHECK(rd.rank + rd.kernel_basis.cols() == 5);
	CHECK((a * rd.kernel_basis).norm() < 1e-9 * rd.singular_values(0) * std::sqrt(5.0));
	CHECK((rd.image_basis.adjoint() * rd.image_basis - CMatrix::Identity(3, 3)).norm() < 1e-12);
	// image basis spans the columns of a
	const CMatrix proj = a - rd.image_basis * (rd.image_basis.adjoint() * a);
	CHECK(proj.norm() < 1e-9 * a.norm());

	CMatrix bad = a;
	bad(0, 0) = cplx(std::nan(""), 0.0);
	CHECK_THROWS_AS(rank_decompose(bad), Error);
}

TEST_CASE("minimum norm preimages")
{
	const CMatrix id = CMatrix::Identity(3, 3);
	Rng rng = substream(3, 2);
	const CMatrix b = random_cmatrix(3, 2, rng);
	CHECK((min_norm_preimage(id, b) - b).norm() < 1e-14);

	CMatrix p = CMatrix::Zero(2, 2);
	p(0, 0) = 1.0;
	CVector e1 = CVector::Zero(2);
	e1(0) = 1.0;
	const CMatrix x = min_norm_preimage(p, e1);
	CHECK((x - e1).norm() < 1e-14);

	const CMatrix a = random_cmatrix(6, 4, rng) * random_cmatrix(4, 5, rng);
	const CMatrix rhs = a * random_cmatrix(5, 3, rng);
	const CMatrix sol = min_norm_preimage(a, rhs);
	CHECK((a * sol - rhs).norm() < 1e-10 * rhs.norm());
	// minimum norm: orthogonal to the kernel
	CHECK((rank_decompose(a).kernel_basis.adjoint() * sol).norm() < 1e-10 * sol.norm());

	CHECK_THROWS_AS(min_norm_preimage(p, CMatrix(CVector::Ones(2))), Error);
}

TEST_CASE("transition determinants")
{
	Rng rng = substream(3, 3);
	const CMatrix e = random_cmatrix(3, 3, rng);
	CHECK(std::abs(transition_det(e, e) - 1.0) < 1e-12);
	CHECK(std::abs(transition_det(2.0 * e, e) - 8.0) < 1e-11);
	const CMatrix p = random_cmatrix(3, 3, rng);
	const cplx detp = p.determinant();
	CHECK(rel(transition_det(e * p, e), detp) < 1e-10);

	const CMatrix f = random_cmatrix(4, 4, rng), g = random_cmatrix(4, 4, rng), h = random_cmatrix(4, 4, rng);
	CHECK(rel(transition_det(f, g) * transition_det(g, h), transition_det(f, h)) < 1e-9);

	CMatrix singular = random_cmatrix(3, 3, rng);
	singular.col(2) = singular.col(0);
	CHECK_THROWS_AS(transition_det(e, singular), Error);
}

TEST_CASE("pfaffian small cases")
{
	const cplx a(1.5, -0.5), b(0.25, 2.0);
	CMatrix w2(2, 2);
	w2 << 0.0, a, -a, 0.0;
	CHECK(std::abs(pfaffian(w2) - a) < 1e-15);

	CMatrix w4 = CMatrix::Zero(4, 4);
	w4(0, 1) = a, w4(1, 0) = -a, w4(2, 3) = b, w4(3, 2) = -b;
	CHECK(std::abs(pfaffian(w4) - a * b) < 1e-14);

	// needs a pivot swap: zero in the first superdiagonal slot
	CMatrix w4p = CMatrix::Zero(4, 4);
	w4p(0, 2) = a, w4p(2, 0) = -a, w4p(1, 3) = b, w4p(3, 1) = -b;
	CHECK(std::abs(pfaffian(w4p) - pfaffian_expansion(w4p)) < 1e-14);

	CHECK(std::abs(pfaffian(CMatrix(0, 0)) - 1.0) == 0.0);
	CHECK_THROWS_AS(pfaffian(CMatrix::Zero(3, 3)), Error);
	CHECK_THROWS_AS(pfaffian(CMatrix::Identity(2, 2)), Error);
}

TEST_CASE("pfaffian against expansion and determinant oracles")
{
	Rng rng = substream(3, 4);
	for (int n : {2, 4, 6, 8}) {
		const CMatrix w = random_antisymmetric(n, rng);
		const cplx pf = pfaffian(w);
		CHECK(rel(pf, pfaffian_expansion(w)) < 1e-10);
		CHECK(rel(pf * pf, w.determinant()) < 1e-8);
	}
	for (int n : {10, 18, 30}) {
		const CMatrix w = random_antisymmetric(n, rng);
		const cplx pf = pfaffian(w);
		CHECK(rel(pf * pf, w.partialPivLu().determinant()) < 1e-8);
		const CMatrix p = random_cmatrix(n, n, rng);
		const cplx lhs = pfaffian(p.transpose() * w * p);
		CHECK(rel(lhs, p.partialPivLu().determinant() * pf) < 1e-8);
	}
}

TEST_CASE("greedy completion")
{
	const CMatrix id = CMatrix::Identity(3, 3);
	CMatrix fixed(3, 1);
	fixed << 1.0, 1e-3, 0.0;
	const Eigen::VectorXi picked = greedy_completion(fixed, id);
	REQUIRE(picked.size() == 2);
	CMatrix full(3, 3);
	full << fixed, id.col(picked(0)), id.col(picked(1));
	CHECK(condition_number(full) < 10.0);
	CHECK(picked(0) != 0);
	CHECK(picked(1) != 0);
}
