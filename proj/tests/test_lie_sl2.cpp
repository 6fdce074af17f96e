#include "support.hpp"

#include "torvol/error.hpp"

using namespace testing;

namespace {

const Mat2 E = mat2(0, 1, 0, 0);
const Mat2 F = mat2(0, 0, 1, 0);
const Mat2 H = mat2(1, 0, 0, -1);

} // namespace

TEST_CASE("killing form on E, F")
{
	CHECK(std::abs(killing_form(E, F) - 4.0) < 1e-15);
	CHECK(std::abs(killing_form(E, E)) < 1e-15);
	CHECK(std::abs(killing_form(H, Mat2::Zero())) < 1e-15);
	// Tr(H^2) = 2
	CHECK(std::abs(killing_form(H, H) - 8.0) < 1e-15);
}

TEST_CASE("orthonormal basis")
{
	const auto& a = orthonormal_basis();
	for (int i = 0; i < 3; ++i) {
		CHECK(std::abs(a[i].trace()) < 1e-15);
		for (int j = 0; j < 3; ++j)
			CHECK(std::abs(killing_form(a[i], a[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
	}
	CHECK(std::abs(killing_form(a[1], a[2])) < 1e-15);
}

TEST_CASE("coordinate and matrix forms agree")
{
	Rng rng = substream(1, 1);
	for (int t = 0; t < 20; ++t) {
		const LieVec v = random_lie(rng);
		const Mat2 m = v.matrix();
		CHECK(std::abs(m.trace()) < 1e-12);
		CHECK((LieVec::from_matrix(m).coords - v.coords).norm() < 1e-12);
		const LieVec w = random_lie(rng);
		CHECK(std::abs(killing_form(v, w) - killing_form(v.matrix(), w.matrix())) < 1e-12);
		CHECK(std::abs(killing_form(v, w) - killing_form(w, v)) < 1e-12);
	}
}

TEST_CASE("adjoint action")
{
	Rng rng = substream(1, 2);
	const LieVec e = LieVec::from_matrix(E);
	const cplx lambda(1.3, -0.4);
	const SL2Matrix d = SL2Matrix::checked(mat2(lambda, 0, 0, 1.0 / lambda));
	CHECK((adjoint(d, e).matrix() - lambda * lambda * E).norm() < 1e-12);
	const LieVec v = random_lie(rng);
	CHECK((adjoint(SL2Matrix::identity(), v).coords - v.coords).norm() < 1e-15);
	const SL2Matrix minus = SL2Matrix::checked(-Mat2::Identity());
	CHECK((adjoint(minus, v).coords - v.coords).norm() < 1e-14);

	for (int t = 0; t < 20; ++t) {
		const SL2Matrix g = random_sl2(rng), h = random_sl2(rng);
		const LieVec a = random_lie(rng), b = random_lie(rng);
		const cplx bab = killing_form(a, b);
		CHECK(std::abs(killing_form(adjoint(g, a), adjoint(g, b)) - bab) < 1e-10 * (1 + std::abs(bab)));
		const Mat3 lhs = adjoint_matrix(g * h);
		const Mat3 rhs = adjoint_matrix(g) * adjoint_matrix(h);
		CHECK((lhs - rhs).norm() < 1e-10 * lhs.norm());
		// matrix of Ad agrees with conjugation
		CHECK((adjoint_matrix(g) * a.coords - adjoint(g, a).coords).norm() < 1e-10 * (1 + a.coords.norm()));
	}
}

TEST_CASE("adjoint rejects non-unit determinant")
{
	CHECK_THROWS_AS(SL2Matrix::checked(mat2(2, 0, 0, 1)), Error);
	const SL2Matrix g = SL2Matrix::normalized(mat2(2, 1, 0, 3));
	CHECK(std::abs(g.det() - 1.0) < 1e-12);
}

TEST_CASE("ad_ring on simple elements")
{
	Rng rng = substream(1, 3);
	const std::vector<SL2Matrix> images{random_sl2(rng), random_sl2(rng)};
	CHECK((ad_ring(images, GroupRingElement::one()) - Mat3::Identity()).norm() < 1e-15);
	CHECK(ad_ring(images, GroupRingElement::one() - GroupRingElement::one()).norm() == 0.0);

	const GroupWord a = GroupWord::generator(1), b = GroupWord::generator(2);
	const GroupRingElement d = fox_derivative(commutator(a, b), 1);
	const SL2Matrix aba = images[0] * images[1] * images[0].inverse();
	const Mat3 expected = Mat3::Identity() - adjoint_matrix(aba);
	CHECK((ad_ring(images, d) - expected).norm() < 1e-10);

	const GroupRingElement bad = GroupRingElement::of(GroupWord::generator(3));
	CHECK_THROWS_AS(ad_ring(images, bad), Error);
}
