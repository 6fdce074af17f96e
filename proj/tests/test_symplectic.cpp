#include "support.hpp"

#include "torvol/error.hpp"

using namespace testing;

TEST_CASE("crossed homomorphism evaluation")
{
	const Representation& rep = block_rep(0);
	Rng rng = substream(8, 1);
	const CVector u = random_cmatrix(12, 1, rng);
	const CrossedHom h = CrossedHom::from_cochain(rep.images, u);
	CHECK(crossed_eval(h, GroupWord()).norm() == 0.0);
	CHECK((crossed_eval(h, GroupWord::generator(3)) - Vec3(u.segment<3>(6))).norm() < 1e-15);

	// u(gh) = u(g) + Ad(g) u(h) and u(x x^-1) = 0
	const GroupWord g = GroupWord::generator(1) * GroupWord::generator(2, -1);
	const GroupWord k = GroupWord::generator(4) * GroupWord::generator(3);
	const Vec3 lhs = crossed_eval(h, g * k);
	const Vec3 rhs = crossed_eval(h, g) + adjoint_matrix(rep.evaluate(g)) * crossed_eval(h, k);
	CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
	CHECK(crossed_eval(h, GroupWord::generator(2) * GroupWord::generator(2, -1)).norm() < 1e-12);

	const CohomologyData coh = cohomology(build_complex(rep));
	const CrossedHom z = CrossedHom::from_cochain(rep.images, coh.reps[1].col(0));
	CHECK(crossed_eval(z, rep.presentation.relators[0]).norm() < 1e-9);
}

TEST_CASE("cup pairing properties")
{
	const Representation& rep = block_rep(1);
	const TwistedComplex cx = build_complex(rep);
	const CohomologyData coh = cohomology(cx);
	const GroupWord& r = rep.presentation.relators[0];
	auto hom = [&](const CVector& v) { return CrossedHom::from_cochain(rep.images, v); };
	const CrossedHom u = hom(coh.reps[1].col(0)), v = hom(coh.reps[1].col(1));

	CHECK(std::abs(cup_pair(u, hom(CVector::Zero(12)), r)) == 0.0);
	const cplx uv = cup_pair(u, v, r), vu = cup_pair(v, u, r);
	CHECK(std::abs(uv + vu) < 1e-8 * std::max(1.0, std::abs(uv)));

	Rng rng = substream(8, 2);
	for (int t = 0; t < 5; ++t) {
		const CVector boundary = cx.delta[0] * random_cmatrix(3, 1, rng);
		CHECK(std::abs(cup_pair(u, hom(boundary), r)) < 1e-8 * std::max(1.0, boundary.norm()));
	}
	CHECK_THROWS_AS(cup_pair(u, hom(random_cmatrix(12, 1, rng)), r), Error);
}

TEST_CASE("gram matrix, pfaffian and nondegeneracy")
{
	for (const Representation* rep : {&block_rep(0), &block_rep(1), &block_rep(2), &genus4_rep()}) {
		const CohomologyData coh = cohomology(build_complex(*rep));
		const SymplecticGram g = gram(*rep, coh.reps[1]);
		const Eigen::Index n = coh.reps[1].cols();
		CHECK(g.w.rows() == n);
		CHECK(g.asymmetry < 1e-8);
		CHECK(g.cancellation >= 1.0 - 1e-12);
		CHECK(rank_decompose(g.w).rank == n);
		CHECK(rel(g.pf * g.pf, g.w.partialPivLu().determinant()) < 1e-8);
	}
	CHECK(gram(genus4_rep(), cohomology(build_complex(genus4_rep())).reps[1]).w.rows() == 18);
}

TEST_CASE("gram matrix transforms under basis change")
{
	const Representation& rep = block_rep(0);
	const TwistedComplex cx = build_complex(rep);
	const CohomologyData coh = cohomology(cx);
	const SymplecticGram g = gram(rep, coh.reps[1]);
	Rng rng = substream(8, 3);
	const CMatrix p = random_cmatrix(6, 6, rng);
	const SymplecticGram gp = gram(rep, coh.reps[1] * p);
	CHECK((gp.w - p.transpose() * g.w * p).norm() < 1e-8 * gp.w.norm());
	CHECK(rel(gp.pf, p.determinant() * g.pf) < 1e-8);

	// coboundary shifts leave W unchanged
	const CMatrix shift = cx.delta[0] * random_cmatrix(3, 6, rng);
	const SymplecticGram gs = gram(rep, coh.reps[1] + shift);
	CHECK((gs.w - g.w).norm() < 1e-8 * g.w.norm());
}

TEST_CASE("torsion equals symplectic volume")
{
	for (int i = 0; i < 3; ++i)
		CHECK(witten_check(block_rep(i)).rel_err < 1e-8);
	CHECK(witten_check(genus4_rep()).rel_err < 1e-7);

	const Representation& rep = block_rep(0);
	const CohomologyData coh = cohomology(build_complex(rep));
	Rng rng = substream(8, 4);
	const CMatrix p = random_cmatrix(6, 6, rng);
	const WittenReport a = witten_check(rep, coh.reps[1]);
	const WittenReport b = witten_check(rep, coh.reps[1] * p);
	CHECK(rel(b.torsion_abs, a.torsion_abs * std::abs(p.determinant())) < 1e-9);
	CHECK(rel(b.pf_abs, a.pf_abs * std::abs(p.determinant())) < 1e-9);
	CHECK(std::abs(b.rel_err - a.rel_err) < 1e-9);

	const Representation bordered = restrict_blocks(rep, 0, 1, 1);
	CHECK_THROWS_AS(gram(bordered, cohomology(build_complex(bordered)).reps[1]), Error);
}
