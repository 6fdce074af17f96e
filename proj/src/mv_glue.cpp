#include "torvol/mv_glue.hpp"

#include "torvol/error.hpp"

#include <cmath>
#include <string>

namespace torvol {

Decomposition disk_cap(int genus)
{
	Decomposition d;
	d.kind = DecompositionKind::disk_cap;
	d.ambient = surface_presentation(genus, 0);
	d.piece1 = surface_presentation(genus, 1);
	d.circle1 = surface_word(genus);
	return d;
}

Decomposition separating_split(int genus, int first_genus)
{
	if (first_genus < 1 || first_genus >= genus)
		throw Error(ErrorKind::out_of_scope, "separating split needs 1 <= first genus < genus");
	Decomposition d;
	d.kind = DecompositionKind::separating;
	d.ambient = surface_presentation(genus, 0);
	d.piece1 = surface_presentation(first_genus, 1);
	d.piece2 = surface_presentation(genus - first_genus, 1);
	d.offset1 = 0;
	d.offset2 = 2 * first_genus;
	d.circle1 = surface_word(first_genus);
	// the relator is S1 * (rest), so S1 = (rest)^{-1}
	d.circle2 = surface_word(genus - first_genus).inverse();
	return d;
}

namespace {

std::vector<SL2Matrix> slice(const std::vector<SL2Matrix>& v, int offset, int count)
{
	if (offset < 0 || offset + count > static_cast<int>(v.size()))
		throw Error(ErrorKind::decomposition_inconsistency, "piece generators outside the ambient surface");
	return {v.begin() + offset, v.begin() + offset + count};
}

CMatrix random_square(Eigen::Index n, Rng& rng)
{
	std::normal_distribution<double> normal(0.0, 1.0);
	CMatrix m(n, n);
	for (Eigen::Index j = 0; j < n; ++j)
		for (Eigen::Index i = 0; i < n; ++i) {
			const double re = normal(rng);
			const double im = normal(rng);
			m(i, j) = cplx(re, im);
		}
	return m;
}

int piece_dim(const std::optional<CohomologyData>& coh)
{
	return coh ? coh->dims[1] : 0;
}

double rel_diff(double a, double b)
{
	return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

} // namespace

MVContext prepare_mv(const Decomposition& dec, const Representation& rep)
{
	if (!(rep.presentation == dec.ambient))
		throw Error(ErrorKind::decomposition_inconsistency, "representation is not on the ambient surface");
	MVContext ctx{dec, rep, {}, std::nullopt, {}, {}, std::nullopt, {}, {}};

	auto make_piece = [&](const Presentation& p, int offset) {
		return make_representation(p, slice(rep.images, offset, p.generator_count), rep.seed, "piece");
	};
	ctx.rep_x1 = make_piece(dec.piece1, dec.offset1);
	const double s1 = (ctx.rep_x1.evaluate(dec.circle1).matrix() - Mat2::Identity()).norm();
	if (!(s1 <= 1e-8))
		throw Error(ErrorKind::condition_c_undefined,
			"cut circle does not map to I (residual " + std::to_string(s1) + ")");
	if (dec.piece2) {
		ctx.rep_x2 = make_piece(*dec.piece2, dec.offset2);
		const double s2 = (ctx.rep_x2->evaluate(dec.circle2).matrix() - Mat2::Identity()).norm();
		if (!(s2 <= 1e-8))
			throw Error(ErrorKind::condition_c_undefined, "cut circle does not map to I in X2");
	}

	ctx.coh_x = cohomology(build_complex(rep));
	ctx.coh_x1 = cohomology(build_complex(ctx.rep_x1));
	if (ctx.rep_x2)
		ctx.coh_x2 = cohomology(build_complex(*ctx.rep_x2));
	if (ctx.coh_x.dims[0] != 0 || ctx.coh_x.dims[2] != 0 || ctx.coh_x1.dims[0] != 0 ||
		(ctx.coh_x2 && ctx.coh_x2->dims[0] != 0))
		throw Error(ErrorKind::decomposition_inconsistency, "a piece of the decomposition is not good");
	ctx.cx_y = circle_complex(SL2Matrix::identity());
	ctx.cx_d = disk_complex();
	return ctx;
}

MVBases geometric_bases(const MVContext& ctx)
{
	MVBases b;
	b.h1_x = ctx.coh_x.reps[1];
	b.h1_x1 = ctx.coh_x1.reps[1];
	b.h1_x2 = ctx.coh_x2 ? ctx.coh_x2->reps[1] : CMatrix(0, 0);
	return b;
}

MVBases random_bases(const MVContext& ctx, Rng& rng)
{
	MVBases b = geometric_bases(ctx);
	b.h1_x = b.h1_x * random_square(b.h1_x.cols(), rng);
	b.h1_x1 = b.h1_x1 * random_square(b.h1_x1.cols(), rng);
	if (ctx.coh_x2)
		b.h1_x2 = b.h1_x2 * random_square(b.h1_x2.cols(), rng);
	b.h0_y = random_square(3, rng);
	b.h1_y = random_square(3, rng);
	if (!ctx.coh_x2)
		b.h0_d = random_square(3, rng);
	return b;
}

CVector connecting_hom(const MVContext& ctx, const Vec3& v)
{
	const int n = ctx.dec.ambient.generator_count;
	CVector u = CVector::Zero(3 * n);
	if (ctx.dec.kind == DecompositionKind::disk_cap)
		return u;
	const auto& p1 = ctx.dec.piece1;
	for (int i = 0; i < p1.generator_count; ++i)
		u.segment<3>(3 * (ctx.dec.offset1 + i)) =
			(adjoint_matrix(ctx.rep_x.images[ctx.dec.offset1 + i]) - Mat3::Identity()) * v;
	const CMatrix& d1 = ctx.coh_x.complex.delta[1];
	const double r = (d1 * u).norm();
	if (r > 1e-8 * std::max(1.0, d1.norm() * u.norm()))
		throw Error(ErrorKind::snake_construction,
			"connecting cochain is not a cocycle (residual " + std::to_string(r) + ")");
	return u;
}

MVSequence build_mv(const MVContext& ctx, const MVBases& bases)
{
	const bool disk = ctx.dec.kind == DecompositionKind::disk_cap;
	const int hx = ctx.coh_x.dims[1];
	const int h1 = ctx.coh_x1.dims[1];
	const int h2 = piece_dim(ctx.coh_x2);
	const int h0p = disk ? 3 : 0;
	if (bases.h1_x.cols() != hx || bases.h1_x1.cols() != h1 || (!disk && bases.h1_x2.cols() != h2))
		throw Error(ErrorKind::shape, "MV bases do not match cohomology dimensions");

	const Eigen::PartialPivLU<CMatrix> h0y(bases.h0_y), h1y(bases.h1_y);
	std::vector<CMatrix> maps(6);
	maps[0] = CMatrix::Zero(h0p, 0);
	maps[1] = disk ? CMatrix(-h0y.solve(bases.h0_d)) : CMatrix(3, 0);

	CMatrix conn(3 * ctx.dec.ambient.generator_count, 3);
	for (int c = 0; c < 3; ++c)
		conn.col(c) = connecting_hom(ctx, bases.h0_y.col(c));
	maps[2] = disk ? CMatrix(CMatrix::Zero(hx, 3)) : class_coordinates(ctx.coh_x, 1, conn, bases.h1_x);

	CMatrix restr(h1 + h2, hx);
	const int n1 = ctx.dec.piece1.generator_count;
	restr.topRows(h1) = class_coordinates(ctx.coh_x1, 1,
		bases.h1_x.middleRows(3 * ctx.dec.offset1, 3 * n1), bases.h1_x1);
	if (!disk) {
		const int n2 = ctx.dec.piece2->generator_count;
		restr.bottomRows(h2) = class_coordinates(*ctx.coh_x2, 1,
			bases.h1_x.middleRows(3 * ctx.dec.offset2, 3 * n2), bases.h1_x2);
	}
	maps[3] = restr;

	CMatrix diff(3, h1 + h2);
	for (int c = 0; c < h1; ++c)
		diff.col(c) = crossed_eval(CrossedHom::from_cochain(ctx.rep_x1.images, bases.h1_x1.col(c)),
			ctx.dec.circle1);
	for (int c = 0; c < h2; ++c)
		diff.col(h1 + c) = -crossed_eval(
			CrossedHom::from_cochain(ctx.rep_x2->images, bases.h1_x2.col(c)), ctx.dec.circle2);
	maps[4] = h1y.solve(diff);
	maps[5] = CMatrix(0, 3);

	MVSequence mv;
	mv.labels = {"H0(X)", "H0(X1)+H0(X2)", "H0(Y)", "H1(X)", "H1(X1)+H1(X2)", "H1(Y)", "H2(X)"};
	mv.seq = make_sequence({0, h0p, 3, hx, h1 + h2, 3, 0}, std::move(maps));

	const int g = ctx.dec.ambient.genus;
	bool ledger = hx == 6 * g - 6;
	if (disk)
		ledger = ledger && h1 == 6 * g - 3;
	else
		ledger = ledger && h1 == 6 * ctx.dec.piece1.genus - 3 && h2 == 6 * ctx.dec.piece2->genus - 3;
	if (!ledger)
		throw Error(ErrorKind::decomposition_inconsistency, "dimension ledger mismatch");
	mv.exactness = check_exact(mv.seq);
	if (!mv.exactness.exact)
		throw Error(ErrorKind::decomposition_inconsistency,
			"Mayer-Vietoris sequence is not exact (composite " +
				std::to_string(mv.exactness.max_composite) + ")");
	return mv;
}

namespace {

// Corrective term computed independently of the SVD engine: b^{p+1} is the
// image of vectors chosen greedily from the standard basis to complete b^p.
cplx walk_corrective(const BasedSequence& seq)
{
	cplx t = 1.0;
	CMatrix b(seq.dims[0], 0);
	for (std::size_t p = 0; p < seq.dims.size(); ++p) {
		const int d = seq.dims[p];
		const CMatrix id = CMatrix::Identity(d, d);
		const Eigen::VectorXi picked = greedy_completion(b, id);
		CMatrix c(d, picked.size());
		for (Eigen::Index j = 0; j < picked.size(); ++j)
			c.col(j) = id.col(picked(j));
		CMatrix m(d, c.cols() + b.cols());
		m << c, b;
		cplx det;
		try {
			det = transition_det(m, id);
			if (d > 0 && condition_number(m) > 1e12)
				throw Error(ErrorKind::ill_conditioned_basis, "completion is ill conditioned");
		} catch (const Error& e) {
			throw Error(ErrorKind::basis_completion, e.what());
		}
		t *= p % 2 == 0 ? 1.0 / det : det;
		if (p + 1 < seq.dims.size())
			b = seq.maps[p] * c;
		else if (c.cols() != 0)
			throw Error(ErrorKind::basis_completion, "sequence does not end exactly");
	}
	return t;
}

} // namespace

CompatibleBases construct_compatible_bases(const MVContext& ctx, const MVBases& given, FreeSpace free)
{
	CompatibleBases out;
	const MVSequence mv = build_mv(ctx, given);
	out.walk_corrective = walk_corrective(mv.seq);
	out.engine_corrective = sequence_torsion(mv.seq).value;
	const int q = static_cast<int>(free);
	// scaling a basis vector of position q by lambda multiplies the term by lambda^{(-1)^q}
	out.lambda = q % 2 == 0 ? 1.0 / out.walk_corrective : out.walk_corrective;
	out.bases = given;
	CMatrix& target = free == FreeSpace::closed ? out.bases.h1_x : out.bases.h1_x1;
	if (target.cols() == 0)
		throw Error(ErrorKind::basis_completion, "free space is zero-dimensional");
	// spread lambda over all vectors; same determinant, no loss of conditioning
	target *= std::pow(out.lambda, 1.0 / static_cast<double>(target.cols()));
	out.corrective_after = sequence_torsion(build_mv(ctx, out.bases).seq).value;
	return out;
}

PieceTorsions piece_torsions(const MVContext& ctx, const MVBases& bases)
{
	PieceTorsions t;
	const TwistedComplex& cx = ctx.coh_x.complex;
	t.x = torsion(cx, h_bases_only(cx, 1, bases.h1_x)).value;
	const TwistedComplex& c1 = ctx.coh_x1.complex;
	t.x1 = torsion(c1, h_bases_only(c1, 1, bases.h1_x1)).value;
	if (ctx.coh_x2) {
		const TwistedComplex& c2 = ctx.coh_x2->complex;
		t.x2 = torsion(c2, h_bases_only(c2, 1, bases.h1_x2)).value;
	} else {
		t.x2 = torsion(ctx.cx_d, {bases.h0_d}).value;
	}
	t.y = torsion(ctx.cx_y, {bases.h0_y, bases.h1_y}).value;
	t.h = sequence_torsion(build_mv(ctx, bases).seq).value;
	return t;
}

GluingReport verify_gluing(const MVContext& ctx, Rng& rng)
{
	GluingReport r;
	r.kind = ctx.dec.kind;
	r.generic = piece_torsions(ctx, random_bases(ctx, rng));
	r.generic_rel_err = rel_diff(std::abs(r.generic.x1 * r.generic.x2),
		std::abs(r.generic.x * r.generic.y * r.generic.h));

	const FreeSpace free = ctx.dec.kind == DecompositionKind::disk_cap ? FreeSpace::closed : FreeSpace::pieces;
	r.construction = construct_compatible_bases(ctx, geometric_bases(ctx), free);
	r.constructed = piece_torsions(ctx, r.construction.bases);
	r.constructed_rel_err = rel_diff(std::abs(r.constructed.x1 * r.constructed.x2), std::abs(r.constructed.x));
	r.circle_dev = std::abs(std::abs(r.constructed.y) - 1.0);
	if (ctx.dec.kind == DecompositionKind::disk_cap)
		r.disk_dev = std::abs(r.constructed.x2 - 1.0);
	return r;
}

ChainReport connected_sum_chain(const Representation& rep, int k, const CMatrix& h_x)
{
	if (k < 2)
		throw Error(ErrorKind::out_of_scope, "connected sum needs k >= 2");
	ChainReport out;
	out.k = k;
	out.h_x = h_x;
	out.block_bases.resize(k);
	const TwistedComplex cx = build_complex(rep);
	out.torsion_x = torsion(cx, h_bases_only(cx, 1, h_x)).abs();

	auto record = [&](const CompatibleBases& cb, const MVContext& ctx) {
		out.correctives.push_back(cb.corrective_after);
		out.circle_torsions.push_back(torsion(ctx.cx_y, {cb.bases.h0_y, cb.bases.h1_y}).abs());
	};
	// closed basis of Sigma_{2m,0} from a one-holed basis by capping
	auto cap = [&](const Representation& closed, const CMatrix& bordered) {
		const MVContext ctx = prepare_mv(disk_cap(closed.presentation.genus), closed);
		MVBases b = geometric_bases(ctx);
		b.h1_x1 = bordered;
		const CompatibleBases cb = construct_compatible_bases(ctx, b, FreeSpace::closed);
		record(cb, ctx);
		return cb.bases.h1_x;
	};

	CMatrix current = h_x;
	for (int m = k; m >= 2; --m) {
		const Representation closed = m == k ? rep : restrict_blocks(rep, 0, m, 0);
		const MVContext ctx = prepare_mv(separating_split(2 * m, 2 * m - 2), closed);
		MVBases b = geometric_bases(ctx);
		b.h1_x = current;
		const CompatibleBases cb = construct_compatible_bases(ctx, b, FreeSpace::pieces);
		record(cb, ctx);
		out.block_bases[m - 1] = cap(restrict_blocks(rep, m - 1, 1, 0), cb.bases.h1_x2);
		current = cap(restrict_blocks(rep, 0, m - 1, 0), cb.bases.h1_x1);
	}
	out.block_bases[0] = current;

	double prod = 1.0;
	for (int i = 0; i < k; ++i) {
		const Representation block = restrict_blocks(rep, i, 1, 0);
		const TwistedComplex bc = build_complex(block);
		out.torsion_blocks.push_back(torsion(bc, h_bases_only(bc, 1, out.block_bases[i])).abs());
		prod *= out.torsion_blocks.back();
	}
	for (double c : out.circle_torsions)
		prod *= c;
	out.product_rel_err = rel_diff(out.torsion_x, prod);
	return out;
}

double main_constant(int k)
{
	double f = 1.0;
	for (int i = 2; i <= 6 * k - 3; ++i)
		f *= i;
	return f / std::pow(6.0, k);
}

MainReport verify_main_theorem(int k, int trials, std::uint64_t seed)
{
	if (k < 2 || 6 * k - 3 > 45)
		throw Error(ErrorKind::out_of_scope, "k must satisfy 2 <= k and 6k - 3 <= 45");
	if (trials < 1)
		throw Error(ErrorKind::out_of_scope, "trials must be positive");
	MainReport rep;
	rep.k = k;
	rep.m_k = main_constant(k);
	double n_fact = 1.0;
	for (int i = 2; i <= 6 * k - 3; ++i)
		n_fact *= i;

	for (int t = 0; t < trials; ++t) {
		Rng rng = substream(seed, static_cast<std::uint64_t>(t));
		MainTrial trial;
		trial.index = t;
		trial.seed = seed;
		for (int attempt = 0;; ++attempt) {
			if (attempt >= 20)
				throw Error(ErrorKind::sampling_failure, "trial " + std::to_string(t) + " kept failing condition (C)");
			try {
				const Representation sum = sample_connected_sum(k, rng);
				if (!check_condition_C(sum, k).all_pass) {
					++trial.retries;
					continue;
				}
				const CohomologyData coh = cohomology(build_complex(sum));
				const ChainReport chain = connected_sum_chain(sum, k, coh.reps[1]);
				trial.pf_x = std::abs(gram(sum, chain.h_x).pf);
				double denom = 1.0, mismatched = 1.0;
				trial.pf_blocks.clear();
				for (int i = 0; i < k; ++i) {
					const Representation block = restrict_blocks(sum, i, 1, 0);
					trial.pf_blocks.push_back(std::abs(gram(block, chain.block_bases[i]).pf));
					denom *= 6.0 * trial.pf_blocks.back();
					mismatched *= 6.0 * std::abs(gram(block, cohomology(build_complex(block)).reps[1]).pf);
				}
				trial.ratio = n_fact * trial.pf_x / denom;
				trial.mismatched_ratio = n_fact * trial.pf_x / mismatched;
				trial.rel_err = rel_diff(trial.ratio, rep.m_k);
				for (const cplx& c : chain.correctives)
					trial.max_corrective_dev = std::max(trial.max_corrective_dev, std::abs(std::abs(c) - 1.0));
				trial.product_rel_err = chain.product_rel_err;
				break;
			} catch (const Error& e) {
				if (e.kind() != ErrorKind::basis_completion && e.kind() != ErrorKind::decomposition_inconsistency &&
					e.kind() != ErrorKind::degenerate_basis && e.kind() != ErrorKind::ill_conditioned_basis)
					throw;
				++trial.retries;
			}
		}
		rep.sampling_retries += trial.retries;
		rep.max_rel_err = std::max(rep.max_rel_err, trial.rel_err);
		rep.trials.push_back(std::move(trial));
	}
	return rep;
}

} // namespace torvol
