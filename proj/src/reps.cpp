#include "torvol/reps.hpp"

#include "torvol/cochain.hpp"
#include "torvol/error.hpp"
#include "torvol/numlin.hpp"

#include <Eigen/QR>

#include <cmath>

namespace torvol {

Rng substream(std::uint64_t seed, std::uint64_t index)
{
	std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
		static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x746f72u};
	return Rng(seq);
}

double Representation::relator_residual() const
{
	double worst = 0.0;
	for (const auto& r : presentation.relators)
		worst = std::max(worst, (evaluate(r).matrix() - Mat2::Identity()).norm());
	return worst;
}

Representation Representation::conjugated(const SL2Matrix& g) const
{
	Representation out = *this;
	const SL2Matrix gi = g.inverse();
	for (auto& m : out.images)
		m = g * m * gi;
	return out;
}

Representation make_representation(Presentation pres, std::vector<SL2Matrix> images,
	std::uint64_t seed, std::string method, double relator_tol)
{
	if (static_cast<int>(images.size()) != pres.generator_count)
		throw Error(ErrorKind::invalid_representation,
			"expected " + std::to_string(pres.generator_count) + " images, got " +
				std::to_string(images.size()));
	for (const auto& m : images)
		if (std::abs(m.det() - 1.0) > 1e-10)
			throw Error(ErrorKind::invalid_representation, "image with det != 1");
	Representation rep{std::move(pres), std::move(images), seed, std::move(method)};
	const double res = rep.relator_residual();
	if (!(res <= relator_tol))
		throw Error(ErrorKind::invalid_representation,
			"relator residual " + std::to_string(res));
	return rep;
}

SL2Matrix random_sl2(Rng& rng)
{
	std::normal_distribution<double> normal(0.0, 1.0);
	for (int attempt = 0; attempt < 100; ++attempt) {
		Mat2 m;
		for (int i = 0; i < 2; ++i)
			for (int j = 0; j < 2; ++j) {
				const double re = normal(rng);
				const double im = normal(rng);
				m(i, j) = cplx(re, im);
			}
		if (std::abs(m.determinant()) < 1e-6)
			continue;
		return SL2Matrix::normalized(m);
	}
	throw Error(ErrorKind::sampling_failure, "random_sl2 kept drawing singular matrices");
}

namespace {

Mat2 adj(const Mat2& m)
{
	Mat2 out;
	out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
	return out;
}

Mat2 unit(int k)
{
	Mat2 e = Mat2::Zero();
	e(k / 2, k % 2) = 1.0;
	return e;
}

// Unknowns: entries of a then b (row-major). Equations: a b adj(a) adj(b) = T,
// det a = 1, det b = 1.
Eigen::Matrix<cplx, 6, 1> residual(const Mat2& a, const Mat2& b, const Mat2& t)
{
	Eigen::Matrix<cplx, 6, 1> f;
	const Mat2 c = a * b * adj(a) * adj(b) - t;
	f << c(0, 0), c(0, 1), c(1, 0), c(1, 1), a.determinant() - 1.0, b.determinant() - 1.0;
	return f;
}

Eigen::Matrix<cplx, 6, 8> jacobian(const Mat2& a, const Mat2& b)
{
	Eigen::Matrix<cplx, 6, 8> j = Eigen::Matrix<cplx, 6, 8>::Zero();
	const Mat2 aa = adj(a), ab = adj(b);
	for (int k = 0; k < 4; ++k) {
		const Mat2 e = unit(k);
		const Mat2 da = e * b * aa * ab + a * b * adj(e) * ab;
		const Mat2 db = a * e * aa * ab + a * b * aa * adj(e);
		for (int r = 0; r < 4; ++r) {
			j(r, k) = da(r / 2, r % 2);
			j(r, 4 + k) = db(r / 2, r % 2);
		}
	}
	// d det / d(p, q, r, s) = (s, -r, -q, p)
	j(4, 0) = a(1, 1), j(4, 1) = -a(1, 0), j(4, 2) = -a(0, 1), j(4, 3) = a(0, 0);
	j(5, 4) = b(1, 1), j(5, 5) = -b(1, 0), j(5, 6) = -b(0, 1), j(5, 7) = b(0, 0);
	return j;
}

constexpr double kMaxEntry = 100.0;

} // namespace

std::pair<SL2Matrix, SL2Matrix> solve_commutator(const SL2Matrix& target, Rng& rng)
{
	const Mat2& t = target.matrix();
	if ((t - Mat2::Identity()).norm() < 1e-14)
		return {SL2Matrix::identity(), SL2Matrix::identity()};
	if (std::abs(target.trace() - 2.0) <= 1e-6)
		throw Error(ErrorKind::solver_failure, "near-parabolic commutator target");

	for (int restart = 0; restart < 50; ++restart) {
		Mat2 a = random_sl2(rng).matrix();
		Mat2 b = random_sl2(rng).matrix();
		double fn = residual(a, b, t).norm();
		for (int it = 0; it < 80 && fn > 1e-15; ++it) {
			const auto j = jacobian(a, b);
			const Eigen::Matrix<cplx, 8, 1> step =
				-Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<cplx, 6, 8>>(j).solve(
					residual(a, b, t));
			double lambda = 1.0;
			bool moved = false;
			while (lambda > 1e-6) {
				Mat2 a2, b2;
				a2 << a(0, 0) + lambda * step(0), a(0, 1) + lambda * step(1),
					a(1, 0) + lambda * step(2), a(1, 1) + lambda * step(3);
				b2 << b(0, 0) + lambda * step(4), b(0, 1) + lambda * step(5),
					b(1, 0) + lambda * step(6), b(1, 1) + lambda * step(7);
				const double f2 = residual(a2, b2, t).norm();
				if (f2 < fn) {
					a = a2, b = b2, fn = f2;
					moved = true;
					break;
				}
				lambda *= 0.5;
			}
			if (!moved)
				break;
		}
		if (!(fn < 1e-12) || a.cwiseAbs().maxCoeff() > kMaxEntry ||
			b.cwiseAbs().maxCoeff() > kMaxEntry)
			continue;
		const SL2Matrix sa = SL2Matrix::normalized(a);
		const SL2Matrix sb = SL2Matrix::normalized(b);
		if ((commutator(sa, sb).matrix() - t).norm() < 1e-10)
			return {sa, sb};
	}
	throw Error(ErrorKind::solver_failure, "commutator equation did not converge");
}

Representation sample_block_rep(Rng& rng)
{
	for (int attempt = 0; attempt < 100; ++attempt) {
		const SL2Matrix c = random_sl2(rng);
		const SL2Matrix d = random_sl2(rng);
		const SL2Matrix target = commutator(c, d).inverse();
		if (std::abs(target.trace() - 2.0) <= 1e-6)
			continue;
		std::pair<SL2Matrix, SL2Matrix> ab;
		try {
			ab = solve_commutator(target, rng);
		} catch (const Error& e) {
			if (e.kind() == ErrorKind::solver_failure)
				continue;
			throw;
		}
		Representation rep;
		try {
			rep = make_representation(surface_presentation(2, 0), {ab.first, ab.second, c, d}, 0,
				"block-newton");
		} catch (const Error&) {
			continue;
		}
		if (check_good(rep).is_good)
			return rep;
	}
	throw Error(ErrorKind::sampling_failure, "no good genus-2 representation in 100 attempts");
}

Representation sample_bordered_rep(int genus, Rng& rng)
{
	for (int attempt = 0; attempt < 100; ++attempt) {
		std::vector<SL2Matrix> images;
		for (int i = 0; i < 2 * genus; ++i)
			images.push_back(random_sl2(rng));
		auto rep = make_representation(surface_presentation(genus, 1), std::move(images), 0, "random");
		if (check_good(rep).is_good)
			return rep;
	}
	throw Error(ErrorKind::sampling_failure, "no good bordered representation in 100 attempts");
}

Representation assemble_connected_sum(const std::vector<Representation>& blocks)
{
	const int k = static_cast<int>(blocks.size());
	if (k < 2)
		throw Error(ErrorKind::out_of_scope, "connected sum needs at least two blocks");
	std::vector<SL2Matrix> images;
	for (const auto& b : blocks) {
		if (b.presentation.genus != 2 || b.presentation.boundary != 0)
			throw Error(ErrorKind::invalid_representation, "block is not a closed genus-2 representation");
		if (!(b.relator_residual() <= 1e-10))
			throw Error(ErrorKind::invalid_representation,
				"invalid block: relator residual " + std::to_string(b.relator_residual()));
		images.insert(images.end(), b.images.begin(), b.images.end());
	}
	return make_representation(surface_presentation(2 * k, 0), std::move(images), blocks.front().seed,
		"connected-sum", 1e-9);
}

Representation sample_connected_sum(int k, Rng& rng)
{
	std::vector<Representation> blocks;
	for (int i = 0; i < k; ++i)
		blocks.push_back(sample_block_rep(rng));
	return assemble_connected_sum(blocks);
}

GoodnessReport check_good(const Representation& rep)
{
	GoodnessReport report;
	const RankData rd = rank_decompose(coboundary0(rep.images));
	report.h0_dim = static_cast<int>(rd.kernel_basis.cols());

	std::vector<GroupWord> candidates;
	const int n = static_cast<int>(rep.images.size());
	for (int i = 1; i <= n; ++i)
		candidates.push_back(GroupWord::generator(i));
	for (int i = 1; i <= n; ++i)
		for (int j = i + 1; j <= n; ++j)
			candidates.push_back(GroupWord::generator(i) * GroupWord::generator(j));

	std::vector<SL2Matrix> values;
	for (const auto& w : candidates)
		values.push_back(rep.evaluate(w));
	for (std::size_t i = 0; i < candidates.size(); ++i)
		for (std::size_t j = i + 1; j < candidates.size(); ++j) {
			const cplx tr = commutator(values[i], values[j]).trace();
			const double dist = std::abs(tr - 2.0);
			if (dist > report.witness.distance_from_two)
				report.witness = {candidates[i], candidates[j], tr, dist};
		}
	report.irreducible = report.witness.distance_from_two > 1e-6;
	report.is_good = report.irreducible && report.h0_dim == 0;
	return report;
}

Representation restrict_blocks(const Representation& rep, int first, int count, int boundary)
{
	const int start = 4 * first;
	if (first < 0 || count < 1 || start + 4 * count > static_cast<int>(rep.images.size()))
		throw Error(ErrorKind::out_of_scope, "block range outside the representation");
	std::vector<SL2Matrix> images(rep.images.begin() + start, rep.images.begin() + start + 4 * count);
	Presentation pres = surface_presentation(2 * count, boundary);
	if (boundary == 0) {
		const double res = (evaluate_word(images, pres.relators.front()).matrix() - Mat2::Identity()).norm();
		if (!(res <= 1e-8))
			throw Error(ErrorKind::condition_c_undefined,
				"block product does not map to I (residual " + std::to_string(res) + ")");
		return make_representation(std::move(pres), std::move(images), rep.seed, "restriction", 1e-8);
	}
	return make_representation(std::move(pres), std::move(images), rep.seed, "restriction");
}

ConditionCReport check_condition_C(const Representation& rep, int k)
{
	if (k < 2)
		throw Error(ErrorKind::out_of_scope, "condition (C) needs k >= 2 blocks");
	if (rep.presentation.boundary != 0 || rep.presentation.genus != 2 * k)
		throw Error(ErrorKind::out_of_scope, "representation is not on the genus 2k closed surface");

	ConditionCReport report;
	report.k = k;
	bool pass = true;
	for (int j = 1; j < k; ++j) {
		const std::string name = "S1_" + std::to_string(j);
		const GroupWord* w = rep.presentation.find_word(name);
		const GroupWord word = w ? *w : surface_word(2 * j);
		const double res = (rep.evaluate(word).matrix() - Mat2::Identity()).norm();
		if (!(res <= 1e-8))
			throw Error(ErrorKind::condition_c_undefined,
				name + " does not map to I (residual " + std::to_string(res) + ")");
		report.circles.push_back({name, res, true});
	}
	auto piece = [&](const std::string& name, int first, int count) {
		ConditionCReport::Piece p;
		p.name = name;
		p.closed = check_good(restrict_blocks(rep, first, count, 0));
		p.bordered = check_good(restrict_blocks(rep, first, count, 1));
		pass = pass && p.closed.is_good && p.bordered.is_good;
		return p;
	};
	for (int i = 0; i < k; ++i)
		report.blocks.push_back(piece("block" + std::to_string(i + 1), i, 1));
	for (int j = 2; j < k; ++j)
		report.prefixes.push_back(piece("prefix" + std::to_string(j), 0, j));
	report.all_pass = pass;
	return report;
}

} // namespace torvol
