#include "torvol/torsion.hpp"

#include "torvol/error.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace torvol {

namespace {

constexpr double kMaxCondition = 1e12;

void fnv_mix(std::uint64_t& h, const CMatrix& m)
{
	for (Eigen::Index j = 0; j < m.cols(); ++j)
		for (Eigen::Index i = 0; i < m.rows(); ++i) {
			const double parts[2] = {m(i, j).real(), m(i, j).imag()};
			unsigned char bytes[sizeof parts];
			std::memcpy(bytes, parts, sizeof parts);
			for (unsigned char b : bytes) {
				h ^= b;
				h *= 1099511628211ull;
			}
		}
}

CMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
	std::normal_distribution<double> normal(0.0, 1.0);
	CMatrix m(rows, cols);
	for (Eigen::Index j = 0; j < cols; ++j)
		for (Eigen::Index i = 0; i < rows; ++i) {
			const double re = normal(rng);
			const double im = normal(rng);
			m(i, j) = cplx(re, im);
		}
	return m;
}

std::complex<double> checked_det(const CMatrix& m, int p)
{
	if (m.rows() != m.cols())
		throw Error(ErrorKind::shape, "basis at degree " + std::to_string(p) + " is " +
			std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
	if (m.rows() == 0)
		return 1.0;
	if (condition_number(m) > kMaxCondition)
		throw Error(ErrorKind::degenerate_basis,
			"assembled basis at degree " + std::to_string(p) + " is singular");
	return m.partialPivLu().determinant();
}

// Shared engine: at position p the basis [s_p(b^{p+1}) | h_p | b^p] is
// compared with ref[p] and raised to sign(p).
template <class Sign>
TorsionValue alternating_product(const std::vector<int>& dims, const std::vector<CMatrix>& maps,
	const std::vector<CMatrix>& h, const std::vector<CMatrix>* ref, Sign sign, Rng* rng)
{
	const std::size_t n = dims.size();
	std::vector<CMatrix> b(n + 1), sections(n);
	for (std::size_t p = 0; p < n; ++p) {
		if (p + 1 < n) {
			const CMatrix& d = maps[p];
			RankData rd = rank_decompose(d);
			CMatrix img = rd.image_basis;
			if (rng && img.cols() > 0) {
				CMatrix r = random_matrix(img.cols(), img.cols(), *rng);
				img = img * r;
			}
			CMatrix s = min_norm_preimage(d, img);
			if (rng && rd.kernel_basis.cols() > 0 && s.cols() > 0)
				s += rd.kernel_basis * random_matrix(rd.kernel_basis.cols(), s.cols(), *rng);
			b[p + 1] = img;
			sections[p] = s;
		} else {
			sections[p] = CMatrix(dims[p], 0);
		}
	}
	b[0] = CMatrix(dims[0], 0);

	TorsionValue out;
	std::uint64_t digest = 14695981039346656037ull;
	for (std::size_t p = 0; p < n; ++p) {
		const CMatrix& hp = h[p];
		if (hp.rows() != dims[p])
			throw Error(ErrorKind::shape, "cohomology basis has wrong row count at degree " +
				std::to_string(p));
		CMatrix m(dims[p], sections[p].cols() + hp.cols() + b[p].cols());
		m << sections[p], hp, b[p];
		fnv_mix(digest, sections[p]);
		fnv_mix(digest, b[p]);
		std::complex<double> det = checked_det(m, static_cast<int>(p));
		if (ref && (*ref)[p].cols() > 0)
			det /= checked_det((*ref)[p], static_cast<int>(p));
		out.value *= sign(static_cast<int>(p)) > 0 ? det : 1.0 / det;
	}
	out.choices_digest = digest;
	return out;
}

} // namespace

TorsionValue torsion(const TwistedComplex& cx, const std::vector<CMatrix>& h_bases,
	TorsionConvention convention, Rng* rng)
{
	if (h_bases.size() != cx.dims.size())
		throw Error(ErrorKind::shape, "need one cohomology basis per degree");
	const int flip = convention == TorsionConvention::volume ? -1 : 1;
	return alternating_product(cx.dims, cx.delta, h_bases, nullptr,
		[flip](int p) { return (p % 2 == 0 ? 1 : -1) * flip; }, rng);
}

std::vector<CMatrix> h_bases_only(const TwistedComplex& cx, int degree, const CMatrix& basis)
{
	std::vector<CMatrix> h;
	for (int p = 0; p <= cx.top_degree(); ++p)
		h.push_back(p == degree ? basis : CMatrix(cx.dims[p], 0));
	return h;
}

BasedSequence make_sequence(std::vector<int> dims, std::vector<CMatrix> maps)
{
	BasedSequence seq;
	for (int d : dims)
		seq.bases.push_back(CMatrix::Identity(d, d));
	seq.dims = std::move(dims);
	seq.maps = std::move(maps);
	return seq;
}

ExactnessReport check_exact(const BasedSequence& seq, double tol)
{
	const std::size_t n = seq.dims.size();
	if (seq.maps.size() + 1 != n || seq.bases.size() != n)
		throw Error(ErrorKind::shape, "sequence needs n spaces, n bases and n-1 maps");
	for (std::size_t p = 0; p + 1 < n; ++p)
		if (seq.maps[p].rows() != seq.dims[p + 1] || seq.maps[p].cols() != seq.dims[p])
			throw Error(ErrorKind::shape, "map " + std::to_string(p) + " has wrong shape");

	ExactnessReport rep;
	for (const auto& m : seq.maps)
		rep.ranks.push_back(rank_decompose(m).rank);
	rep.ranks_telescope = true;
	for (std::size_t p = 0; p < n; ++p) {
		const int in = p > 0 ? rep.ranks[p - 1] : 0;
		const int outr = p + 1 < n ? rep.ranks[p] : 0;
		if (in + outr != seq.dims[p])
			rep.ranks_telescope = false;
	}
	for (std::size_t p = 0; p + 2 < n; ++p) {
		const double scale = seq.maps[p + 1].norm() * seq.maps[p].norm();
		if (scale > 0.0)
			rep.max_composite =
				std::max(rep.max_composite, (seq.maps[p + 1] * seq.maps[p]).norm() / scale);
	}
	rep.exact = rep.ranks_telescope && rep.max_composite <= tol;
	return rep;
}

TorsionValue sequence_torsion(const BasedSequence& seq, double exact_tol)
{
	const ExactnessReport ex = check_exact(seq, exact_tol);
	if (!ex.exact)
		throw Error(ErrorKind::not_exact, "sequence is not exact (composite " +
			std::to_string(ex.max_composite) + ")");
	std::vector<CMatrix> empty;
	for (int d : seq.dims)
		empty.emplace_back(d, 0);
	for (std::size_t p = 0; p < seq.bases.size(); ++p)
		if (seq.bases[p].rows() != seq.dims[p] || seq.bases[p].cols() != seq.dims[p])
			throw Error(ErrorKind::shape, "basis " + std::to_string(p) + " is not square");
	return alternating_product(seq.dims, seq.maps, empty, &seq.bases,
		[](int p) { return p % 2 == 0 ? -1 : 1; }, nullptr);
}

ScalingReport basis_scaling_check(const TwistedComplex& cx, const std::vector<CMatrix>& h,
	const CMatrix& p, int degree, TorsionConvention convention, double tol)
{
	ScalingReport rep;
	std::vector<CMatrix> hp = h;
	hp.at(degree) = h.at(degree) * p;
	rep.ratio = torsion(cx, hp, convention).value / torsion(cx, h, convention).value;
	rep.det_p = p.rows() ? p.partialPivLu().determinant() : std::complex<double>(1.0);
	const int base = degree % 2 == 0 ? 1 : -1;
	rep.expected_exponent = convention == TorsionConvention::volume ? -base : base;
	const double a = std::abs(rep.ratio), d = std::abs(rep.det_p);
	rep.exponent = std::abs(std::log(a) - std::log(d)) <= std::abs(std::log(a) + std::log(d)) ? 1 : -1;
	const double target = rep.expected_exponent > 0 ? d : 1.0 / d;
	rep.rel_err = std::abs(a - target) / target;
	rep.pass = rep.exponent == rep.expected_exponent && rep.rel_err <= tol;
	return rep;
}

} // namespace torvol
