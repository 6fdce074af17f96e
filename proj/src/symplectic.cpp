#include "torvol/symplectic.hpp"

#include "torvol/error.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace torvol {

CrossedHom CrossedHom::from_cochain(std::span<const SL2Matrix> images, const CVector& u)
{
	if (u.size() != 3 * static_cast<Eigen::Index>(images.size()))
		throw Error(ErrorKind::shape, "cochain length does not match generator count");
	CrossedHom out;
	out.images.assign(images.begin(), images.end());
	for (std::size_t i = 0; i < images.size(); ++i)
		out.values.push_back(u.segment<3>(3 * static_cast<Eigen::Index>(i)));
	return out;
}

namespace {

std::string sci(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.3e", v);
	return buf;
}

void check_letters(const CrossedHom& u, const GroupWord& w)
{
	if (w.max_generator() > static_cast<int>(u.values.size()) || u.values.size() != u.images.size())
		throw Error(ErrorKind::malformed_word, "word uses a generator outside the crossed hom");
}

Vec3 letter_value(const CrossedHom& u, const Letter& l)
{
	const Vec3& x = u.values[l.gen - 1];
	if (l.exp > 0)
		return x;
	return -(adjoint_matrix(u.images[l.gen - 1].inverse()) * x);
}

// Per letter y_j of r: the prefix value u(w_{j-1}) and Ad(w_{j-1}) u(y_j).
struct PrefixData {
	std::vector<Vec3> prefix;
	std::vector<Vec3> step;
	Vec3 total = Vec3::Zero();
};

PrefixData prefix_data(const CrossedHom& u, const GroupWord& r)
{
	PrefixData d;
	SL2Matrix p;
	Vec3 acc = Vec3::Zero();
	for (const Letter& l : r.letters()) {
		d.prefix.push_back(acc);
		const Vec3 s = adjoint_matrix(p) * letter_value(u, l);
		d.step.push_back(s);
		acc += s;
		const SL2Matrix& g = u.images[l.gen - 1];
		p = p * (l.exp > 0 ? g : g.inverse());
	}
	d.total = acc;
	return d;
}

double cochain_scale(const CrossedHom& u)
{
	double s = 0.0;
	for (const auto& v : u.values)
		s += v.squaredNorm();
	return std::sqrt(s);
}

void require_cocycle(const CrossedHom& u, const PrefixData& d)
{
	const double scale = std::max(1.0, cochain_scale(u));
	if (d.total.norm() > 1e-8 * scale)
		throw Error(ErrorKind::not_a_cocycle,
			"u(relator) = " + std::to_string(d.total.norm()) + " is not zero");
}

} // namespace

Vec3 crossed_eval(const CrossedHom& u, const GroupWord& w)
{
	check_letters(u, w);
	SL2Matrix p;
	Vec3 acc = Vec3::Zero();
	for (const Letter& l : w.letters()) {
		acc += adjoint_matrix(p) * letter_value(u, l);
		const SL2Matrix& g = u.images[l.gen - 1];
		p = p * (l.exp > 0 ? g : g.inverse());
	}
	return acc;
}

cplx cup_pair(const CrossedHom& u, const CrossedHom& v, const GroupWord& relator)
{
	check_letters(u, relator);
	check_letters(v, relator);
	const PrefixData du = prefix_data(u, relator);
	const PrefixData dv = prefix_data(v, relator);
	require_cocycle(u, du);
	require_cocycle(v, dv);
	cplx s = 0.0;
	for (std::size_t j = 0; j < du.prefix.size(); ++j)
		s += du.prefix[j].cwiseProduct(dv.step[j]).sum();
	// cycle correction: each inverse letter contributes B(u(x), v(x))
	for (const Letter& l : relator.letters())
		if (l.exp < 0)
			s += u.values[l.gen - 1].cwiseProduct(v.values[l.gen - 1]).sum();
	return s;
}

SymplecticGram gram(const Representation& rep, const CMatrix& basis)
{
	if (rep.presentation.relators.size() != 1)
		throw Error(ErrorKind::out_of_scope, "symplectic form needs a closed surface");
	const GroupWord& r = rep.presentation.relators.front();
	const Eigen::Index n = basis.cols();
	const std::size_t len = r.size();

	// W = U^T V + sum over inverse letters of the generator blocks
	CMatrix u(3 * len, n), v(3 * len, n), x(0, n);
	std::vector<int> inverse_gens;
	for (const Letter& l : r.letters())
		if (l.exp < 0)
			inverse_gens.push_back(l.gen);
	x.resize(3 * static_cast<Eigen::Index>(inverse_gens.size()), n);
	for (Eigen::Index c = 0; c < n; ++c) {
		const CrossedHom h = CrossedHom::from_cochain(rep.images, basis.col(c));
		const PrefixData d = prefix_data(h, r);
		require_cocycle(h, d);
		for (std::size_t j = 0; j < len; ++j) {
			u.block(3 * j, c, 3, 1) = d.prefix[j];
			v.block(3 * j, c, 3, 1) = d.step[j];
		}
		for (std::size_t k = 0; k < inverse_gens.size(); ++k)
			x.block(3 * k, c, 3, 1) = h.values[inverse_gens[k] - 1];
	}
	CMatrix w = u.transpose() * v + x.transpose() * x;

	SymplecticGram out;
	out.basis = basis;
	const double wn = w.norm();
	out.asymmetry = wn > 0.0 ? (w + w.transpose()).norm() / wn : 0.0;
	// size of the summed terms relative to the result; rounding grows with it
	out.cancellation = wn > 0.0 ? (u.norm() * v.norm() + x.squaredNorm()) / wn : 1.0;
	const double limit = std::max(1e-8, 1e-10 * out.cancellation);
	if (out.asymmetry > limit)
		throw Error(ErrorKind::cup_formula, "Gram matrix is not antisymmetric (" + sci(out.asymmetry) +
			", limit " + sci(limit) + ")");
	out.w = (w - w.transpose()) / 2.0;
	out.pf = pfaffian(out.w);
	return out;
}

WittenReport witten_check(const Representation& rep, const CMatrix& basis)
{
	const TwistedComplex cx = build_complex(rep);
	WittenReport out;
	out.h1 = static_cast<int>(basis.cols());
	out.torsion_abs = torsion(cx, h_bases_only(cx, 1, basis)).abs();
	out.pf_abs = std::abs(gram(rep, basis).pf);
	out.rel_err = std::abs(out.torsion_abs - out.pf_abs) / out.pf_abs;
	return out;
}

WittenReport witten_check(const Representation& rep)
{
	const CohomologyData coh = cohomology(build_complex(rep));
	if (coh.dims[0] != 0 || coh.dims[2] != 0)
		throw Error(ErrorKind::invalid_representation, "representation is not good (H^0 or H^2 nonzero)");
	return witten_check(rep, coh.reps[1]);
}

} // namespace torvol
