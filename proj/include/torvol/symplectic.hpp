#pragma once

// The Goldman symplectic form on H^1 of a closed surface: cup product with
// the Killing form evaluated on the fundamental class, its Gram matrix,
// Pfaffian volume and the torsion comparison.

#include "torvol/torsion.hpp"

#include <vector>

namespace torvol {

/// Crossed homomorphism given by its values on generators.
struct CrossedHom {
	std::vector<SL2Matrix> images;
	std::vector<Vec3> values;

	/// Splits a 1-cochain (3 coordinates per generator).
	static CrossedHom from_cochain(std::span<const SL2Matrix> images, const CVector& u);
};

/// u(w) by u(gh) = u(g) + Ad(g) u(h), u(x^{-1}) = -Ad(x^{-1}) u(x).
Vec3 crossed_eval(const CrossedHom& u, const GroupWord& w);

/// omega(u, v) on the relator 2-cell; throws not_a_cocycle.
cplx cup_pair(const CrossedHom& u, const CrossedHom& v, const GroupWord& relator);

struct SymplecticGram {
	CMatrix w;     ///< antisymmetrized Gram matrix
	CMatrix basis; ///< the h^1 basis used
	cplx pf = 1.0;
	double asymmetry = 0.0; ///< ||W + W^T|| / ||W|| before antisymmetrizing
	double cancellation = 1.0; ///< (||U|| ||V|| + ||X||^2) / ||W||; limit is max(1e-8, 1e-10 * this)
};

/// Gram matrix of omega on the columns of `basis` (cocycles on rep's surface).
SymplecticGram gram(const Representation& rep, const CMatrix& basis);

struct WittenReport {
	double torsion_abs = 0.0;
	double pf_abs = 0.0;
	double rel_err = 0.0;
	int h1 = 0;
};

/// |T(cx; 0, h, 0)| against |Pf W(h)| for a closed surface.
WittenReport witten_check(const Representation& rep, const CMatrix& basis);
WittenReport witten_check(const Representation& rep);

} // namespace torvol
