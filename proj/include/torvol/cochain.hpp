#pragma once

// Twisted cochain complexes C*(K; Ad rho) for disks, circles, bordered and
// closed surfaces, and their cohomology with harmonic representatives.

#include "torvol/numlin.hpp"
#include "torvol/reps.hpp"

#include <span>
#include <vector>

namespace torvol {

struct TwistedComplex {
	std::vector<int> dims;      ///< d_p = 3 * (number of p-cells)
	std::vector<CMatrix> delta; ///< delta[p] : C^p -> C^{p+1}

	int top_degree() const { return static_cast<int>(dims.size()) - 1; }
};

/// Stacked blocks Ad(x_i) - I, the coboundary C^0 -> C^1 of a wedge of circles.
CMatrix coboundary0(std::span<const SL2Matrix> images);

/// Coboundary C^1 -> C^2 of the 2-cell attached along `relator`.
CMatrix coboundary1(std::span<const SL2Matrix> images, const GroupWord& relator);

/// One 0-cell, a 1-cell per generator, a 2-cell per relator.
TwistedComplex build_complex(const Representation& rep);

/// Circle traversed by a loop with holonomy `s`.
TwistedComplex circle_complex(const SL2Matrix& s);

/// A single 0-cell.
TwistedComplex disk_complex();

struct CohomologyData {
	TwistedComplex complex;
	std::vector<int> dims;              ///< h_p
	std::vector<CMatrix> reps;          ///< orthonormal cocycles orthogonal to coboundaries
	std::vector<CMatrix> coboundaries;  ///< orthonormal basis of Im delta_{p-1}
	double tolerance = 0.0;
};

CohomologyData cohomology(const TwistedComplex& cx, double rel_tol = default_rank_tolerance());

/// Coordinates c of cocycle columns z with z - basis * c in Im delta_{p-1}.
/// Throws not_a_cocycle when z is not closed.
CMatrix class_coordinates(const CohomologyData& coh, int degree, const CMatrix& z,
	const CMatrix& basis);
CMatrix class_coordinates(const CohomologyData& coh, int degree, const CMatrix& z);

/// Max over consecutive pairs of ||delta_{p+1} delta_p|| / (||delta_{p+1}|| ||delta_p||).
double chain_defect(const TwistedComplex& cx);

} // namespace torvol
