#pragma once

// Reidemeister torsion of based cochain complexes and of exact sequences.

#include "torvol/cochain.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace torvol {

/// Exponent attached to degree p. `volume` uses (-1)^{p+1}, which makes
/// |torsion| of a closed surface equal the symplectic volume |Pf W|;
/// `inverse_volume` uses (-1)^p and returns the reciprocal.
enum class TorsionConvention { volume, inverse_volume };

struct TorsionValue {
	std::complex<double> value = 1.0;
	bool sign_ambiguous = true;
	std::uint64_t choices_digest = 0;

	double abs() const { return std::abs(value); }
};

/// Torsion with cohomology bases h_bases[p] (columns are cocycles). When
/// `rng` is given, image bases and sections are randomized.
TorsionValue torsion(const TwistedComplex& cx, const std::vector<CMatrix>& h_bases,
	TorsionConvention convention = TorsionConvention::volume, Rng* rng = nullptr);

/// Empty cohomology bases (0 columns) for every degree except `degree`.
std::vector<CMatrix> h_bases_only(const TwistedComplex& cx, int degree, const CMatrix& basis);

/// Exact sequence V_0 -> V_1 -> ... with basis bases[p] of V_p (columns in
/// the ambient coordinates of V_p) and maps[p] : V_p -> V_{p+1}.
struct BasedSequence {
	std::vector<int> dims;
	std::vector<CMatrix> bases;
	std::vector<CMatrix> maps;
};

/// Sequence with identity bases.
BasedSequence make_sequence(std::vector<int> dims, std::vector<CMatrix> maps);

struct ExactnessReport {
	double max_composite = 0.0; ///< relative ||f_{p+1} f_p||
	std::vector<int> ranks;
	bool ranks_telescope = false;
	bool exact = false;
};

ExactnessReport check_exact(const BasedSequence& seq, double tol = 1e-9);

/// Corrective term: exponent (-1)^{p+1} at position p. Throws not_exact.
TorsionValue sequence_torsion(const BasedSequence& seq, double exact_tol = 1e-9);

struct ScalingReport {
	std::complex<double> ratio;    ///< T(h P) / T(h)
	std::complex<double> det_p;
	int exponent = 0;              ///< e with ratio = det(P)^e up to sign
	int expected_exponent = 0;     ///< fixed by the convention
	double rel_err = 0.0;          ///< ||ratio| - |det P|^e| / |det P|^e
	bool pass = false;
};

/// Compares T(cx, h with h[degree] -> h[degree] P) with T(cx, h).
ScalingReport basis_scaling_check(const TwistedComplex& cx, const std::vector<CMatrix>& h,
	const CMatrix& p, int degree = 1, TorsionConvention convention = TorsionConvention::volume,
	double tol = 1e-9);

} // namespace torvol
