#pragma once

// SL2(C) representations of surface groups: seeded sampling, the
// commutator-equation solver, goodness checks and condition (C).

#include "torvol/lie_sl2.hpp"
#include "torvol/words.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace torvol {

using Rng = std::mt19937_64;

/// Independent PRNG stream for task `index` under a global seed.
Rng substream(std::uint64_t seed, std::uint64_t index);

struct Representation {
	Presentation presentation;
	std::vector<SL2Matrix> images; ///< one per generator
	std::uint64_t seed = 0;
	std::string method;

	/// Max Frobenius distance of a relator image from I (0 for free groups).
	double relator_residual() const;
	SL2Matrix evaluate(const GroupWord& w) const { return evaluate_word(images, w); }
	/// Conjugate representation g rho g^{-1}.
	Representation conjugated(const SL2Matrix& g) const;
};

/// Validates image count, determinants and relators (throws invalid_representation).
Representation make_representation(Presentation pres, std::vector<SL2Matrix> images,
	std::uint64_t seed = 0, std::string method = "explicit", double relator_tol = 1e-10);

struct TraceWitness {
	GroupWord u, v;
	cplx trace_commutator = 2.0;
	double distance_from_two = 0.0;
};

struct GoodnessReport {
	int h0_dim = 3;
	bool irreducible = false;
	TraceWitness witness;
	bool is_good = false;
};

SL2Matrix random_sl2(Rng& rng);

/// (a, b) with [a, b] = T; throws solver_failure after 50 restarts and
/// rejects near-parabolic targets.
std::pair<SL2Matrix, SL2Matrix> solve_commutator(const SL2Matrix& target, Rng& rng);

/// Good representation of the closed genus-two surface group.
Representation sample_block_rep(Rng& rng);

/// Free-group (one boundary) representation with random generator images.
Representation sample_bordered_rep(int genus, Rng& rng);

/// Genus 2k representation with block i on generators x_{4i-3..4i}.
Representation assemble_connected_sum(const std::vector<Representation>& blocks);

/// Samples k good blocks and assembles them.
Representation sample_connected_sum(int k, Rng& rng);

GoodnessReport check_good(const Representation& rep);

/// Restriction to blocks [first, first + count) (0-based) as a genus 2*count
/// surface with the given boundary count. Closed restrictions require the
/// block product to map to I.
Representation restrict_blocks(const Representation& rep, int first, int count, int boundary);

struct ConditionCReport {
	struct Circle {
		std::string name;
		double residual = 0.0;
		bool ok = false;
	};
	struct Piece {
		std::string name; ///< e.g. "block2", "prefix2"
		GoodnessReport closed;
		GoodnessReport bordered;
	};
	int k = 0;
	std::vector<Circle> circles;
	std::vector<Piece> blocks;
	/// First j blocks, j = 2..k-1; needed by the iterated gluing.
	std::vector<Piece> prefixes;
	bool all_pass = false;
};

ConditionCReport check_condition_C(const Representation& rep, int k);

} // namespace torvol
