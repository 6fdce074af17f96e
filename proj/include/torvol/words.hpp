#pragma once

// Free-group words over 1-based generator indices, the integral group ring,
// Fox derivatives, and the surface-group presentations used throughout.

#include "torvol/lie_sl2.hpp"

#include <compare>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace torvol {

struct Letter {
	int gen = 1; ///< 1-based generator index
	int exp = 1; ///< +1 or -1

	auto operator<=>(const Letter&) const = default;
	Letter inverse() const { return {gen, -exp}; }
};

class GroupWord {
public:
	GroupWord() = default;
	explicit GroupWord(std::vector<Letter> letters);

	static GroupWord generator(int gen, int exp = 1) { return GroupWord({{gen, exp}}); }

	const std::vector<Letter>& letters() const { return letters_; }
	std::size_t size() const { return letters_.size(); }
	bool empty() const { return letters_.empty(); }

	/// Freely reduced copy (no x x^-1 adjacency).
	GroupWord reduced() const;
	GroupWord inverse() const;
	int max_generator() const;

	GroupWord operator*(const GroupWord& o) const;
	auto operator<=>(const GroupWord&) const = default;

private:
	std::vector<Letter> letters_;
};

GroupWord commutator(const GroupWord& a, const GroupWord& b);

/// Element of Z[F]: integer combination of freely reduced words.
class GroupRingElement {
public:
	GroupRingElement() = default;
	static GroupRingElement of(const GroupWord& w, long coeff = 1);
	static GroupRingElement one() { return of(GroupWord()); }

	const std::map<GroupWord, long>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	long coefficient(const GroupWord& w) const;

	GroupRingElement& operator+=(const GroupRingElement& o);
	GroupRingElement operator+(const GroupRingElement& o) const;
	GroupRingElement operator-(const GroupRingElement& o) const;
	GroupRingElement operator*(const GroupRingElement& o) const;
	/// Left multiplication by a group element.
	GroupRingElement left_mul(const GroupWord& w) const;
	bool operator==(const GroupRingElement&) const = default;

private:
	void add(const GroupWord& w, long c);
	std::map<GroupWord, long> terms_;
};

/// Left Fox derivative d w / d x_gen.
GroupRingElement fox_derivative(const GroupWord& w, int gen);

/// Ordered product of generator images (and inverses).
SL2Matrix evaluate_word(std::span<const SL2Matrix> images, const GroupWord& w);

/// One-relator (closed) or free (one boundary) surface presentation.
struct Presentation {
	int genus = 0;
	int boundary = 0;
	int generator_count = 0;
	std::vector<GroupWord> relators;
	/// Named boundary / separating circles ("boundary", "S1_1", ...).
	std::vector<std::pair<std::string, GroupWord>> boundary_words;

	const GroupWord* find_word(const std::string& name) const;
	bool operator==(const Presentation&) const = default;
};

/// prod_{i=1..genus} [x_{2i-1}, x_{2i}]
GroupWord surface_word(int genus, int first_generator = 1);

/// Presentation of Sigma_{genus, boundary}; boundary must be 0 or 1.
/// Even genus closed surfaces also carry the separating words S1_j of the
/// decomposition into genus-two blocks.
Presentation surface_presentation(int genus, int boundary);

std::string to_string(const GroupWord& w);

} // namespace torvol
