#include "torvol/words.hpp"

#include "torvol/error.hpp"

#include <algorithm>

namespace torvol {

GroupWord::GroupWord(std::vector<Letter> letters) : letters_(std::move(letters))
{
	for (const auto& l : letters_) {
		if (l.gen < 1 || (l.exp != 1 && l.exp != -1))
			throw Error(ErrorKind::malformed_word,
				"letter (" + std::to_string(l.gen) + "," + std::to_string(l.exp) + ")");
	}
}

GroupWord GroupWord::reduced() const
{
	std::vector<Letter> stack;
	stack.reserve(letters_.size());
	for (const auto& l : letters_) {
		if (!stack.empty() && stack.back() == l.inverse())
			stack.pop_back();
		else
			stack.push_back(l);
	}
	GroupWord out;
	out.letters_ = std::move(stack);
	return out;
}

GroupWord GroupWord::inverse() const
{
	GroupWord out;
	out.letters_.reserve(letters_.size());
	for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
		out.letters_.push_back(it->inverse());
	return out;
}

int GroupWord::max_generator() const
{
	int m = 0;
	for (const auto& l : letters_)
		m = std::max(m, l.gen);
	return m;
}

GroupWord GroupWord::operator*(const GroupWord& o) const
{
	GroupWord out = *this;
	out.letters_.insert(out.letters_.end(), o.letters_.begin(), o.letters_.end());
	return out;
}

GroupWord commutator(const GroupWord& a, const GroupWord& b)
{
	return a * b * a.inverse() * b.inverse();
}

GroupRingElement GroupRingElement::of(const GroupWord& w, long coeff)
{
	GroupRingElement z;
	z.add(w, coeff);
	return z;
}

void GroupRingElement::add(const GroupWord& w, long c)
{
	if (c == 0)
		return;
	const GroupWord r = w.reduced();
	auto it = terms_.find(r);
	if (it == terms_.end()) {
		terms_.emplace(r, c);
	} else {
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

long GroupRingElement::coefficient(const GroupWord& w) const
{
	auto it = terms_.find(w.reduced());
	return it == terms_.end() ? 0 : it->second;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o)
{
	for (const auto& [w, c] : o.terms_)
		add(w, c);
	return *this;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const
{
	GroupRingElement out = *this;
	out += o;
	return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const
{
	GroupRingElement out = *this;
	for (const auto& [w, c] : o.terms_)
		out.add(w, -c);
	return out;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const
{
	GroupRingElement out;
	for (const auto& [u, a] : terms_)
		for (const auto& [v, b] : o.terms_)
			out.add(u * v, a * b);
	return out;
}

GroupRingElement GroupRingElement::left_mul(const GroupWord& w) const
{
	GroupRingElement out;
	for (const auto& [u, a] : terms_)
		out.add(w * u, a);
	return out;
}

GroupRingElement fox_derivative(const GroupWord& w, int gen)
{
	// d(uv) = du + u dv, dx = 1, dx^-1 = -x^-1
	GroupRingElement out;
	GroupWord prefix;
	for (const auto& l : w.letters()) {
		if (l.gen == gen) {
			if (l.exp == 1)
				out += GroupRingElement::of(prefix, 1);
			else
				out += GroupRingElement::of(prefix * GroupWord::generator(gen, -1), -1);
		}
		prefix = prefix * GroupWord::generator(l.gen, l.exp);
	}
	return out;
}

SL2Matrix evaluate_word(std::span<const SL2Matrix> images, const GroupWord& w)
{
	SL2Matrix out;
	for (const auto& l : w.letters()) {
		if (l.gen > static_cast<int>(images.size()))
			throw Error(ErrorKind::malformed_word,
				"generator " + std::to_string(l.gen) + " beyond " + std::to_string(images.size()));
		const SL2Matrix& g = images[l.gen - 1];
		out = l.exp == 1 ? out * g : out * g.inverse();
	}
	return out;
}

const GroupWord* Presentation::find_word(const std::string& name) const
{
	for (const auto& [n, w] : boundary_words)
		if (n == name)
			return &w;
	return nullptr;
}

GroupWord surface_word(int genus, int first_generator)
{
	GroupWord w;
	for (int i = 0; i < genus; ++i) {
		const int a = first_generator + 2 * i;
		w = w * commutator(GroupWord::generator(a), GroupWord::generator(a + 1));
	}
	return w;
}

Presentation surface_presentation(int genus, int boundary)
{
	if (genus < 1)
		throw Error(ErrorKind::out_of_scope, "genus must be at least 1");
	if (boundary != 0 && boundary != 1)
		throw Error(ErrorKind::out_of_scope, "only 0 or 1 boundary circles are supported");

	Presentation p;
	p.genus = genus;
	p.boundary = boundary;
	p.generator_count = 2 * genus;
	const GroupWord full = surface_word(genus);
	if (boundary == 0)
		p.relators.push_back(full);
	else
		p.boundary_words.emplace_back("boundary", full);

	if (boundary == 0 && genus % 2 == 0) {
		for (int j = 1; j < genus / 2; ++j)
			p.boundary_words.emplace_back("S1_" + std::to_string(j), surface_word(2 * j));
	}
	return p;
}

std::string to_string(const GroupWord& w)
{
	std::string s;
	for (const auto& l : w.letters()) {
		s += "x" + std::to_string(l.gen);
		if (l.exp == -1)
			s += "^-1";
		s += ' ';
	}
	if (!s.empty())
		s.pop_back();
	return s.empty() ? "1" : s;
}

} // namespace torvol
