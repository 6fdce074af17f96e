#pragma once

// Shared helpers and independent oracles for the unit tests.

#include "torvol/mv_glue.hpp"

#include <doctest.h>

#include <cmath>
#include <deque>
#include <random>
#include <vector>

namespace testing {

using namespace torvol;

inline CMatrix random_cmatrix(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
	std::normal_distribution<double> n(0.0, 1.0);
	CMatrix m(rows, cols);
	for (Eigen::Index j = 0; j < cols; ++j)
		for (Eigen::Index i = 0; i < rows; ++i) {
			const double re = n(rng);
			const double im = n(rng);
			m(i, j) = cplx(re, im);
		}
	return m;
}

inline CMatrix random_antisymmetric(Eigen::Index n, Rng& rng)
{
	const CMatrix a = random_cmatrix(n, n, rng);
	return a - a.transpose();
}

inline LieVec random_lie(Rng& rng)
{
	return LieVec(Vec3(random_cmatrix(3, 1, rng)));
}

// Pfaffian by expansion along the first row
inline cplx pfaffian_expansion(const CMatrix& w)
{
	const Eigen::Index n = w.rows();
	if (n == 0)
		return 1.0;
	cplx total = 0.0;
	for (Eigen::Index j = 1; j < n; ++j) {
		std::vector<Eigen::Index> keep;
		for (Eigen::Index k = 1; k < n; ++k)
			if (k != j)
				keep.push_back(k);
		CMatrix minor(n - 2, n - 2);
		for (std::size_t a = 0; a < keep.size(); ++a)
			for (std::size_t b = 0; b < keep.size(); ++b)
				minor(a, b) = w(keep[a], keep[b]);
		total += (j % 2 == 1 ? 1.0 : -1.0) * w(0, j) * pfaffian_expansion(minor);
	}
	return total;
}

inline double rel(cplx a, cplx b)
{
	return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double rel(double a, double b)
{
	return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline Mat2 mat2(cplx a, cplx b, cplx c, cplx d)
{
	Mat2 m;
	m << a, b, c, d;
	return m;
}

inline const Representation& block_rep(int index)
{
	static std::deque<Representation> cache;
	while (static_cast<int>(cache.size()) <= index) {
		Rng rng = substream(2024, cache.size());
		cache.push_back(sample_block_rep(rng));
	}
	return cache[index];
}

inline const Representation& genus4_rep()
{
	static const Representation rep = assemble_connected_sum({block_rep(0), block_rep(1)});
	return rep;
}

} // namespace testing
