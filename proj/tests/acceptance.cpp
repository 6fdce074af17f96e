// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "torvol/cochain.hpp"
#include "torvol/error.hpp"
#include "torvol/mv_glue.hpp"
#include "torvol/numlin.hpp"
#include "torvol/reps.hpp"
#include "torvol/symplectic.hpp"
#include "torvol/torsion.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace torvol;

namespace {

struct Outcome {
	bool pass = false;
	std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
	char buf[256];
	std::snprintf(buf, sizeof buf, f, a, b, c);
	return buf;
}

double rel(double a, double b)
{
	return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

Representation genus4(std::uint64_t seed)
{
	Rng rng = substream(seed, 0);
	return sample_connected_sum(2, rng);
}

Representation genus2(std::uint64_t seed)
{
	Rng rng = substream(seed, 0);
	return sample_block_rep(rng);
}

Outcome main_theorem()
{
	const auto t0 = std::chrono::steady_clock::now();
	const MainReport r = verify_main_theorem(2, 20, 0);
	const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	const bool ok = r.trials.size() == 20 && r.max_rel_err < 1e-6 && secs < 30.0;
	return {ok, fmt("k=2 trials=20 M_2=%.0f max_rel_err=%.2e time=%.2fs", r.m_k, r.max_rel_err, secs)};
}

Outcome witten()
{
	double e2 = 0.0, e4 = 0.0;
	for (std::uint64_t s = 0; s < 20; ++s) {
		e2 = std::max(e2, witten_check(genus2(100 + s)).rel_err);
		e4 = std::max(e4, witten_check(genus4(200 + s)).rel_err);
	}
	return {e2 < 1e-8 && e4 < 1e-7, fmt("20 seeds: genus 2 max %.2e (<1e-8), genus 4 max %.2e (<1e-7)", e2, e4)};
}

Outcome gluing()
{
	double cap = 0.0, sep = 0.0;
	for (std::uint64_t s = 0; s < 5; ++s) {
		Rng rng = substream(300 + s, 1);
		cap = std::max(cap, verify_gluing(prepare_mv(disk_cap(2), genus2(300 + s)), rng).generic_rel_err);
		sep = std::max(sep, verify_gluing(prepare_mv(separating_split(4, 2), genus4(400 + s)), rng).generic_rel_err);
	}
	return {cap < 1e-8 && sep < 1e-8,
		fmt("random bases, 5 seeds each: disk-cap max %.2e, separating max %.2e (<1e-8)", cap, sep)};
}

Outcome corrective()
{
	double corr = 0.0, circle = 0.0, disk = 0.0;
	for (std::uint64_t s = 0; s < 5; ++s) {
		Rng rng = substream(500 + s, 1);
		for (const MVContext& ctx : {prepare_mv(disk_cap(2), genus2(500 + s)),
				 prepare_mv(separating_split(4, 2), genus4(600 + s))}) {
			const GluingReport g = verify_gluing(ctx, rng);
			corr = std::max(corr, std::abs(g.construction.corrective_after - 1.0));
			circle = std::max(circle, g.circle_dev);
			disk = std::max(disk, g.disk_dev);
		}
	}
	return {corr < 1e-9 && circle < 1e-12 && disk == 0.0,
		fmt("constructed bases: |H-1| max %.2e (<1e-9), circle dev %.2e (<1e-12), disk dev %.1e (==0)", corr,
			circle, disk)};
}

Outcome dimension_ledger()
{
	bool ok = true;
	std::string detail;
	auto expect = [&](const std::string& name, const std::vector<int>& got, const std::vector<int>& want) {
		if (got != want) {
			ok = false;
			detail += name + " mismatch; ";
		}
	};
	for (std::uint64_t s = 0; s < 5; ++s) {
		Rng rng = substream(700 + s, 0);
		const Representation g2 = genus2(700 + s);
		const Representation g4 = genus4(800 + s);
		const Representation b2 = sample_bordered_rep(2, rng);
		expect("genus 2", cohomology(build_complex(g2)).dims, {0, 6, 0});
		expect("genus 4", cohomology(build_complex(g4)).dims, {0, 18, 0});
		expect("bordered genus 2", cohomology(build_complex(b2)).dims, {0, 9});
		const MVContext cap = prepare_mv(disk_cap(2), g2);
		expect("disk-cap", build_mv(cap, geometric_bases(cap)).seq.dims, {0, 3, 3, 6, 9, 3, 0});
		const MVContext sep = prepare_mv(separating_split(4, 2), g4);
		expect("separating", build_mv(sep, geometric_bases(sep)).seq.dims, {0, 0, 3, 18, 18, 3, 0});
	}
	if (ok)
		detail = "H^*: genus 2 (0,6,0), genus 4 (0,18,0), bordered (0,9); sequences 0-3-3-6-9-3-0 and 0-0-3-18-18-3-0";
	return {ok, detail};
}

Outcome structural()
{
	double defect = 0.0, asym = 0.0, pf = 0.0, exact = 0.0;
	bool exact_ok = true;
	for (std::uint64_t s = 0; s < 5; ++s) {
		const Representation g4 = genus4(900 + s);
		const TwistedComplex cx = build_complex(g4);
		defect = std::max(defect, chain_defect(cx));
		const SymplecticGram g = gram(g4, cohomology(cx).reps[1]);
		asym = std::max(asym, g.asymmetry);
		const cplx det = g.w.partialPivLu().determinant();
		pf = std::max(pf, std::abs(g.pf * g.pf - det) / std::abs(det));
		const MVContext sep = prepare_mv(separating_split(4, 2), g4);
		const MVSequence mv = build_mv(sep, geometric_bases(sep));
		exact = std::max(exact, mv.exactness.max_composite);
		exact_ok = exact_ok && mv.exactness.exact;
	}
	const bool ok = defect < 1e-10 && asym < 1e-8 && pf < 1e-8 && exact_ok && exact < 1e-9;
	return {ok, fmt("delta^2 %.1e, W asymmetry %.1e, |Pf^2-det|/|det| %.1e", defect, asym, pf) +
			fmt(", sequence composites %.1e", exact)};
}

Outcome scaling()
{
	double worst = 0.0, worst_pf = 0.0;
	bool ok = true;
	for (std::uint64_t s = 0; s < 5; ++s) {
		Rng rng = substream(1000 + s, 1);
		const Representation g2 = genus2(1000 + s);
		const Representation b2 = sample_bordered_rep(2, rng);
		for (const Representation* rep : {&g2, &b2}) {
			const TwistedComplex cx = build_complex(*rep);
			const CohomologyData coh = cohomology(cx);
			const Eigen::Index n = coh.reps[1].cols();
			std::normal_distribution<double> nd;
			CMatrix p(n, n);
			for (Eigen::Index i = 0; i < p.size(); ++i)
				p.data()[i] = cplx(nd(rng), nd(rng));
			for (TorsionConvention c : {TorsionConvention::volume, TorsionConvention::inverse_volume}) {
				const ScalingReport r = basis_scaling_check(cx, coh.reps, p, 1, c);
				ok = ok && r.pass && r.exponent == r.expected_exponent;
				worst = std::max(worst, r.rel_err);
			}
			if (rep->presentation.boundary == 0) {
				const cplx pf0 = gram(*rep, coh.reps[1]).pf;
				const cplx pf1 = gram(*rep, coh.reps[1] * p).pf;
				worst_pf = std::max(worst_pf, std::abs(pf1 - p.determinant() * pf0) / std::abs(pf1));
			}
		}
	}
	ok = ok && worst < 1e-9 && worst_pf < 1e-8;
	return {ok, fmt("T(hP)=det(P)^(+-1)T(h) max rel err %.2e, Pf(P^T W P)=det(P)Pf(W) max rel err %.2e", worst,
		worst_pf)};
}

} // namespace

int main()
{
	const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
		{"main-theorem-k2", main_theorem},
		{"torsion-equals-pfaffian", witten},
		{"mayer-vietoris-gluing", gluing},
		{"compatible-bases-corrective", corrective},
		{"dimension-ledger", dimension_ledger},
		{"structural-numerics", structural},
		{"scaling-laws", scaling},
	};
	int failures = 0;
	for (const auto& [name, run] : criteria) {
		Outcome o;
		try {
			o = run();
		} catch (const std::exception& e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		failures += o.pass ? 0 : 1;
		std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
		std::fflush(stdout);
	}
	std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
	return failures == 0 ? 0 : 1;
}
