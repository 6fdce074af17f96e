#include "torvol/cli.hpp"

#include "torvol/error.hpp"
#include "torvol/json_io.hpp"
#include "torvol/mv_glue.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <optional>
#include <string>

namespace torvol::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
	std::uint64_t seed = 0;
	double tol = 1e-9;
	int indent = 2;
	bool no_meta = false;
	std::string out_path;

	std::string rep_path;
	int genus = 2;
	int boundary = 0;
	int first_genus = 0;
	int k = 2;
	int trials = 20;
	std::optional<double> max_rel_err;
	std::string kind = "separating";
	std::string convention = "volume";
};

Json meta()
{
	const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
	std::tm tm{};
	gmtime_r(&now, &tm);
	char buf[32];
	std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
	return Json{{"tool", "torvol"}, {"version", kVersion}, {"created", buf}};
}

Json goodness_json(const GoodnessReport& g)
{
	return Json{{"h0_dim", g.h0_dim},
		{"irreducible", g.irreducible},
		{"trace_witness",
			{{"u", to_json(g.witness.u)}, {"v", to_json(g.witness.v)},
				{"trace_commutator", to_json(g.witness.trace_commutator)},
				{"distance_from_two", g.witness.distance_from_two}}},
		{"is_good", g.is_good}};
}

struct Outcome {
	Json report;
	bool pass = true;
};

Outcome cmd_sample(const RunConfig& c)
{
	Rng rng = substream(c.seed, 0);
	Representation rep;
	if (c.boundary == 1)
		rep = sample_bordered_rep(c.genus, rng);
	else if (c.boundary == 0 && c.genus == 2)
		rep = sample_block_rep(rng);
	else if (c.boundary == 0 && c.genus >= 4 && c.genus % 2 == 0)
		rep = sample_connected_sum(c.genus / 2, rng);
	else
		throw Error(ErrorKind::out_of_scope, "closed samples need even genus (genus-two blocks)");
	rep.seed = c.seed;
	return {to_json(rep), true};
}

Outcome cmd_cohomology(const RunConfig& c)
{
	const Representation rep = read_representation(c.rep_path);
	const TwistedComplex cx = build_complex(rep);
	const CohomologyData coh = cohomology(cx, c.tol);
	const int chi = 2 - 2 * rep.presentation.genus - rep.presentation.boundary;
	int euler = 0, sign = 1;
	for (int d : cx.dims) {
		euler += sign * d;
		sign = -sign;
	}
	Json j;
	j["genus"] = rep.presentation.genus;
	j["boundary"] = rep.presentation.boundary;
	j["cochain_dims"] = cx.dims;
	j["h"] = coh.dims;
	j["chain_defect"] = chain_defect(cx);
	j["euler_ok"] = euler == 3 * chi;
	j["goodness"] = goodness_json(check_good(rep));
	return {j, true};
}

Outcome cmd_torsion(const RunConfig& c)
{
	const Representation rep = read_representation(c.rep_path);
	const TwistedComplex cx = build_complex(rep);
	const CohomologyData coh = cohomology(cx, c.tol);
	TorsionConvention conv;
	if (c.convention == "volume")
		conv = TorsionConvention::volume;
	else if (c.convention == "inverse-volume")
		conv = TorsionConvention::inverse_volume;
	else
		throw Error(ErrorKind::out_of_scope, "unknown convention " + c.convention);
	Json j;
	j["h"] = coh.dims;
	j["convention"] = c.convention;
	j["basis"] = "harmonic";
	j["torsion"] = to_json(torsion(cx, coh.reps, conv));
	return {j, true};
}

Outcome cmd_symplectic(const RunConfig& c)
{
	const Representation rep = read_representation(c.rep_path);
	const CohomologyData coh = cohomology(build_complex(rep), c.tol);
	const SymplecticGram g = gram(rep, coh.reps[1]);
	const int n = static_cast<int>(g.w.cols()) / 2;
	double n_fact = 1.0;
	for (int i = 2; i <= n; ++i)
		n_fact *= i;
	Json j;
	j["h1"] = g.w.cols();
	j["rank"] = rank_decompose(g.w, c.tol).rank;
	j["asymmetry"] = g.asymmetry;
	j["pf"] = to_json(g.pf);
	j["pf_abs"] = std::abs(g.pf);
	j["volume_abs"] = n_fact * std::abs(g.pf);
	j["W"] = to_json(g.w);
	return {j, true};
}

Outcome cmd_witten(const RunConfig& c)
{
	const Representation rep = read_representation(c.rep_path);
	const double tol = c.max_rel_err.value_or(1e-8);
	const WittenReport w = witten_check(rep);
	Outcome o;
	o.report["h1"] = w.h1;
	o.report["torsion_abs"] = w.torsion_abs;
	o.report["pf_abs"] = w.pf_abs;
	o.report["rel_err"] = w.rel_err;
	o.report["max_rel_err"] = tol;
	o.pass = w.rel_err <= tol;
	o.report["pass"] = o.pass;
	return o;
}

Json torsions_json(const PieceTorsions& t, bool disk)
{
	return Json{{"X", to_json(t.x)}, {"X1", to_json(t.x1)}, {disk ? "D" : "X2", to_json(t.x2)},
		{"Y", to_json(t.y)}, {"corrective", to_json(t.h)}};
}

Outcome cmd_gluing(const RunConfig& c)
{
	const Representation rep = read_representation(c.rep_path);
	const double tol = c.max_rel_err.value_or(1e-8);
	Decomposition dec;
	const int g = rep.presentation.genus;
	if (c.kind == "disk-cap")
		dec = disk_cap(g);
	else if (c.kind == "separating")
		dec = separating_split(g, c.first_genus > 0 ? c.first_genus : g / 2);
	else
		throw Error(ErrorKind::out_of_scope, "unknown decomposition kind " + c.kind);
	const MVContext ctx = prepare_mv(dec, rep);
	Rng rng = substream(c.seed, 1);
	const GluingReport r = verify_gluing(ctx, rng);
	const bool disk = dec.kind == DecompositionKind::disk_cap;
	const double corr_dev = std::abs(r.construction.corrective_after - 1.0);

	Outcome o;
	o.report["kind"] = c.kind;
	o.report["dims"] = build_mv(ctx, geometric_bases(ctx)).seq.dims;
	o.report["generic"] = {{"torsions", torsions_json(r.generic, disk)}, {"rel_err", r.generic_rel_err}};
	o.report["constructed"] = {{"torsions", torsions_json(r.constructed, disk)},
		{"corrective_before", to_json(r.construction.engine_corrective)},
		{"lambda", to_json(r.construction.lambda)},
		{"corrective_dev", corr_dev},
		{"circle_dev", r.circle_dev},
		{"disk_dev", r.disk_dev},
		{"rel_err", r.constructed_rel_err}};
	o.pass = r.generic_rel_err <= tol && r.constructed_rel_err <= tol && corr_dev <= 1e-9 &&
		r.circle_dev <= 1e-12 && r.disk_dev <= 1e-12;
	o.report["max_rel_err"] = tol;
	o.report["pass"] = o.pass;
	return o;
}

Outcome cmd_main(const RunConfig& c)
{
	const double tol = c.max_rel_err.value_or(1e-6);
	const MainReport r = verify_main_theorem(c.k, c.trials, c.seed);
	Json trials = Json::array();
	for (const auto& t : r.trials)
		trials.push_back({{"index", t.index}, {"seed", t.seed}, {"k", r.k}, {"retries", t.retries},
			{"pfaffians", {{"surface", t.pf_x}, {"blocks", t.pf_blocks}}},
			{"ratio", t.ratio}, {"mismatched_ratio", t.mismatched_ratio},
			{"corrective_dev", t.max_corrective_dev}, {"product_rel_err", t.product_rel_err},
			{"rel_err", t.rel_err}});
	Outcome o;
	o.report["k"] = r.k;
	o.report["M_k"] = r.m_k;
	o.report["trials"] = std::move(trials);
	o.report["sampling_retries"] = r.sampling_retries;
	o.report["max_rel_err"] = r.max_rel_err;
	o.report["tolerance"] = tol;
	o.pass = r.max_rel_err <= tol;
	o.report["pass"] = o.pass;
	return o;
}

int exit_code(ErrorKind k)
{
	return k == ErrorKind::io ? 3 : 2;
}

} // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
	RunConfig c;
	if (const char* s = std::getenv("TORVOL_SEED")) {
		try {
			c.seed = std::stoull(s);
		} catch (const std::exception&) {
			err << "torvol: invalid TORVOL_SEED\n";
			return 2;
		}
	}
	if (const char* s = std::getenv("TORVOL_TOL")) {
		try {
			c.tol = std::stod(s);
		} catch (const std::exception&) {
			err << "torvol: invalid TORVOL_TOL\n";
			return 2;
		}
	}

	CLI::App app{"Twisted cohomology, Reidemeister torsion and symplectic volume for SL2(C) surface group representations",
		"torvol"};
	app.require_subcommand(1);
	app.fallthrough();
	app.add_option("--seed", c.seed, "global PRNG seed (env TORVOL_SEED)");
	app.add_option("--tol", c.tol, "relative rank tolerance (env TORVOL_TOL)");
	app.add_option("--json-indent", c.indent, "JSON indentation")->check(CLI::Range(0, 16));
	app.add_flag("--no-meta", c.no_meta, "omit the timestamped meta block");
	app.add_option("--out", c.out_path, "write the report to a file instead of stdout");

	std::function<Outcome(const RunConfig&)> run;
	auto rep_cmd = [&](const char* name, const char* help, Outcome (*fn)(const RunConfig&)) {
		CLI::App* s = app.add_subcommand(name, help);
		s->add_option("--rep", c.rep_path, "representation JSON file")->required();
		s->callback([&run, fn] { run = fn; });
		return s;
	};

	CLI::App* sample = app.add_subcommand("sample", "sample a good representation");
	sample->add_option("--genus", c.genus, "surface genus")->required();
	sample->add_option("--boundary", c.boundary, "number of boundary circles (0 or 1)");
	sample->callback([&] { run = cmd_sample; });

	rep_cmd("cohomology", "twisted cohomology dimensions and goodness", cmd_cohomology);
	rep_cmd("torsion", "Reidemeister torsion with harmonic cohomology bases", cmd_torsion)
		->add_option("--convention", c.convention, "volume or inverse-volume");
	rep_cmd("symplectic", "Gram matrix of the symplectic form and its Pfaffian", cmd_symplectic);
	rep_cmd("verify-witten", "compare |torsion| with |Pf W|", cmd_witten)
		->add_option("--max-rel-err", c.max_rel_err, "tolerance (default 1e-8)");
	CLI::App* glue = rep_cmd("verify-gluing", "Mayer-Vietoris gluing checks", cmd_gluing);
	glue->add_option("--kind", c.kind, "disk-cap or separating");
	glue->add_option("--first-genus", c.first_genus, "genus of X1 for separating cuts");
	glue->add_option("--max-rel-err", c.max_rel_err, "tolerance (default 1e-8)");

	CLI::App* mainc = app.add_subcommand("verify-main", "connected-sum volume constant");
	mainc->add_option("--k", c.k, "number of genus-two blocks")->required();
	mainc->add_option("--trials", c.trials, "number of trials");
	mainc->add_option("--max-rel-err", c.max_rel_err, "tolerance (default 1e-6)");
	mainc->callback([&] { run = cmd_main; });

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? 0 : 2;
	}

	if (!(c.tol > 0.0 && c.tol < 1e-3)) {
		err << "torvol: --tol must lie in (0, 1e-3)\n";
		return 2;
	}
	if (c.trials < 1) {
		err << "torvol: --trials must be at least 1\n";
		return 2;
	}
	const double saved_tol = default_rank_tolerance();
	set_default_rank_tolerance(c.tol);
	struct Restore {
		double tol;
		~Restore() { set_default_rank_tolerance(tol); }
	} restore{saved_tol};

	try {
		Outcome o = run(c);
		if (!c.no_meta)
			o.report["meta"] = meta();
		const std::string text = o.report.dump(c.indent) + "\n";
		if (c.out_path.empty())
			out << text;
		else
			write_text(c.out_path, text);
		return o.pass ? 0 : 1;
	} catch (const Error& e) {
		err << "torvol: " << e.what() << "\n";
		return exit_code(e.kind());
	} catch (const std::exception& e) {
		err << "torvol: " << e.what() << "\n";
		return 2;
	}
}

} // namespace torvol::cli
