#include "torvol/json_io.hpp"

#include "torvol/error.hpp"

#include <fstream>
#include <sstream>

namespace torvol {

namespace {

[[noreturn]] void bad(const std::string& what)
{
	throw Error(ErrorKind::invalid_representation, "malformed JSON: " + what);
}

} // namespace

Json to_json(cplx z)
{
	return Json::array({z.real(), z.imag()});
}

cplx complex_from_json(const Json& j)
{
	if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
		bad("complex number must be [re, im]");
	return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const CMatrix& m)
{
	Json rows = Json::array();
	for (Eigen::Index i = 0; i < m.rows(); ++i) {
		Json row = Json::array();
		for (Eigen::Index j = 0; j < m.cols(); ++j)
			row.push_back(to_json(m(i, j)));
		rows.push_back(std::move(row));
	}
	return rows;
}

CMatrix matrix_from_json(const Json& j)
{
	if (!j.is_array())
		bad("matrix must be a list of rows");
	const auto rows = static_cast<Eigen::Index>(j.size());
	const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
	CMatrix m(rows, cols);
	for (Eigen::Index i = 0; i < rows; ++i) {
		if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
			bad("ragged matrix");
		for (Eigen::Index k = 0; k < cols; ++k)
			m(i, k) = complex_from_json(j[i][k]);
	}
	return m;
}

Json to_json(const GroupWord& w)
{
	Json out = Json::array();
	for (const Letter& l : w.letters())
		out.push_back(Json::array({l.gen, l.exp}));
	return out;
}

GroupWord word_from_json(const Json& j)
{
	if (!j.is_array())
		throw Error(ErrorKind::malformed_word, "word must be a list of [idx, exp]");
	std::vector<Letter> letters;
	for (const auto& l : j) {
		if (!l.is_array() || l.size() != 2 || !l[0].is_number_integer() || !l[1].is_number_integer())
			throw Error(ErrorKind::malformed_word, "letter must be [idx, exp]");
		letters.push_back({l[0].get<int>(), l[1].get<int>()});
	}
	return GroupWord(std::move(letters));
}

Json to_json(const Presentation& p)
{
	Json j;
	j["genus"] = p.genus;
	j["boundary"] = p.boundary;
	j["relator"] = p.relators.empty() ? Json(nullptr) : to_json(p.relators.front());
	Json sep = Json::object();
	for (const auto& [name, w] : p.boundary_words)
		sep[name] = to_json(w);
	j["separating"] = std::move(sep);
	return j;
}

Presentation presentation_from_json(const Json& j)
{
	if (!j.is_object() || !j.contains("genus") || !j.contains("boundary"))
		bad("presentation needs genus and boundary");
	Presentation p = surface_presentation(j["genus"].get<int>(), j["boundary"].get<int>());
	if (j.contains("relator") && !j["relator"].is_null()) {
		if (p.relators.empty() || word_from_json(j["relator"]) != p.relators.front())
			bad("relator does not match the surface presentation");
	}
	if (j.contains("separating"))
		for (const auto& [name, w] : j["separating"].items()) {
			const GroupWord* known = p.find_word(name);
			if (!known || *known != word_from_json(w))
				bad("unknown or mismatched circle word " + name);
		}
	return p;
}

Json to_json(const Representation& rep)
{
	Json j;
	j["presentation"] = to_json(rep.presentation);
	Json images = Json::array();
	for (const auto& g : rep.images)
		images.push_back(to_json(CMatrix(g.matrix())));
	j["images"] = std::move(images);
	j["seed"] = rep.seed;
	j["method"] = rep.method;
	return j;
}

Representation representation_from_json(const Json& j)
{
	if (!j.is_object() || !j.contains("presentation") || !j.contains("images"))
		bad("representation needs presentation and images");
	Presentation p = presentation_from_json(j["presentation"]);
	std::vector<SL2Matrix> images;
	for (const auto& m : j["images"]) {
		const CMatrix c = matrix_from_json(m);
		if (c.rows() != 2 || c.cols() != 2)
			bad("image is not 2x2");
		images.push_back(SL2Matrix::checked(Mat2(c)));
	}
	const auto seed = j.value("seed", std::uint64_t{0});
	return make_representation(std::move(p), std::move(images), seed, j.value("method", std::string("file")));
}

Json to_json(const TorsionValue& t)
{
	Json j;
	j["abs"] = std::abs(t.value);
	j["arg"] = std::arg(t.value);
	j["value"] = to_json(t.value);
	j["sign_ambiguous"] = t.sign_ambiguous;
	return j;
}

Representation read_representation(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw Error(ErrorKind::io, "cannot open " + path);
	Json j;
	try {
		j = Json::parse(in);
	} catch (const nlohmann::json::exception& e) {
		throw Error(ErrorKind::io, "cannot parse " + path + ": " + e.what());
	}
	try {
		return representation_from_json(j);
	} catch (const nlohmann::json::exception& e) {
		bad(e.what());
	}
}

void write_text(const std::string& path, const std::string& text)
{
	std::ofstream out(path);
	if (!out)
		throw Error(ErrorKind::io, "cannot write " + path);
	out << text;
	if (!out)
		throw Error(ErrorKind::io, "write failed for " + path);
}

} // namespace torvol
