#include "unicoh/groupfile.hpp"

#include <json.hpp>

#include "unicoh/errors.hpp"

namespace unicoh {

using Json = nlohmann::ordered_json;

namespace {

Rat parse_rat_field(const Json& v, const std::string& where) {
  if (!v.is_string()) fail(Errc::ParseError, where + ": rationals must be strings \"p/q\"");
  try {
    return rat_from_string(v.get<std::string>());
  } catch (const Error&) {
    fail(Errc::ParseError, where + ": bad rational literal '" + v.get<std::string>() + "'");
  }
}

} // namespace

GroupFileData parse_group_file(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  GroupFileData data;
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
    fail(Errc::ParseError, "missing integer schema_version");
  data.schema_version = j["schema_version"].get<int>();
  if (data.schema_version != 1)
    fail(Errc::ParseError, "unsupported schema_version " + std::to_string(data.schema_version));

  if (!j.contains("torus") || !j["torus"].is_object())
    fail(Errc::ParseError, "missing torus object");
  const Json& t = j["torus"];
  if (!t.contains("n") || !t["n"].is_number_integer())
    fail(Errc::ParseError, "torus: missing integer n");
  data.torus.n = t["n"].get<int>();
  if (data.torus.n < 1) fail(Errc::ParseError, "torus: n must be >= 1");
  const int r = 2 * data.torus.n;
  if (!t.contains("J") || !t["J"].is_array() || int(t["J"].size()) != r)
    fail(Errc::ParseError, "torus: J must be a 2n x 2n array");
  data.torus.j = Mat(r, r);
  for (int i = 0; i < r; ++i) {
    const Json& row = t["J"][i];
    if (!row.is_array() || int(row.size()) != r)
      fail(Errc::ParseError, "torus: J row " + std::to_string(i) + " has wrong length");
    for (int c = 0; c < r; ++c)
      data.torus.j.at(i, c) =
          GaussRat(parse_rat_field(row[c], "torus J[" + std::to_string(i) + "]"));
  }
  try {
    validate_torus(data.torus);
  } catch (const Error& e) {
    fail(Errc::ParseError, std::string("torus: invariant violated: ") + e.what());
  }

  if (!j.contains("generators") || !j["generators"].is_array())
    fail(Errc::ParseError, "missing generators array");
  for (size_t g = 0; g < j["generators"].size(); ++g) {
    const Json& gen_json = j["generators"][g];
    const std::string where = "generator " + std::to_string(g);
    if (!gen_json.is_object() || !gen_json.contains("matrix"))
      fail(Errc::ParseError, where + ": missing matrix");
    const Json& mat = gen_json["matrix"];
    if (!mat.is_array() || int(mat.size()) != r)
      fail(Errc::ParseError, where + ": matrix must be 2n x 2n");
    TorusAutomorphism a;
    a.mat = Mat(r, r);
    for (int i = 0; i < r; ++i) {
      const Json& row = mat[i];
      if (!row.is_array() || int(row.size()) != r)
        fail(Errc::ParseError, where + ": matrix row " + std::to_string(i) + " has wrong length");
      for (int c = 0; c < r; ++c) {
        if (!row[c].is_number_integer())
          fail(Errc::ParseError, where + ": violates invariant 'integral matrix'");
        a.mat.at(i, c) = GaussRat(Rat(row[c].get<long>()));
      }
    }
    if (gen_json.contains("translation") && !gen_json["translation"].is_null()) {
      const Json& tr = gen_json["translation"];
      if (!tr.is_array() || int(tr.size()) != r)
        fail(Errc::ParseError, where + ": translation must have length 2n");
      std::vector<Rat> v(static_cast<size_t>(r), Rat(0));
      for (int i = 0; i < r; ++i)
        v[size_t(i)] = rat_mod1(parse_rat_field(tr[i], where + " translation"));
      a.translation = std::move(v);
    }
    try {
      validate_automorphism(data.torus, a);
    } catch (const Error& e) {
      fail(Errc::ParseError, where + ": violates invariant: " + e.what());
    }
    data.generators.push_back(std::move(a));
  }

  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) fail(Errc::ParseError, "metadata must be an object");
    for (const auto& [key, value] : j["metadata"].items()) {
      if (!value.is_string()) fail(Errc::ParseError, "metadata values must be strings");
      data.metadata.emplace_back(key, value.get<std::string>());
    }
  }
  return data;
}

std::string serialize_group_file(const GroupFileData& data) {
  Json j;
  j["schema_version"] = data.schema_version;
  Json torus;
  torus["n"] = data.torus.n;
  Json rows = Json::array();
  const int r = 2 * data.torus.n;
  for (int i = 0; i < r; ++i) {
    Json row = Json::array();
    for (int c = 0; c < r; ++c) row.push_back(rat_to_string(data.torus.j.at(i, c).re));
    rows.push_back(row);
  }
  torus["J"] = rows;
  j["torus"] = torus;

  Json gens = Json::array();
  for (const auto& g : data.generators) {
    Json gen_json;
    Json mat = Json::array();
    for (int i = 0; i < r; ++i) {
      Json row = Json::array();
      for (int c = 0; c < r; ++c) {
        const Int& num = g.mat.at(i, c).re.get_num();
        require(mpz_fits_slong_p(num.get_mpz_t()) != 0, Errc::Internal,
                "matrix entry too large for the wire format");
        row.push_back(long(num.get_si()));
      }
      mat.push_back(row);
    }
    gen_json["matrix"] = mat;
    if (g.translation) {
      Json tr = Json::array();
      for (const Rat& t : *g.translation) tr.push_back(rat_to_string(t));
      gen_json["translation"] = tr;
    }
    gens.push_back(gen_json);
  }
  j["generators"] = gens;

  Json meta = Json::object();
  for (const auto& [k, v] : data.metadata) meta[k] = v;
  j["metadata"] = meta;
  return j.dump(2) + "\n";
}

GroupFileData groupfile_from_case(const GalleryCase& c) {
  GroupFileData data;
  data.torus = c.torus;
  if (c.affine) {
    // affine cases travel as their block embedding into U(k+1, Z) acting on
    // the product torus of one more factor
    GroupPresentation img = affine_to_unipotent(*c.affine);
    const int k1 = img.ambient_dim;
    data.torus = square_torus(k1);
    for (const Mat& m : img.generators) {
      Mat big = Mat::zero(2 * k1, 2 * k1);
      for (int i = 0; i < k1; ++i)
        for (int j = 0; j < k1; ++j) {
          big.at(2 * i, 2 * j) = m.at(i, j);
          big.at(2 * i + 1, 2 * j + 1) = m.at(i, j);
        }
      data.generators.push_back(TorusAutomorphism{big, std::nullopt});
    }
  } else {
    data.generators = c.generators;
  }
  data.metadata.emplace_back("name", c.name);
  for (const auto& [k, v] : c.metadata) data.metadata.emplace_back(k, v);
  if (c.expected_class)
    data.metadata.emplace_back("expected_class", std::to_string(*c.expected_class));
  return data;
}

} // namespace unicoh
