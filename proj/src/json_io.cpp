#include "qspa/json_io.hpp"

#include <fstream>

#include "qspa/error.hpp"

namespace qspa::io {

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const Complex& z : m.entries())
    entries.push_back(json::array({z.real(), z.imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw Error(ErrorKind::io,
                "matrix JSON needs fields rows, cols and entries");
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != rows * cols)
    throw Error(ErrorKind::io, "matrix JSON entries length must be rows*cols");

  ComplexMatrix m(rows, cols);
  std::size_t idx = 0;
  for (const json& pair : entries) {
    if (!pair.is_array() || pair.size() != 2)
      throw Error(ErrorKind::io, "matrix entries must be [re, im] pairs");
    m.entries()[idx++] = Complex(pair[0].get<double>(), pair[1].get<double>());
  }
  if (!m.all_finite())
    throw Error(ErrorKind::validation, "matrix JSON has non-finite entries");
  return m;
}

json density_to_json(const states::DensityMatrix& rho) {
  json j = matrix_to_json(rho.mat());
  j["kind"] = "density";
  return j;
}

states::DensityMatrix density_from_json(const json& j) {
  return states::DensityMatrix::validate(matrix_from_json(j));
}

json kraus_to_json(const channels::KrausMap& map) {
  json ops = json::array();
  for (const ComplexMatrix& v : map.ops) ops.push_back(matrix_to_json(v));
  return json{{"kind", "kraus"},
              {"d_in", map.d_in},
              {"d_out", map.d_out},
              {"ops", ops}};
}

json map_to_json(const channels::HermitianMapSpec& map) {
  if (map.holds_kraus()) return kraus_to_json(map.kraus());
  const channels::ChoiMatrix& c = map.choi();
  return json{{"kind", "choi"},
              {"d_in", c.d_in},
              {"d_out", c.d_out},
              {"mat", matrix_to_json(c.mat)}};
}

channels::HermitianMapSpec map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error(ErrorKind::io, "map JSON needs a kind field (kraus or choi)");
  const std::string kind = j.at("kind").get<std::string>();
  const std::size_t d_in = j.at("d_in").get<std::size_t>();
  const std::size_t d_out = j.at("d_out").get<std::size_t>();
  if (kind == "kraus") {
    channels::KrausMap map;
    map.d_in = d_in;
    map.d_out = d_out;
    for (const json& op : j.at("ops")) map.ops.push_back(matrix_from_json(op));
    return channels::HermitianMapSpec::from_kraus(std::move(map));
  }
  if (kind == "choi") {
    channels::ChoiMatrix c{d_in, d_out, matrix_from_json(j.at("mat"))};
    return channels::HermitianMapSpec::from_choi(std::move(c));
  }
  throw Error(ErrorKind::io, "unknown map kind '" + kind + "'");
}

json spa_result_to_json(const channels::SpaResult& res) {
  return json{{"lambda_prime", res.lambda_prime},
              {"lambda", res.lambda},
              {"alpha", res.alpha},
              {"gamma", res.gamma},
              {"delta", res.delta},
              {"p_star", res.p_star},
              {"a", res.a},
              {"t", res.t},
              {"theta_bar", kraus_to_json(res.theta_bar)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::io, "cannot parse '" + path + "': " + e.what());
  }
  return j;
}

states::DensityMatrix load_state(const std::string& path) {
  return density_from_json(load_json_file(path));
}

channels::HermitianMapSpec load_map(const std::string& path) {
  return map_from_json(load_json_file(path));
}

}  // namespace qspa::io
