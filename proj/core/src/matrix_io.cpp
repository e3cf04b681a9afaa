#include "wmtomo/matrix_io.hpp"

#include <fstream>

#include <json.hpp>

#include "wmtomo/errors.hpp"

namespace wmtomo::io {

using nlohmann::json;

linalg::ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open matrix file '" + path + "'");
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error("matrix file '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    const std::size_t dim = doc.at("dim").get<std::size_t>();
    const json& entries = doc.at("entries");
    if (dim == 0 || entries.size() != dim) {
      throw Error("matrix file '" + path + "' has inconsistent dimensions");
    }
    linalg::ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      const json& row = entries.at(r);
      if (row.size() != dim) {
        throw Error("matrix file '" + path + "' has a ragged row");
      }
      for (std::size_t c = 0; c < dim; ++c) {
        const json& pair = row.at(c);
        if (!pair.is_array() || pair.size() != 2) {
          throw Error("matrix file '" + path +
                      "' entries must be [re, im] pairs");
        }
        m(r, c) = {pair.at(0).get<double>(), pair.at(1).get<double>()};
      }
    }
    if (!m.all_finite()) {
      throw Error("matrix file '" + path + "' contains non-finite values");
    }
    return m;
  } catch (const json::exception& e) {
    throw Error("matrix file '" + path + "' is malformed: " + e.what());
  }
}

void save_matrix(const linalg::ComplexMatrix& m, const std::string& path) {
  json entries = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    entries.push_back(std::move(row));
  }
  const json doc = {{"dim", m.dim()}, {"entries", std::move(entries)}};
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write matrix file '" + path + "'");
  }
  out << doc.dump(2) << '\n';
}

}  // namespace wmtomo::io
