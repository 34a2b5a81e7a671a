#include "fosc/io.hpp"

#include <set>
#include <string>

#include "fosc/errors.hpp"

namespace fosc {
namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed,
                    const std::string& what) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw InvalidArgument(what + ": unknown field '" + key + "'");
  }
}

double number_field(const nlohmann::json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InvalidArgument(what + ": missing field '" + key + "'");
  if (!j.at(key).is_number()) throw InvalidArgument(what + ": field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

nlohmann::json to_json(const NonlinearitySpec& spec) {
  switch (spec.kind()) {
    case NonlinearityKind::Identity:
      return {{"kind", "identity"}};
    case NonlinearityKind::QOscillator:
      return {{"kind", "q"}, {"lambda", spec.lambda()}};
    case NonlinearityKind::Kerr:
      return {{"kind", "kerr"}, {"chi", spec.chi()}};
    case NonlinearityKind::Custom:
      if (!spec.is_tabulated()) {
        throw InvalidArgument("closed-form custom nonlinearity cannot be serialized");
      }
      return {{"kind", "custom"}, {"table", spec.table()}};
  }
  return {};
}

NonlinearitySpec nonlinearity_from_json(const nlohmann::json& j) {
  const std::string what = "nonlinearity";
  if (!j.is_object()) throw InvalidArgument(what + ": expected an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw InvalidArgument(what + ": missing string field 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "identity") {
    reject_unknown(j, {"kind"}, what);
    return NonlinearitySpec::identity();
  }
  if (kind == "q") {
    reject_unknown(j, {"kind", "lambda"}, what);
    return NonlinearitySpec::q_oscillator(number_field(j, "lambda", what));
  }
  if (kind == "kerr") {
    reject_unknown(j, {"kind", "chi"}, what);
    return NonlinearitySpec::kerr(number_field(j, "chi", what));
  }
  if (kind == "custom") {
    reject_unknown(j, {"kind", "table"}, what);
    if (!j.contains("table") || !j.at("table").is_array()) {
      throw InvalidArgument(what + ": custom kind requires array field 'table'");
    }
    std::vector<double> table;
    for (const auto& v : j.at("table")) {
      if (!v.is_number()) throw InvalidArgument(what + ": table entries must be numbers");
      table.push_back(v.get<double>());
    }
    return NonlinearitySpec::custom_table(std::move(table));
  }
  throw InvalidArgument(what + ": unknown kind '" + kind + "'");
}

nlohmann::json to_json(const DensityMatrix& rho) {
  const auto n = rho.dim();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < n; ++r) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < n; ++c) {
      re_row.push_back(rho(r, c).real());
      im_row.push_back(rho(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  const std::string what = "density matrix";
  if (!j.is_object()) throw InvalidArgument(what + ": expected an object");
  reject_unknown(j, {"dim", "re", "im"}, what);
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) {
    throw InvalidArgument(what + ": missing integer field 'dim'");
  }
  const auto n = j.at("dim").get<Eigen::Index>();
  if (n < 1) throw InvalidArgument(what + ": dim must be >= 1");
  ComplexMatrix m(n, n);
  auto read_part = [&](const char* key, bool imag) {
    if (!j.contains(key) || !j.at(key).is_array() || static_cast<Eigen::Index>(j.at(key).size()) != n) {
      throw InvalidArgument(what + ": field '" + key + "' must be a dim x dim array");
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto& row = j.at(key).at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw InvalidArgument(what + ": field '" + key + "' must be a dim x dim array");
      }
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto& v = row.at(static_cast<std::size_t>(c));
        if (!v.is_number()) throw InvalidArgument(what + ": entries must be numbers");
        const double x = v.get<double>();
        if (imag) {
          m(r, c).imag(x);
        } else {
          m(r, c) = Complex(x, 0.0);
        }
      }
    }
  };
  read_part("re", false);
  read_part("im", true);
  return DensityMatrix(std::move(m));
}

}  // namespace fosc
