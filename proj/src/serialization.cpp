#include "gamepoly/serialization.hpp"

#include <cmath>
#include <stdexcept>

namespace gamepoly {
namespace {

using nlohmann::json;

template <typename Tensor>
void tensor_to_json(json& j, const Tensor& t) {
  j = json{{"n", t.strategies()}, {"d", t.group_size()},
           {"entries", std::vector<double>(t.entries().begin(), t.entries().end())}};
}

void require_keys(const json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw std::invalid_argument("expected a JSON object");
  for (const char* k : keys) {
    if (!j.contains(k)) throw std::invalid_argument(std::string("missing JSON key '") + k + "'");
  }
}

json end_to_json(double v) { return std::isinf(v) ? json(nullptr) : json(v); }
double end_from_json(const json& j) { return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>(); }

}  // namespace

void to_json(json& j, const PayoffTensor& t) { tensor_to_json(j, t); }
void to_json(json& j, const BetaTensor& t) { tensor_to_json(j, t); }
void to_json(json& j, const CoefficientSystem& s) { tensor_to_json(j, s); }

void to_json(json& j, const UnivariatePoly& p) {
  j = json{{"coefficients", std::vector<double>(p.coefficients().begin(), p.coefficients().end())},
           {"degenerate", p.degenerate()}};
}

void to_json(json& j, const RootCountReport& r) {
  json intervals = json::array();
  for (const Interval& i : r.intervals) intervals.push_back({end_to_json(i.lower), end_to_json(i.upper)});
  j = json{{"count", r.count},     {"intervals", intervals},       {"roots", r.roots},
           {"points", r.points},   {"degenerate", r.degenerate}};
}

void from_json(const json& j, RootCountReport& r) {
  require_keys(j, {"count", "intervals", "roots", "points", "degenerate"});
  r.count = j.at("count").get<int>();
  r.intervals.clear();
  for (const json& i : j.at("intervals")) r.intervals.push_back({end_from_json(i.at(0)), end_from_json(i.at(1))});
  r.roots = j.at("roots").get<std::vector<double>>();
  r.points = j.at("points").get<std::vector<std::vector<double>>>();
  r.degenerate = j.at("degenerate").get<bool>();
}

void to_json(json& j, const EnsembleDescriptor& e) {
  j = json{{"n", e.n},
           {"d", e.d},
           {"dist", std::string(to_string(e.dist))},
           {"scheme", std::string(to_string(e.scheme))},
           {"symmetric", e.symmetric},
           {"side", std::string(to_string(e.side))},
           {"conforming", e.conforming()}};
}

void from_json(const json& j, EnsembleDescriptor& e) {
  require_keys(j, {"n", "d", "dist", "scheme", "symmetric", "side"});
  e.n = j.at("n").get<int>();
  e.d = j.at("d").get<int>();
  e.dist = parse_distribution(j.at("dist").get<std::string>());
  e.scheme = parse_scheme(j.at("scheme").get<std::string>());
  e.symmetric = j.at("symmetric").get<bool>();
  e.side = parse_root_side(j.at("side").get<std::string>());
}

void to_json(json& j, const MonteCarloSummary& s) {
  j = json{{"schema_version", kSummarySchemaVersion},
           {"ensemble", s.ensemble()},
           {"seed", s.seed()},
           {"samples", s.samples()},
           {"sum", s.sum()},
           {"sum_squares", s.sum_squares()},
           {"degenerate", s.degenerate()},
           {"histogram", s.histogram()}};
  if (s.samples() > 0) {
    j["mean"] = s.mean();
    j["pm"] = s.pm();
  }
  if (s.samples() > 1) {
    j["variance"] = s.variance();
    j["standard_error"] = s.standard_error();
  }
}

void to_json(json& j, const PmTable& t) {
  j = json{{"d", t.d}, {"values", t.values}, {"errors", t.errors}, {"method", t.method}};
}

void from_json(const json& j, PmTable& t) {
  require_keys(j, {"d", "values", "errors", "method"});
  t.d = j.at("d").get<int>();
  t.values = j.at("values").get<std::vector<double>>();
  t.errors = j.at("errors").get<std::vector<double>>();
  t.method = j.at("method").get<std::string>();
  if (t.values.size() != static_cast<std::size_t>(t.d) || t.errors.size() != t.values.size()) {
    throw std::invalid_argument("p_m table needs d values and d errors");
  }
}

void to_json(json& j, const QuadConfig& c) {
  j = json{{"tolerance", c.tolerance},
           {"max_refinements", c.max_refinements},
           {"method", std::string(to_string(c.method))},
           {"mc_samples", c.mc_samples},
           {"seed", c.seed}};
}

void from_json(const json& j, QuadConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("quadrature config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "tolerance") {
      c.tolerance = value.get<double>();
    } else if (key == "max_refinements") {
      c.max_refinements = value.get<std::size_t>();
    } else if (key == "method") {
      c.method = parse_quad_method(value.get<std::string>());
    } else if (key == "mc_samples") {
      c.mc_samples = value.get<std::uint64_t>();
    } else if (key == "seed") {
      c.seed = value.get<std::uint64_t>();
    } else {
      throw std::invalid_argument("unknown quadrature config key '" + key + "'");
    }
  }
  validate(c);
}

}  // namespace gamepoly

namespace nlohmann {

gamepoly::PayoffTensor adl_serializer<gamepoly::PayoffTensor>::from_json(const json& j) {
  gamepoly::require_keys(j, {"n", "d", "entries"});
  return {j.at("n").get<int>(), j.at("d").get<int>(), j.at("entries").get<std::vector<double>>()};
}

gamepoly::BetaTensor adl_serializer<gamepoly::BetaTensor>::from_json(const json& j) {
  gamepoly::require_keys(j, {"n", "d", "entries"});
  return {j.at("n").get<int>(), j.at("d").get<int>(), j.at("entries").get<std::vector<double>>()};
}

gamepoly::CoefficientSystem adl_serializer<gamepoly::CoefficientSystem>::from_json(const json& j) {
  gamepoly::require_keys(j, {"n", "d", "entries"});
  return {j.at("n").get<int>(), j.at("d").get<int>(), j.at("entries").get<std::vector<double>>()};
}

gamepoly::MonteCarloSummary adl_serializer<gamepoly::MonteCarloSummary>::from_json(const json& j) {
  gamepoly::require_keys(j, {"schema_version", "ensemble", "seed", "sum", "sum_squares", "degenerate", "histogram"});
  if (j.at("schema_version").get<int>() != gamepoly::kSummarySchemaVersion) {
    throw std::invalid_argument("unsupported summary schema version");
  }
  return gamepoly::SummaryAccess::restore(
      j.at("ensemble").get<gamepoly::EnsembleDescriptor>(), j.at("seed").get<std::uint64_t>(),
      j.at("sum").get<std::uint64_t>(), j.at("sum_squares").get<std::uint64_t>(),
      j.at("degenerate").get<std::uint64_t>(), j.at("histogram").get<std::vector<std::uint64_t>>());
}

}  // namespace nlohmann
