#include "gcreg/serialize.hpp"

#include <cstdio>
#include <sstream>

#include "gcreg/error.hpp"
#include "json.hpp"

namespace gcreg {

using nlohmann::json;

namespace {

json domain_json(const SymmetricDomain& d) {
  if (d.kind() == DomainKind::Square) return {{"kind", "square"}, {"l", d.size()}};
  return {{"kind", "disk"}, {"r", d.size()}};
}

SymmetricDomain domain_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "square") return SymmetricDomain::square(j.at("l").get<double>());
  if (kind == "disk") return SymmetricDomain::disk(j.at("r").get<double>());
  throw Error(ErrorCode::InvalidArgument, "unknown domain kind '" + kind + "'");
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

// Shortest decimal that reads back to the same double.
std::string number(double v) { return json(v).dump(); }

}  // namespace

std::string to_json(const Multivector2& m) {
  return json{{"s", m.s}, {"e1", m.x}, {"e2", m.y}, {"e12", m.b}}.dump();
}

std::string to_json(const LinearField& field) {
  const Matrix2& m = field.coefficients();
  json j = {{"a11", m.a11}, {"a12", m.a12}, {"a21", m.a21}, {"a22", m.a22},
            {"domain", domain_json(field.domain())}};
  return j.dump();
}

LinearField field_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    const SymmetricDomain domain =
        j.contains("domain") ? domain_from(j.at("domain")) : SymmetricDomain::square(1.0);
    return {{j.at("a11").get<double>(), j.at("a12").get<double>(), j.at("a21").get<double>(),
             j.at("a22").get<double>()},
            domain};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("field JSON: ") + e.what());
  }
}

std::string to_json(const Decomposition& d) {
  return json{{"a", d.a}, {"b", d.b}, {"c", d.c}, {"d", d.d}}.dump();
}

Decomposition decomposition_from_json(std::string_view text) {
  const json j = parse(text);
  try {
    return {j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>(),
            j.at("d").get<double>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("decomposition JSON: ") + e.what());
  }
}

std::string to_json(const DetectionResult& result, bool include_trace) {
  json j = {{"alpha", result.alpha},
            {"iterations", result.iterations},
            {"status", to_string(result.status)},
            {"corrected", json::parse(to_json(result.corrected))}};
  if (include_trace) {
    json trace = json::array();
    for (const TraceEntry& t : result.trace) {
      trace.push_back({{"iter", t.iter},
                       {"phi", t.phi},
                       {"alpha", t.alpha_after},
                       {"exception", t.exception},
                       {"branch", to_string(t.branch)}});
    }
    j["trace"] = std::move(trace);
  }
  return j.dump();
}

std::string to_json(const ExperimentReport& r) {
  json j = {{"eps", r.eps},
            {"trials", r.trials},
            {"avg_error", r.avg_error},
            {"max_error", r.max_error},
            {"avg_iterations", r.avg_iterations},
            {"converged_fraction", r.converged_fraction},
            {"seed", r.seed},
            {"avg_error_converged", r.avg_error_converged},
            {"max_error_converged", r.max_error_converged},
            {"avg_iterations_converged", r.avg_iterations_converged},
            {"max_iterations", r.max_iterations},
            {"converged", r.converged},
            {"max_iter_exceeded", r.max_iter_exceeded},
            {"degenerate", r.degenerate},
            {"near_degenerate", r.near_degenerate},
            {"near_degenerate_not_converged", r.near_degenerate_not_converged}};
  return j.dump();
}

std::string report_csv_header() {
  return "eps,average_error,maximal_error,average_iterations,converged_fraction,trials,seed";
}

std::string to_csv_row(const ExperimentReport& r) {
  std::ostringstream os;
  os << number(r.eps) << ',' << number(r.avg_error) << ',' << number(r.max_error) << ','
     << number(r.avg_iterations) << ',' << number(r.converged_fraction) << ',' << r.trials << ','
     << r.seed;
  return os.str();
}

std::string to_csv(const SampledField& field) {
  std::string out = "x1,x2,v1,v2,inside\n";
  out.reserve(out.size() + field.n * field.n * 48);
  char line[160];
  for (std::size_t j = 0; j < field.n; ++j) {
    for (std::size_t i = 0; i < field.n; ++i) {
      const Vec2 p = field.cell_center(i, j);
      const Vec2& v = field.at(i, j);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%d\n", p.x1, p.x2, v.x1, v.x2,
                    field.inside(i, j) ? 1 : 0);
      out += line;
    }
  }
  return out;
}

}  // namespace gcreg
