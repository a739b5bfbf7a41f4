#include "pentagon/report.hpp"

#include <cstdio>
#include <ctime>
#include <map>

#include <json.hpp>

namespace pentagon {

namespace {

using Json = nlohmann::ordered_json;

Json cpx_json(const Complex& z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

Complex cpx_parse(const Json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

template <typename T, std::size_t N>
Json array_json(const std::array<T, N>& a) {
  Json out = Json::array();
  for (const auto& v : a) {
    if constexpr (std::is_same_v<T, Complex>) {
      out.push_back(cpx_json(v));
    } else {
      out.push_back(v);
    }
  }
  return out;
}

Json point_json(const ParamPoint& p) {
  return std::visit(
      [](const auto& pt) -> Json {
        using P = std::decay_t<decltype(pt)>;
        if constexpr (std::is_same_v<P, PointS3bSqed>) {
          return Json{{"b", cpx_json(pt.b)}, {"y", cpx_json(pt.y)}};
        } else if constexpr (std::is_same_v<P, PointS2s1Sqed>) {
          return Json{{"q", cpx_json(pt.q)},
                      {"alpha", cpx_json(pt.alpha)},
                      {"w", cpx_json(pt.w)},
                      {"m", pt.m},
                      {"n", pt.n}};
        } else if constexpr (std::is_same_v<P, PointRp2s1Sqed>) {
          return Json{{"q", cpx_json(pt.q)},
                      {"a", cpx_json(pt.a)},
                      {"s", pt.s},
                      {"s_tilde", pt.s_tilde}};
        } else if constexpr (std::is_same_v<P, PointS3bFlavored>) {
          return Json{{"b", cpx_json(pt.b)},
                      {"a", array_json(pt.a)},
                      {"bvec", array_json(pt.bvec)}};
        } else {
          return Json{{"q", cpx_json(pt.q)},
                      {"a", array_json(pt.a)},
                      {"bvec", array_json(pt.bvec)},
                      {"n", array_json(pt.n)},
                      {"m", array_json(pt.m)}};
        }
      },
      p);
}

template <std::size_t N>
void parse_complex_array(const Json& j, std::array<Complex, N>& out) {
  for (std::size_t i = 0; i < N; ++i) out[i] = cpx_parse(j.at(i));
}

template <std::size_t N>
void parse_long_array(const Json& j, std::array<long, N>& out) {
  for (std::size_t i = 0; i < N; ++i) out[i] = j.at(i).get<long>();
}

ParamPoint point_parse(IdentityId id, const Json& j) {
  switch (id) {
    case IdentityId::S3B_SQED: {
      PointS3bSqed pt;
      pt.b = cpx_parse(j.at("b"));
      pt.y = cpx_parse(j.at("y"));
      return pt;
    }
    case IdentityId::S2S1_SQED: {
      PointS2s1Sqed pt;
      pt.q = cpx_parse(j.at("q"));
      pt.alpha = cpx_parse(j.at("alpha"));
      pt.w = cpx_parse(j.at("w"));
      pt.m = j.at("m").get<long>();
      pt.n = j.at("n").get<long>();
      return pt;
    }
    case IdentityId::RP2S1_SQED: {
      PointRp2s1Sqed pt;
      pt.q = cpx_parse(j.at("q"));
      pt.a = cpx_parse(j.at("a"));
      pt.s = j.at("s").get<long>();
      pt.s_tilde = j.at("s_tilde").get<long>();
      return pt;
    }
    case IdentityId::S3B_FLAVORED: {
      PointS3bFlavored pt;
      pt.b = cpx_parse(j.at("b"));
      parse_complex_array(j.at("a"), pt.a);
      parse_complex_array(j.at("bvec"), pt.bvec);
      return pt;
    }
    case IdentityId::S2S1_FLAVORED: {
      PointS2s1Flavored pt;
      pt.q = cpx_parse(j.at("q"));
      parse_complex_array(j.at("a"), pt.a);
      parse_complex_array(j.at("bvec"), pt.bvec);
      parse_long_array(j.at("n"), pt.n);
      parse_long_array(j.at("m"), pt.m);
      return pt;
    }
  }
  throw ParseError("unknown identity in record");
}

Json report_json(const VerificationReport& r) {
  Json diag{{"quadrature_nodes", r.diagnostics.quadrature_nodes},
            {"sum_terms", r.diagnostics.sum_terms},
            {"truncation_radius", r.diagnostics.truncation_radius},
            {"warnings", r.diagnostics.warnings}};
  return Json{{"identity", identity_name(r.identity)},
              {"form", form_name(r.form)},
              {"seed", r.seed},
              {"point", point_json(r.point)},
              {"lhs", cpx_json(r.lhs)},
              {"rhs", cpx_json(r.rhs)},
              {"abs_residual", r.abs_residual},
              {"rel_residual", r.rel_residual},
              {"passed", r.passed},
              {"tolerance", r.tolerance},
              {"diagnostics", diag}};
}

VerificationReport report_parse(const Json& j) {
  VerificationReport r;
  r.identity = identity_from_name(j.at("identity").get<std::string>());
  r.form = form_from_name(j.at("form").get<std::string>(), r.identity);
  r.seed = j.at("seed").get<std::uint64_t>();
  r.point = point_parse(r.identity, j.at("point"));
  r.lhs = cpx_parse(j.at("lhs"));
  r.rhs = cpx_parse(j.at("rhs"));
  r.abs_residual = j.at("abs_residual").get<double>();
  r.rel_residual = j.at("rel_residual").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.tolerance = j.at("tolerance").get<double>();
  if (j.contains("diagnostics")) {
    const Json& d = j.at("diagnostics");
    r.diagnostics.quadrature_nodes = d.value("quadrature_nodes", std::size_t{0});
    r.diagnostics.sum_terms = d.value("sum_terms", std::size_t{0});
    r.diagnostics.truncation_radius = d.value("truncation_radius", 0.0);
    if (d.contains("warnings")) {
      r.diagnostics.warnings =
          d.at("warnings").get<std::vector<std::string>>();
    }
  }
  return r;
}

Json variant_json(const VariantResult& v) {
  return Json{{"form", form_name(v.form)},
              {"evaluated", v.evaluated},
              {"worst_rel", v.worst_rel},
              {"error_kind", v.error_kind},
              {"error_message", v.error_message},
              {"canonical", v.canonical}};
}

VariantResult variant_parse(const Json& j, IdentityId id) {
  VariantResult v;
  v.form = form_from_name(j.at("form").get<std::string>(), id);
  v.evaluated = j.at("evaluated").get<bool>();
  v.worst_rel = j.at("worst_rel").get<double>();
  v.error_kind = j.value("error_kind", std::string{});
  v.error_message = j.value("error_message", std::string{});
  v.canonical = j.value("canonical", false);
  return v;
}

}  // namespace

std::string current_utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string build_identifier() {
#if defined(__clang__)
  return std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  return std::string("gcc ") + __VERSION__;
#else
  return "unknown compiler";
#endif
}

std::string run_record_to_json(const RunRecord& rec) {
  Json j{{"schema_version", rec.schema_version},
         {"timestamp", rec.timestamp},
         {"command", rec.command},
         {"identity", rec.identity},
         {"seeds", rec.seeds},
         {"tolerance", rec.tolerance}};
  Json reports = Json::array();
  for (const auto& r : rec.reports) reports.push_back(report_json(r));
  j["reports"] = std::move(reports);
  Json variants = Json::array();
  for (const auto& v : rec.variants) variants.push_back(variant_json(v));
  j["variants"] = std::move(variants);
  j["notes"] = rec.notes;
  j["precision"] = rec.precision;
  j["build_id"] = rec.build_id;
  return j.dump(2) + "\n";
}

RunRecord run_record_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    RunRecord rec;
    rec.schema_version = j.value("schema_version", std::string{"1"});
    rec.timestamp = j.value("timestamp", std::string{});
    rec.command = j.value("command", std::string{});
    rec.identity = j.value("identity", std::string{});
    if (j.contains("seeds")) {
      rec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    }
    rec.tolerance = j.value("tolerance", 0.0);
    if (j.contains("reports")) {
      for (const auto& rj : j.at("reports")) {
        rec.reports.push_back(report_parse(rj));
      }
    }
    if (j.contains("variants") && !rec.identity.empty()) {
      const IdentityId id = identity_from_name(rec.identity);
      for (const auto& vj : j.at("variants")) {
        rec.variants.push_back(variant_parse(vj, id));
      }
    }
    if (j.contains("notes")) {
      rec.notes = j.at("notes").get<std::vector<std::string>>();
    }
    rec.precision = j.value("precision", std::string{});
    rec.build_id = j.value("build_id", std::string{});
    return rec;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed run record: ") + e.what());
  }
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "seed,lhs_re,lhs_im,rhs_re,rhs_im,rel_residual\n";
  char line[192];
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(r.seed), r.lhs.real(),
                  r.lhs.imag(), r.rhs.real(), r.rhs.imag(), r.rel_residual);
    out += line;
  }
  return out;
}

std::string summarize_records(const std::vector<RunRecord>& records) {
  struct Agg {
    std::size_t passed = 0;
    std::size_t total = 0;
    double worst = 0.0;
  };
  std::vector<std::string> order;
  std::map<std::string, Agg> by_identity;
  for (const auto& rec : records) {
    for (const auto& r : rec.reports) {
      const std::string name = identity_name(r.identity);
      if (by_identity.find(name) == by_identity.end()) order.push_back(name);
      Agg& a = by_identity[name];
      ++a.total;
      if (r.passed) ++a.passed;
      if (r.rel_residual > a.worst) a.worst = r.rel_residual;
    }
  }
  std::string out;
  char line[160];
  for (const auto& name : order) {
    const Agg& a = by_identity[name];
    std::snprintf(line, sizeof line,
                  "%s: %zu/%zu passed, worst rel residual %.1e\n", name.c_str(),
                  a.passed, a.total, a.worst);
    out += line;
  }
  return out;
}

}  // namespace pentagon
