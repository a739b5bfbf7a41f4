// Command-line workbench around the pentagon identity library:
//   eval           evaluate one special function at a point
//   verify         check one identity at one sampled point
//   sweep          verify many seeds, emit CSV / run records
//   scan-variants  rank the registered algebraic readings of an identity
//   report         summarize previously written run records
//
// Exit codes: 0 success, 1 identity violation (finite but out of tolerance),
// 2 evaluation/usage error (printed as "ErrorKind: message").

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "pentagon/doublesine.hpp"
#include "pentagon/identities.hpp"
#include "pentagon/qseries.hpp"
#include "pentagon/report.hpp"

namespace {

using namespace pentagon;

double parse_double_str(const std::string& s) {
  const char* c = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(c, &end);
  if (end == c || *end != '\0') {
    throw ParseError("malformed number '" + s + "'");
  }
  return v;
}

// Accepts "re", "re+imi", "re-imi", "imi", "i", "-i" (whitespace ignored).
Complex parse_complex(const std::string& raw) {
  std::string s;
  for (const char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw ParseError("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') {
    return {parse_double_str(s), 0.0};
  }
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    const char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const auto im_of = [](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_double_str(t);
  };
  if (split == std::string::npos) {
    return {0.0, im_of(body)};
  }
  return {parse_double_str(body.substr(0, split)), im_of(body.substr(split))};
}

std::string fmt_complex(const Complex& z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15f%+.15fi", z.real(), z.imag());
  return buf;
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty()) throw ParseError("empty seed value");
  const char* c = s.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(c, &end, 10);
  if (end == c || *end != '\0') throw ParseError("malformed seed '" + s + "'");
  return v;
}

// "a..b" (half-open), "x,y,z", or a single seed.
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t a = parse_u64(spec.substr(0, dots));
    const std::uint64_t b = parse_u64(spec.substr(dots + 2));
    for (std::uint64_t i = a; i < b; ++i) out.push_back(i);
  } else if (spec.find(',') != std::string::npos) {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_u64(tok));
  } else {
    out.push_back(parse_u64(spec));
  }
  if (out.empty()) throw ParseError("seed range '" + spec + "' is empty");
  return out;
}

// Flat INI-style config: global key=value lines plus [identity] sections.
struct ConfigData {
  std::map<std::string, std::string> global;
  std::map<std::string, std::map<std::string, std::string>> sections;
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

ConfigData load_config(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    if (const char* env = std::getenv("PENTAGON_CONFIG")) path = env;
  }
  ConfigData cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) +
                       " is not key=value: '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("config line " + std::to_string(lineno) +
                       " has an empty key");
    }
    if (section.empty()) {
      cfg.global[key] = val;
    } else {
      cfg.sections[section][key] = val;
    }
  }
  return cfg;
}

std::optional<std::string> cfg_get(const ConfigData& cfg,
                                   const std::string& identity,
                                   const std::string& key) {
  if (!identity.empty()) {
    const auto s = cfg.sections.find(identity);
    if (s != cfg.sections.end()) {
      const auto k = s->second.find(key);
      if (k != s->second.end()) return k->second;
    }
  }
  const auto g = cfg.global.find(key);
  if (g != cfg.global.end()) return g->second;
  return std::nullopt;
}

struct SweepOutcome {
  bool ok = false;
  VerificationReport rep;
  std::string kind;
  std::string message;
};

SweepOutcome run_seed(IdentityId id, std::uint64_t seed, FormVariant form,
                      double tol) {
  SweepOutcome out;
  try {
    const ParamPoint p = sample_point(id, seed);
    out.rep = verify(id, p, form, tol);
    out.rep.seed = seed;
    out.ok = true;
  } catch (const Error& e) {
    out.kind = e.kind();
    out.message = e.what();
  }
  return out;
}

std::vector<SweepOutcome> run_sweep(IdentityId id,
                                    const std::vector<std::uint64_t>& seeds,
                                    FormVariant form, double tol,
                                    unsigned jobs) {
  std::vector<SweepOutcome> results(seeds.size());
  if (jobs <= 1 || seeds.size() <= 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      results[i] = run_seed(id, seeds[i], form, tol);
    }
    return results;
  }
  std::atomic<std::size_t> next{0};
  const unsigned n_threads =
      std::min<unsigned>(jobs, static_cast<unsigned>(seeds.size()));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < seeds.size();
           i = next.fetch_add(1)) {
        results[i] = run_seed(id, seeds[i], form, tol);
      }
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << body;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string command_line = join_args(argc, argv);

  CLI::App app{
      "Workbench for the double-sine / q-Pochhammer pentagon identities"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "key=value config file ([identity] sections supported; "
                 "defaults to $PENTAGON_CONFIG)");

  // ---- eval ----
  auto* eval_cmd =
      app.add_subcommand("eval", "evaluate one special function at a point");
  std::string fn;
  eval_cmd
      ->add_option("function", fn,
                   "sb | pochhammer | bfun-s3b | bfun-s2s1 | bfun-rp2 | "
                   "bfun-flavored")
      ->required();
  std::string xs, ys, zs, as, bs, qs;
  std::string method = "integral";
  double eval_tol = 1e-12;
  double md = 0.0;
  long nl = 0;
  eval_cmd->add_option("--x", xs, "complex argument, e.g. 0.3+0.1i");
  eval_cmd->add_option("--y", ys, "complex argument");
  eval_cmd->add_option("--z", zs, "complex fugacity argument");
  eval_cmd->add_option("--a", as, "complex fugacity / series argument");
  eval_cmd->add_option("--b", bs,
                       "squashing parameter (sb, bfun-s3b) or second fugacity "
                       "(bfun-flavored)");
  eval_cmd->add_option("--q", qs, "nome, |q| in (0,1)");
  eval_cmd->add_option("--method", method,
                       "sb representation: integral | product | auto");
  eval_cmd->add_option("--tol", eval_tol, "evaluation tolerance");
  eval_cmd->add_option("--m", md, "flux label (real for bfun-s2s1)");
  eval_cmd->add_option("--n", nl, "integer flux label / finite product length");

  // ---- verify ----
  auto* verify_cmd =
      app.add_subcommand("verify", "verify one identity at one sampled point");
  std::string v_identity, v_form = "canonical", v_out;
  std::uint64_t v_seed = 0;
  double v_tol = 0.0;
  verify_cmd->add_option("--identity", v_identity, "identity name")->required();
  verify_cmd->add_option("--seed", v_seed, "sampler seed");
  verify_cmd->add_option("--form", v_form, "algebraic reading (default canonical)");
  verify_cmd->add_option("--tol", v_tol, "pass tolerance on the rel residual");
  verify_cmd->add_option("--out", v_out, "write a run-record JSON here");

  // ---- sweep ----
  auto* sweep_cmd =
      app.add_subcommand("sweep", "verify a batch of seeds, emit CSV");
  std::string s_identity, s_form = "canonical", s_seeds, s_out;
  double s_tol = 0.0;
  unsigned s_jobs = 1;
  sweep_cmd->add_option("--identity", s_identity, "identity name")->required();
  sweep_cmd->add_option("--seeds", s_seeds,
                        "half-open range a..b, comma list, or single seed "
                        "(default 0..20)");
  sweep_cmd->add_option("--form", s_form, "algebraic reading");
  sweep_cmd->add_option("--tol", s_tol, "pass tolerance");
  sweep_cmd->add_option("--jobs", s_jobs, "worker threads");
  sweep_cmd->add_option("--out", s_out,
                        "directory for runrecord-<identity>.json and "
                        "residuals-<identity>.csv (default: CSV on stdout)");

  // ---- scan-variants ----
  auto* scan_cmd = app.add_subcommand(
      "scan-variants", "rank the registered algebraic readings");
  std::string c_identity, c_out;
  std::uint64_t c_seed = 0;
  unsigned c_points = 5;
  double c_tol = 0.0;
  scan_cmd->add_option("--identity", c_identity, "identity name")->required();
  scan_cmd->add_option("--seed", c_seed, "base sampler seed");
  scan_cmd->add_option("--points", c_points, "number of sampled points (>= 3)");
  scan_cmd->add_option("--tol", c_tol, "tolerance for the canonical call");
  scan_cmd->add_option("--out", c_out, "write a run-record JSON here");

  // ---- report ----
  auto* report_cmd =
      app.add_subcommand("report", "summarize run-record JSON files");
  std::vector<std::string> r_files;
  report_cmd->add_option("files", r_files, "run-record JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const ConfigData cfg = load_config(config_path);

    if (eval_cmd->parsed()) {
      const auto need = [&](const std::string& val, const char* name) {
        if (val.empty()) {
          throw ParseError(std::string("eval ") + fn + " requires --" + name);
        }
        return parse_complex(val);
      };
      const auto integer_m = [&]() -> long {
        const long v = std::lround(md);
        if (std::abs(md - static_cast<double>(v)) > 1e-9) {
          throw ParseError("--m must be an integer for this function");
        }
        return v;
      };
      Complex value;
      Diagnostics diag;
      if (fn == "sb") {
        const SquashingParameter sq(need(bs, "b"));
        const Complex x = need(xs, "x");
        if (method == "integral") {
          value = sb_integral(x, sq, eval_tol);
        } else if (method == "product") {
          value = sb(x, sq, SbMethod::Product, eval_tol);
        } else if (method == "auto") {
          value = sb(x, sq, SbMethod::Auto, eval_tol);
        } else {
          throw ParseError("unknown --method '" + method +
                           "' (integral | product | auto)");
        }
      } else if (fn == "pochhammer") {
        const Complex a = need(as, "a");
        const Nome q(need(qs, "q"));
        value = eval_cmd->count("--n") ? pochhammer_fin(a, q, nl)
                                       : pochhammer_inf(a, q);
      } else if (fn == "bfun-s3b") {
        value = bfun_s3b(need(xs, "x"), need(ys, "y"),
                         SquashingParameter(need(bs, "b")), eval_tol);
      } else if (fn == "bfun-s2s1") {
        value = bfun_s2s1(md, need(zs, "z"), Nome(need(qs, "q")));
      } else if (fn == "bfun-rp2") {
        value = bfun_rp2(need(zs, "z"), integer_m(), Nome(need(qs, "q")), &diag);
      } else if (fn == "bfun-flavored") {
        value = bfun_flavored(need(as, "a"), nl, need(bs, "b"), integer_m(),
                              Nome(need(qs, "q")));
      } else {
        throw ParseError("unknown eval function '" + fn + "'");
      }
      for (const auto& w : diag.warnings) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
      }
      std::printf("%s\n", fmt_complex(value).c_str());
      return 0;
    }

    if (verify_cmd->parsed()) {
      const IdentityId id = identity_from_name(v_identity);
      const std::string idname = identity_name(id);
      if (!verify_cmd->count("--tol")) {
        const auto c = cfg_get(cfg, idname, "tol");
        v_tol = c ? parse_double_str(*c) : default_tolerance(id);
      }
      if (!verify_cmd->count("--form")) {
        if (const auto c = cfg_get(cfg, idname, "form")) v_form = *c;
      }
      if (!verify_cmd->count("--seed")) {
        if (const auto c = cfg_get(cfg, idname, "seed")) v_seed = parse_u64(*c);
      }
      const FormVariant form = form_from_name(v_form, id);
      const ParamPoint p = sample_point(id, v_seed);
      VerificationReport rep = verify(id, p, form, v_tol);
      rep.seed = v_seed;
      std::printf("identity: %s\nform: %s\nseed: %llu\n", idname.c_str(),
                  form_name(form),
                  static_cast<unsigned long long>(v_seed));
      std::printf("lhs: %s\nrhs: %s\n", fmt_complex(rep.lhs).c_str(),
                  fmt_complex(rep.rhs).c_str());
      std::printf("rel_residual: %.17g\ntolerance: %.17g\n", rep.rel_residual,
                  rep.tolerance);
      std::printf("result: %s\n", rep.passed ? "PASS" : "FAIL");
      for (const auto& w : rep.diagnostics.warnings) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
      }
      if (!v_out.empty()) {
        RunRecord rec;
        rec.timestamp = current_utc_timestamp();
        rec.command = command_line;
        rec.identity = idname;
        rec.seeds = {v_seed};
        rec.tolerance = v_tol;
        rec.reports = {rep};
        rec.build_id = build_identifier();
        write_text_file(v_out, run_record_to_json(rec));
      }
      if (!rep.passed) {
        std::fprintf(stderr,
                     "IdentityViolation: rel residual %.3e exceeds tolerance "
                     "%.3e\n",
                     rep.rel_residual, rep.tolerance);
        return 1;
      }
      return 0;
    }

    if (sweep_cmd->parsed()) {
      const IdentityId id = identity_from_name(s_identity);
      const std::string idname = identity_name(id);
      if (!sweep_cmd->count("--tol")) {
        const auto c = cfg_get(cfg, idname, "tol");
        s_tol = c ? parse_double_str(*c) : default_tolerance(id);
      }
      if (!sweep_cmd->count("--form")) {
        if (const auto c = cfg_get(cfg, idname, "form")) s_form = *c;
      }
      if (!sweep_cmd->count("--seeds")) {
        const auto c = cfg_get(cfg, idname, "seeds");
        s_seeds = c ? *c : std::string("0..20");
      }
      if (!sweep_cmd->count("--jobs")) {
        if (const auto c = cfg_get(cfg, idname, "jobs")) {
          s_jobs = static_cast<unsigned>(parse_u64(*c));
        }
      }
      const FormVariant form = form_from_name(s_form, id);
      const std::vector<std::uint64_t> seeds = parse_seeds(s_seeds);
      const std::vector<SweepOutcome> outcomes =
          run_sweep(id, seeds, form, s_tol, s_jobs);

      bool any_error = false;
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].ok) {
          any_error = true;
          std::fprintf(stderr, "seed %llu: %s: %s\n",
                       static_cast<unsigned long long>(seeds[i]),
                       outcomes[i].kind.c_str(), outcomes[i].message.c_str());
        }
      }
      if (any_error) return 2;

      std::vector<VerificationReport> reports;
      reports.reserve(outcomes.size());
      std::size_t n_passed = 0;
      double worst = 0.0;
      for (const auto& o : outcomes) {
        reports.push_back(o.rep);
        if (o.rep.passed) ++n_passed;
        if (o.rep.rel_residual > worst) worst = o.rep.rel_residual;
      }
      const std::string csv = reports_to_csv(reports);
      if (s_out.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        RunRecord rec;
        rec.timestamp = current_utc_timestamp();
        rec.command = command_line;
        rec.identity = idname;
        rec.seeds = seeds;
        rec.tolerance = s_tol;
        rec.reports = reports;
        rec.build_id = build_identifier();
        const std::filesystem::path dir(s_out);
        std::filesystem::create_directories(dir);
        const auto jpath = dir / ("runrecord-" + idname + ".json");
        const auto cpath = dir / ("residuals-" + idname + ".csv");
        write_text_file(jpath, run_record_to_json(rec));
        write_text_file(cpath, csv);
        std::printf("wrote: %s\nwrote: %s\n", jpath.string().c_str(),
                    cpath.string().c_str());
      }
      std::fprintf(stderr, "%zu/%zu passed, worst rel residual %.3e\n",
                   n_passed, outcomes.size(), worst);
      return n_passed == outcomes.size() ? 0 : 1;
    }

    if (scan_cmd->parsed()) {
      const IdentityId id = identity_from_name(c_identity);
      const std::string idname = identity_name(id);
      if (!scan_cmd->count("--tol")) {
        const auto c = cfg_get(cfg, idname, "tol");
        c_tol = c ? parse_double_str(*c) : default_tolerance(id);
      }
      std::vector<ParamPoint> points;
      points.reserve(c_points);
      for (unsigned i = 0; i < c_points; ++i) {
        points.push_back(sample_point(id, c_seed + i));
      }
      const std::vector<VariantResult> results = variant_scan(id, points, c_tol);
      std::printf("scan of %s over %u points at tol %.3e\n", idname.c_str(),
                  c_points, c_tol);
      RunRecord rec;
      rec.timestamp = current_utc_timestamp();
      rec.command = command_line;
      rec.identity = idname;
      for (unsigned i = 0; i < c_points; ++i) rec.seeds.push_back(c_seed + i);
      rec.tolerance = c_tol;
      rec.variants = results;
      rec.build_id = build_identifier();
      bool found_canonical = false;
      for (std::size_t i = 0; i < results.size(); ++i) {
        const VariantResult& v = results[i];
        if (v.evaluated) {
          std::printf("%2zu. %-18s worst rel %.3e%s\n", i + 1,
                      form_name(v.form), v.worst_rel,
                      v.canonical ? "   << canonical" : "");
        } else {
          std::printf("%2zu. %-18s error %s: %s\n", i + 1, form_name(v.form),
                      v.error_kind.c_str(), v.error_message.c_str());
        }
        if (v.canonical) {
          found_canonical = true;
          rec.notes.push_back(std::string("canonical: ") + form_name(v.form));
        } else if (!v.evaluated) {
          rec.notes.push_back(std::string(form_name(v.form)) + ": error " +
                              v.error_kind + ": " + v.error_message);
        } else if (v.worst_rel >= c_tol) {
          char note[128];
          std::snprintf(note, sizeof note, "%s: worst rel residual %.3e",
                        form_name(v.form), v.worst_rel);
          rec.notes.push_back(note);
        }
      }
      if (id == IdentityId::RP2S1_SQED) {
        rec.notes.push_back(
            "raw-stilde-neg differs from raw-printed only through |s~|, so "
            "the two readings coincide numerically");
      }
      if (!c_out.empty()) {
        write_text_file(c_out, run_record_to_json(rec));
      }
      return found_canonical ? 0 : 1;
    }

    if (report_cmd->parsed()) {
      if (r_files.empty()) {
        throw ParseError("report requires at least one run-record JSON file");
      }
      std::vector<RunRecord> records;
      records.reserve(r_files.size());
      for (const auto& f : r_files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw ParseError("cannot open '" + f + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        records.push_back(run_record_from_json(ss.str()));
      }
      std::fputs(summarize_records(records).c_str(), stdout);
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "%s: %s\n", e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "Error: %s\n", e.what());
    return 2;
  }
  return 0;
}
