#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "koszul/cache.hpp"
#include "koszul/curve_file.hpp"
#include "koszul/report.hpp"

#ifndef KOSZUL_VERSION
#define KOSZUL_VERSION "0.0.0"
#endif

namespace koszul::cli {
namespace {

using json = nlohmann::ordered_json;

struct Flags {
  std::string input;
  std::uint64_t prime = 0;
  std::uint64_t second_prime = 0;
  int pmin = 0;
  int pmax = -1;
  int qmax = 3;
  std::string cache_dir;
  std::string format = "json";
  std::uint64_t seed = RunOptions{}.seed;
  std::string bundle_b = "B";
  std::string bundle_l = "L";
  std::string output;
  bool no_timings = false;
  bool single_prime = false;
  unsigned threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string options_text(const Flags& f) {
  std::ostringstream os;
  os << "prime=" << f.prime << ";second_prime=" << f.second_prime << ";pmin=" << f.pmin << ";pmax=" << f.pmax
     << ";qmax=" << f.qmax << ";seed=" << f.seed << ";B=" << f.bundle_b << ";L=" << f.bundle_l
     << ";format=" << f.format << ";timings=" << !f.no_timings << ";two_prime=" << !f.single_prime;
  return os.str();
}

RunOptions run_options(const Flags& f) {
  RunOptions o;
  if (f.prime) o.prime = f.prime;
  if (f.second_prime) o.second_prime = f.second_prime;
  o.two_prime = !f.single_prime;
  o.seed = f.seed;
  o.bundle_b = f.bundle_b;
  o.bundle_l = f.bundle_l;
  o.betti.p_min = f.pmin;
  o.betti.p_max = f.pmax;
  o.betti.q_max = f.qmax;
  o.betti.threads = f.threads;
  return o;
}

std::uint64_t file_prime(const CurveFile& file, const Flags& f) {
  if (f.prime) return f.prime;
  if (file.prime) return *file.prime;
  throw InputError(file.source + ": no prime in the file and none given");
}

std::string vec_text(const Vec3& v) {
  return "(" + std::to_string(v[0].v) + ":" + std::to_string(v[1].v) + ":" + std::to_string(v[2].v) + ")";
}

struct Rendered {
  std::string payload;
  int exit_code = kExitOk;
};

std::string render_kv(const json& j, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") os << "key,value\n";
  for (const auto& [k, v] : j.items()) {
    const std::string val = v.is_string() ? v.get<std::string>() : v.dump();
    if (format == "csv") {
      os << k << ",\"";
      for (char ch : val) os << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
      os << "\"\n";
    } else {
      os << k << ": " << val << '\n';
    }
  }
  return os.str();
}

Rendered curve_check(const CurveFile& file, const Flags& f) {
  json j;
  j["source"] = file.source;
  const std::uint64_t p = file_prime(file, f);
  j["prime"] = p;
  j["degree"] = file.degree;
  Rendered r;
  try {
    const Realization real = realize(file, p, false);
    const PlaneCurve& c = *real.curve;
    j["curve"] = c.form().to_string();
    j["smooth"] = true;
    j["genus"] = c.genus();
    j["gonality"] = c.degree() - 1;
    j["certificate"] = {{"kind", to_string(c.certificate().kind)},
                        {"frames_tried", c.certificate().frames_tried},
                        {"points_checked", c.certificate().points_checked},
                        {"detail", c.certificate().detail}};
    j["points"] = json::array();
    for (const CurvePoint& pt : real.pinned) j["points"].push_back(vec_text(pt.coords));
    j["bundles"] = json::array();
    for (const BundleSpec& b : file.bundles) {
      const LineBundle lb = real.bundle(b.name);
      j["bundles"].push_back({{"name", b.name}, {"key", lb.key()}, {"degree", lb.degree()}});
    }
  } catch (const SingularCurveError& e) {
    j["smooth"] = false;
    j["detail"] = e.what();
    if (e.witness) j["witness"] = vec_text(*e.witness);
    r.exit_code = kExitInput;
  }
  r.payload = f.format == "json" ? j.dump(2) + "\n" : render_kv(j, f.format);
  return r;
}

Rendered sections(const CurveFile& file, const Flags& f) {
  const Realization real = realize(file, file_prime(file, f), false);
  SectionCache& cache = *real.cache;
  std::vector<std::string> names;
  for (const BundleSpec& b : file.bundles) names.push_back(b.name);
  if (!file.find_bundle("B")) names.insert(names.begin(), "B");
  json rows = json::array();
  for (const std::string& name : names) {
    const LineBundle b = real.bundle(name);
    const auto space = cache.get(b);
    const H1Value v = h1(cache, b);
    json pivots = json::array();
    for (const Monomial& m : space->pivots()) pivots.push_back(m.e);
    rows.push_back({{"name", name},
                    {"bundle", b.key()},
                    {"degree", b.degree()},
                    {"h0", space->h0()},
                    {"h1", v.value},
                    {"h1_route", to_string(v.route)},
                    {"pivots", pivots}});
  }
  Rendered r;
  if (f.format == "json") {
    json j;
    j["curve"] = real.curve->form().to_string();
    j["prime"] = real.prime;
    j["genus"] = real.curve->genus();
    j["sections"] = rows;
    r.payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    if (f.format == "csv") {
      os << "name,bundle,degree,h0,h1,h1_route\n";
      for (const auto& row : rows)
        os << row["name"].get<std::string>() << ",\"" << row["bundle"].get<std::string>() << "\"," << row["degree"]
           << ',' << row["h0"] << ',' << row["h1"] << ',' << row["h1_route"].get<std::string>() << '\n';
    } else {
      for (const auto& row : rows)
        os << row["name"].get<std::string>() << " = " << row["bundle"].get<std::string>() << ": deg "
           << row["degree"] << ", h0 " << row["h0"] << ", h1 " << row["h1"] << " ("
           << row["h1_route"].get<std::string>() << ")\n";
    }
    r.payload = os.str();
  }
  return r;
}

Rendered betti(const CurveFile& file, const Flags& f) {
  const BettiTable t = run_betti(file, run_options(f));
  Rendered r;
  r.exit_code = exit_code(t);
  if (f.format == "json") r.payload = to_json(t, !f.no_timings).dump(2) + "\n";
  else if (f.format == "csv") r.payload = to_csv(t);
  else r.payload = to_text(t);
  if (f.no_timings && f.format == "csv") {
    BettiTable copy = t;
    for (auto* group : {&copy.cells, &copy.extra_cells})
      for (auto& [k, c] : *group) c.millis = 0;
    r.payload = to_csv(copy);
  }
  return r;
}

Rendered verify(const CurveFile& file, const Flags& f) {
  const VerifyReport rep = run_verify(file, run_options(f));
  Rendered r;
  r.exit_code = exit_code(rep);
  if (f.format == "json") r.payload = to_json(rep, !f.no_timings).dump(2) + "\n";
  else if (f.format == "csv") r.payload = to_csv(rep);
  else r.payload = to_text(rep);
  return r;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--input", f.input, "Curve file")->required();
  sub->add_option("--prime", f.prime, "Prime overriding the file");
  sub->add_option("--second-prime", f.second_prime, "Prime for the two-prime check");
  sub->add_option("--pmin", f.pmin, "Smallest p");
  sub->add_option("--pmax", f.pmax, "Largest p (default r(L))");
  sub->add_option("--qmax", f.qmax, "Largest q");
  sub->add_option("--cache-dir", f.cache_dir, "Result cache directory");
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_option("--seed", f.seed, "Seed for randomized ranks and the second prime");
  sub->add_option("--bundle-b", f.bundle_b, "Name of B in the curve file");
  sub->add_option("--bundle-l", f.bundle_l, "Name of L in the curve file");
  sub->add_option("--output", f.output, "Write the report here instead of stdout");
  sub->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  sub->add_flag("--no-timings", f.no_timings, "Report zero cell timings");
  sub->add_flag("--single-prime", f.single_prime, "Skip the two-prime check");
}

}  // namespace

int exit_code(const BettiTable& t) {
  for (const CheckResult* c : {&t.dsquared, &t.hilbert, &t.duality, &t.two_prime, &t.riemann_roch})
    if (c->status == CheckStatus::kFail) return kExitMismatch;
  return kExitOk;
}

int exit_code(const VerifyReport& r) { return r.all_match() ? kExitOk : kExitMismatch; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszul cohomology of smooth plane curves over prime fields", "koszul"};
  app.set_version_flag("--version", KOSZUL_VERSION);
  app.require_subcommand(1, 1);
  Flags f;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"curve-check", "Validate the curve and list its bundles"},
      {"sections", "Section spaces of the bundles in the file"},
      {"betti", "Koszul cohomology table kappa_{p,q}(C, B; L)"},
      {"verify", "Compare the table against the theoretical predictions"}};
  for (const auto& [name, desc] : commands) add_common(app.add_subcommand(name, desc), f);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << KOSZUL_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const auto started = std::chrono::steady_clock::now();

  try {
    const std::string bytes = read_file(f.input);
    const bool cacheable = command == "betti" || command == "verify";
    ResultCache cache(cacheable ? f.cache_dir : std::string());
    for (const auto& w : cache.take_warnings()) err << "warning: " << w << '\n';
    const std::string key = cache_key(KOSZUL_VERSION, bytes, command, options_text(f));

    Rendered r;
    bool hit = false;
    if (auto e = cache.lookup(key)) {
      r.payload = e->payload;
      r.exit_code = e->exit_code;
      hit = true;
    }
    for (const auto& w : cache.take_warnings()) err << "warning: " << w << '\n';
    CurveFile file;
    std::istringstream in(bytes);
    file = parse_curve_file(in, f.input);
    if (!hit) {
      if (command == "curve-check") r = curve_check(file, f);
      else if (command == "sections") r = sections(file, f);
      else if (command == "betti") r = betti(file, f);
      else r = verify(file, f);
      if (r.exit_code != kExitInput) cache.store(key, {r.exit_code, r.payload});
      for (const auto& w : cache.take_warnings()) err << "warning: " << w << '\n';
    }

    std::vector<std::string> outputs;
    if (f.output.empty()) {
      out << r.payload;
    } else {
      write_atomic(f.output, r.payload);
      outputs.push_back(f.output);
    }

    std::string manifest_path;
    if (!f.output.empty()) manifest_path = f.output + ".manifest.json";
    else if (cache.enabled()) manifest_path = (std::filesystem::path(cache.dir()) / (key + ".manifest.json")).string();
    if (!manifest_path.empty()) {
      json m;
      m["tool"] = "koszul";
      m["version"] = KOSZUL_VERSION;
      m["command"] = command;
      m["options"] = options_text(f);
      m["input"] = f.input;
      m["input_sha256"] = sha256_hex(bytes);
      const std::uint64_t p = file_prime(file, f);
      m["primes"] = {p, f.second_prime ? f.second_prime : default_second_prime(f.seed, p)};
      m["seed"] = f.seed;
      m["cache_key"] = key;
      m["cache_hit"] = hit;
      m["exit_code"] = r.exit_code;
      m["wall_millis"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      m["outputs"] = outputs;
      try {
        write_atomic(manifest_path, m.dump(2) + "\n");
      } catch (const std::exception& e) {
        err << "warning: manifest not written: " << e.what() << '\n';
      }
    }
    return r.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NotRepresentable& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace koszul::cli
