#include "koszul/curve_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace koszul {

const BundleSpec* CurveFile::find_bundle(const std::string& name) const {
  for (const BundleSpec& b : bundles)
    if (b.name == name) return &b;
  return nullptr;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream is(body);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

template <class T>
T parse_int(const std::string& tok, const std::string& where, const char* what) {
  T v{};
  const char* first = tok.data();
  if (!tok.empty() && tok[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw InputError(where + ": expected " + what + ", got '" + tok + "'");
  return v;
}

}  // namespace

CurveFile parse_curve_file(std::istream& in, const std::string& source) {
  CurveFile f;
  f.source = source;
  std::set<std::array<int, 3>> seen;
  std::string line;
  int lineno = 0;
  bool have_degree = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    auto expect = [&](std::size_t n, const char* form) {
      if (tok.size() != n) throw InputError(where + ": expected '" + form + "'");
    };
    const std::string& head = tok[0];
    if (head == "prime") {
      expect(2, "prime <p>");
      if (f.prime) throw InputError(where + ": prime given twice");
      f.prime = parse_int<std::uint64_t>(tok[1], where, "a prime");
    } else if (head == "degree") {
      expect(2, "degree <d>");
      if (have_degree) throw InputError(where + ": degree given twice");
      f.degree = parse_int<int>(tok[1], where, "a degree");
      if (f.degree < 0) throw InputError(where + ": degree must be non-negative");
      have_degree = true;
    } else if (head == "point") {
      expect(4, "point <a> <b> <c>");
      PointSpec p;
      for (int i = 0; i < 3; ++i) p.coords[i] = parse_int<std::int64_t>(tok[1 + i], where, "an integer coordinate");
      p.line = lineno;
      f.points.push_back(p);
    } else if (head == "bundle") {
      if (tok.size() != 4 || tok[2] != "twist") throw InputError(where + ": expected 'bundle <name> twist <k>'");
      if (f.find_bundle(tok[1])) throw InputError(where + ": bundle '" + tok[1] + "' defined twice");
      BundleSpec b;
      b.name = tok[1];
      b.twist = parse_int<int>(tok[3], where, "an integer twist");
      b.line = lineno;
      f.bundles.push_back(std::move(b));
    } else if (head == "minus") {
      expect(5, "minus <a> <b> <c> <mult>");
      if (f.bundles.empty()) throw InputError(where + ": 'minus' must follow a 'bundle' line");
      PointSpec p;
      for (int i = 0; i < 3; ++i) p.coords[i] = parse_int<std::int64_t>(tok[1 + i], where, "an integer coordinate");
      p.multiplicity = parse_int<int>(tok[4], where, "a multiplicity");
      if (p.multiplicity < 1) throw InputError(where + ": multiplicity must be positive");
      p.line = lineno;
      f.bundles.back().minus.push_back(p);
    } else {
      if (tok.size() != 4) throw InputError(where + ": unrecognized line '" + head + "'");
      if (!have_degree) throw InputError(where + ": monomial before the 'degree' line");
      std::array<int, 3> e{};
      for (int i = 0; i < 3; ++i) {
        e[i] = parse_int<int>(tok[i], where, "an exponent");
        if (e[i] < 0) throw InputError(where + ": negative exponent");
      }
      if (e[0] + e[1] + e[2] != f.degree)
        throw InputError(where + ": exponents sum to " + std::to_string(e[0] + e[1] + e[2]) + ", not the degree " +
                         std::to_string(f.degree));
      if (!seen.insert(e).second) throw InputError(where + ": monomial listed twice");
      f.terms.push_back({Monomial{e}, parse_int<std::int64_t>(tok[3], where, "an integer coefficient")});
    }
  }
  if (!have_degree) throw InputError(source + ": missing 'degree' line");
  if (f.terms.empty()) throw InputError(source + ": no monomials given");
  return f;
}

CurveFile load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_curve_file(in, path);
}

LineBundle Realization::bundle(const std::string& name) const {
  auto it = bundles.find(name);
  if (it != bundles.end()) return it->second;
  if (name == "B") return LineBundle::create(curve, 0);
  throw InputError("no bundle named '" + name + "' in the curve file");
}

namespace {

std::string coords_text(const std::array<std::int64_t, 3>& c) {
  return "(" + std::to_string(c[0]) + ":" + std::to_string(c[1]) + ":" + std::to_string(c[2]) + ")";
}

std::string coords_text(const Vec3& c) {
  return "(" + std::to_string(c[0].v) + ":" + std::to_string(c[1].v) + ":" + std::to_string(c[2].v) + ")";
}

}  // namespace

Realization realize(const CurveFile& file, std::uint64_t prime, bool substitute_points,
                    const std::vector<std::string>& only) {
  const PrimeField field = PrimeField::create(prime);
  Realization r;
  r.prime = field.modulus();
  const HomogeneousForm form = HomogeneousForm::from_terms(field, file.degree, file.terms);
  if (form.is_zero()) throw InputError(file.source + ": the curve equation vanishes modulo " + std::to_string(prime));
  r.curve = std::make_shared<const PlaneCurve>(PlaneCurve::create(form));
  r.cache = std::make_shared<SectionCache>(r.curve);

  // Replacement points: scanned points off the coordinate lines, in scan order.
  std::vector<CurvePoint> spare;
  std::size_t next_spare = 0;
  std::set<Vec3> used;
  auto take_spare = [&]() -> CurvePoint {
    if (spare.empty()) {
      for (const CurvePoint& p : find_rational_points(*r.curve, 64))
        if (!p.coords[0].is_zero() && !p.coords[1].is_zero() && !p.coords[2].is_zero()) spare.push_back(p);
    }
    while (next_spare < spare.size() && used.count(spare[next_spare].coords)) ++next_spare;
    if (next_spare >= spare.size()) throw InputError("not enough rational points to substitute divisor points");
    return spare[next_spare++];
  };
  std::map<std::array<std::int64_t, 3>, CurvePoint> resolved;
  auto resolve = [&](const PointSpec& ps, const std::string& what) -> CurvePoint {
    auto it = resolved.find(ps.coords);
    if (it != resolved.end()) return it->second;
    Vec3 v;
    for (int i = 0; i < 3; ++i) v[i] = field.from_int(ps.coords[i]);
    CurvePoint pt;
    try {
      pt = r.curve->make_point(v);
    } catch (const InputError& e) {
      if (!substitute_points)
        throw InputError(file.source + ":" + std::to_string(ps.line) + ": " + what + " " + coords_text(ps.coords) +
                         ": " + e.what());
      pt = take_spare();
      r.notes.push_back(what + " " + coords_text(ps.coords) + " is not a smooth point modulo " +
                        std::to_string(prime) + "; substituted " + coords_text(pt.coords));
    }
    used.insert(pt.coords);
    resolved.emplace(ps.coords, pt);
    return pt;
  };

  for (const PointSpec& ps : file.points) r.pinned.push_back(resolve(ps, "pinned point"));
  for (const BundleSpec& b : file.bundles) {
    if (!only.empty() && std::find(only.begin(), only.end(), b.name) == only.end()) continue;
    Divisor d;
    for (const PointSpec& ps : b.minus) d.add(resolve(ps, "point of bundle " + b.name), ps.multiplicity);
    r.bundles.emplace(b.name, LineBundle::create(r.curve, b.twist, d));
  }
  return r;
}

}  // namespace koszul
