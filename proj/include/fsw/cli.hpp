#ifndef FSW_CLI_HPP
#define FSW_CLI_HPP

// Batch front-end: JSON job files, route evaluation, text and JSON reports.

#include "fsw/families.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fsw::cli {

using json = nlohmann::json;

enum class Route { Closed, Triple, Pushforward, FamilyForm };
enum class OutputFormat { Text, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kMaxN = 64;

inline std::string_view route_label(Route r) {
  switch (r) {
  case Route::Closed:
    return "closed";
  case Route::Triple:
    return "triple";
  case Route::Pushforward:
    return "pushforward";
  case Route::FamilyForm:
    return "family_form";
  }
  return "?";
}

inline std::optional<Route> parse_route(std::string_view s) {
  for (Route r : {Route::Closed, Route::Triple, Route::Pushforward, Route::FamilyForm})
    if (route_label(r) == s)
      return r;
  return std::nullopt;
}

struct JobSpec {
  RingSpec base;
  FamilyModel family;
  int n_lo = 0, n_hi = 0;
  std::vector<Route> routes;
  OutputFormat output = OutputFormat::Text;

  bool operator==(const JobSpec &) const = default;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

/// A JSON value together with its JSON-pointer path.
class Node {
public:
  Node(const json &value, std::string path) : value_(&value), path_(std::move(path)) {}

  const json &value() const { return *value_; }
  const std::string &path() const { return path_; }

  [[noreturn]] void fail(const std::string &message) const { throw SpecError(path_.empty() ? "/" : path_, message); }

  void require_object(std::initializer_list<std::string_view> allowed) const {
    if (!value_->is_object())
      fail("expected an object");
    for (const auto &[key, _] : value_->items()) {
      bool known = false;
      for (auto a : allowed)
        known = known || a == key;
      if (!known)
        throw SpecError(path_ + "/" + key, "unknown field '" + key + "'");
    }
  }

  bool has(const std::string &key) const { return value_->contains(key); }

  Node at(const std::string &key) const {
    if (!value_->contains(key))
      throw SpecError(path_ + "/" + key, "missing required field '" + key + "'");
    return Node((*value_)[key], path_ + "/" + key);
  }

  Node at(std::size_t i) const { return Node((*value_)[i], path_ + "/" + std::to_string(i)); }

  std::size_t array_size() const {
    if (!value_->is_array())
      fail("expected an array");
    return value_->size();
  }

  long long integer() const {
    if (!value_->is_number_integer())
      fail("expected an integer");
    return value_->get<long long>();
  }

  int small_int() const {
    const long long v = integer();
    if (v < -1000000 || v > 1000000)
      fail("integer out of range");
    return static_cast<int>(v);
  }

  Integer big_integer() const {
    if (value_->is_number_integer())
      return Integer(value_->get<long long>());
    if (value_->is_string()) {
      const std::string s = value_->get<std::string>();
      const std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
      if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
        fail("expected an integer or a decimal integer string");
      return Integer(s);
    }
    fail("expected an integer");
  }

  std::string string() const {
    if (!value_->is_string())
      fail("expected a string");
    return value_->get<std::string>();
  }

private:
  const json *value_;
  std::string path_;
};

/// A term is [name, exponent, ..., coefficient]; [c] is a constant.
inline GradedClass parse_term(const Ring &ring, const Node &node) {
  const std::size_t size = node.array_size();
  if (size % 2 == 0)
    node.fail("a term is [name, exponent, ..., coefficient]");
  std::vector<std::pair<std::string, int>> factors;
  for (std::size_t i = 0; i + 1 < size; i += 2) {
    const std::string name = node.at(i).string();
    const int power = node.at(i + 1).small_int();
    if (power < 0)
      node.at(i + 1).fail("exponent must be non-negative");
    if (name != "vol" && !ring.generator_index(name))
      node.at(i).fail("unknown generator '" + name + "'");
    if (name == "vol" && ring.backend() != Backend::SurfaceForm)
      node.at(i).fail("'vol' exists only in surface rings");
    factors.emplace_back(name, power);
  }
  return ring.monomial_class(factors, node.at(size - 1).big_integer());
}

/// A class is an integer constant or a list of terms.
inline GradedClass parse_class(const Ring &ring, const Node &node) {
  if (node.value().is_number_integer() || node.value().is_string())
    return ring.constant(node.big_integer());
  GradedClass acc = ring.zero();
  for (std::size_t i = 0; i < node.array_size(); ++i)
    acc += parse_term(ring, node.at(i));
  return acc;
}

/// A line-bundle class c_1: a class homogeneous of degree 2.
inline GradedClass parse_line_class(const Ring &ring, const Node &node) {
  GradedClass c = parse_class(ring, node);
  if (!c.is_zero() && !c.is_homogeneous_of(2))
    node.fail("expected a class homogeneous of degree 2");
  return c;
}

/// A bundle: list of homogeneous pieces c_0, c_1, ... with c_0 = 1.
inline BundleClass parse_bundle(const Ring &ring, int rank, const Node &node) {
  std::vector<GradedClass> pieces;
  for (std::size_t i = 0; i < node.array_size(); ++i) {
    GradedClass piece = parse_class(ring, node.at(i));
    if (!piece.is_zero() && !piece.is_homogeneous_of(static_cast<int>(2 * i)))
      node.at(i).fail("piece " + std::to_string(i) + " must be homogeneous of degree " + std::to_string(2 * i));
    pieces.push_back(std::move(piece));
  }
  if (pieces.empty())
    node.fail("a bundle needs at least the piece c_0 = 1");
  while (pieces.size() > 1 && pieces.back().is_zero())
    pieces.pop_back();
  if (static_cast<int>(pieces.size()) - 1 > rank)
    node.fail("nonzero Chern class above rank " + std::to_string(rank));
  try {
    return BundleClass(ring, rank, std::move(pieces));
  } catch (const SpecError &e) {
    node.fail(e.message());
  }
}

inline BundleClass parse_optional_bundle(const Ring &ring, int rank, const Node &parent, const std::string &key) {
  if (!parent.has(key))
    return BundleClass::trivial(ring, rank);
  return parse_bundle(ring, rank, parent.at(key));
}

inline RingSpec parse_base(const Node &node) {
  node.require_object({"type", "generators", "truncation_degree", "intersection_matrix", "n", "generator"});
  const std::string type = node.at("type").string();
  RingSpec spec;
  if (type == "point") {
    node.require_object({"type"});
    spec = RingSpec::point();
  } else if (type == "projective_space") {
    node.require_object({"type", "n", "generator"});
    const int n = node.at("n").small_int();
    if (n < 0)
      node.at("n").fail("dimension must be non-negative");
    spec = RingSpec::projective_space(n, node.has("generator") ? node.at("generator").string() : "t");
  } else if (type == "polynomial") {
    node.require_object({"type", "generators", "truncation_degree"});
    spec.backend = Backend::TruncatedPolynomial;
    const Node gens = node.at("generators");
    for (std::size_t i = 0; i < gens.array_size(); ++i) {
      const Node g = gens.at(i);
      g.require_object({"name", "degree", "nilpotence"});
      Generator gen;
      gen.name = g.at("name").string();
      gen.degree = g.has("degree") ? g.at("degree").small_int() : 2;
      if (g.has("nilpotence"))
        gen.nilpotence = g.at("nilpotence").small_int();
      spec.generators.push_back(std::move(gen));
    }
    spec.truncation_degree = node.at("truncation_degree").small_int();
  } else if (type == "surface") {
    node.require_object({"type", "generators", "intersection_matrix"});
    const Node gens = node.at("generators");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < gens.array_size(); ++i)
      names.push_back(gens.at(i).string());
    const Node q = node.at("intersection_matrix");
    std::vector<std::vector<long long>> matrix;
    if (q.array_size() != names.size())
      q.fail("intersection matrix must be " + std::to_string(names.size()) + "x" + std::to_string(names.size()));
    for (std::size_t i = 0; i < q.array_size(); ++i) {
      const Node row = q.at(i);
      if (row.array_size() != names.size())
        row.fail("row has wrong length");
      std::vector<long long> r;
      for (std::size_t j = 0; j < row.array_size(); ++j)
        r.push_back(row.at(j).integer());
      matrix.push_back(std::move(r));
    }
    spec = RingSpec::surface(std::move(names), std::move(matrix));
  } else {
    node.at("type").fail("unknown base type '" + type + "'");
  }
  try {
    Ring check(spec);
  } catch (const SpecError &e) {
    throw SpecError(node.path() + "/" + e.path(), e.message());
  }
  return spec;
}

inline int non_negative(const Node &node) {
  const int v = node.small_int();
  if (v < 0)
    node.fail("must be non-negative");
  return v;
}

inline FamilyModel parse_family(const Ring &ring, const Node &node) {
  if (!node.value().is_object())
    node.fail("expected an object");
  const std::string type = node.at("type").string();
  try {
    if (type == "generic") {
      node.require_object({"type", "h0", "h1", "h2", "rho_g", "V0", "V1", "V2", "H20"});
      KahlerFamilyData d;
      d.ring = ring;
      d.h0 = non_negative(node.at("h0"));
      d.h1 = non_negative(node.at("h1"));
      d.h2 = non_negative(node.at("h2"));
      d.rho_g = non_negative(node.at("rho_g"));
      d.V0 = parse_optional_bundle(ring, d.h0, node, "V0");
      d.V1 = parse_optional_bundle(ring, d.h1, node, "V1");
      d.V2 = parse_optional_bundle(ring, d.h2, node, "V2");
      d.H20 = parse_optional_bundle(ring, d.rho_g, node, "H20");
      d.validate();
      return d;
    }
    if (type == "projectivisation") {
      node.require_object({"type", "V", "k", "L"});
      ProjectivisationSpec s{ring, parse_bundle(ring, 3, node.at("V")), node.at("k").small_int(),
                             BundleClass::line(node.has("L") ? parse_line_class(ring, node.at("L")) : ring.zero())};
      s.validate();
      return s;
    }
    if (type == "fibre_product") {
      node.require_object({"type", "V1", "V2", "k", "l", "L"});
      FibreProductSpec s{ring,
                         parse_bundle(ring, 2, node.at("V1")),
                         parse_bundle(ring, 2, node.at("V2")),
                         node.at("k").small_int(),
                         node.at("l").small_int(),
                         BundleClass::trivial(ring, 1)};
      if (node.has("L"))
        s.L = BundleClass::line(parse_line_class(ring, node.at("L")));
      s.validate();
      return s;
    }
    if (type == "blowup") {
      node.require_object(
          {"type", "twist", "k", "p0", "p1", "p2", "rho_g", "L1", "L2", "cotangent", "canonical"});
      if (ring.backend() != Backend::SurfaceForm)
        throw SpecError("/base", "the blowup family needs a surface base");
      BlowupSpec s;
      s.ring = ring;
      const std::string twist = node.at("twist").string();
      bool found = false;
      for (BlowupTwist t : {BlowupTwist::Zero, BlowupTwist::MinusE, BlowupTwist::MinusKE, BlowupTwist::PlusE,
                            BlowupTwist::PlusKE})
        if (twist_name(t) == twist) {
          s.twist = t;
          found = true;
        }
      if (!found)
        node.at("twist").fail("unknown twist '" + twist + "'");
      if (node.has("k"))
        s.k = node.at("k").small_int();
      else if (auto implied = BlowupSpec::implied_k(s.twist))
        s.k = *implied;
      else
        node.at("k");
      s.p0 = non_negative(node.at("p0"));
      s.p1 = non_negative(node.at("p1"));
      s.p2 = non_negative(node.at("p2"));
      s.rho_g = non_negative(node.at("rho_g"));
      s.L1 = node.has("L1") ? parse_line_class(ring, node.at("L1")) : ring.zero();
      s.L2 = BundleClass::line(node.has("L2") ? parse_line_class(ring, node.at("L2")) : ring.zero());
      s.cotangent = parse_optional_bundle(ring, 2, node, "cotangent");
      s.canonical = node.has("canonical") ? parse_line_class(ring, node.at("canonical")) : s.cotangent.c(1);
      s.validate();
      return s;
    }
  } catch (const SpecError &e) {
    if (!e.path().empty() && e.path().front() == '/')
      throw;
    throw SpecError(node.path() + "/" + e.path(), e.message());
  }
  node.at("type").fail("unknown family type '" + type + "'");
}

inline std::pair<int, int> parse_range_text(const std::string &text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used != text.size())
        throw std::invalid_argument("trailing characters");
      return {v, v};
    }
    const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size())
      throw std::invalid_argument("trailing characters");
    const int hi = std::stoi(b, &used);
    if (used != b.size())
      throw std::invalid_argument("trailing characters");
    return {lo, hi};
  } catch (const std::exception &) {
    throw SpecError("--n", "expected <a>..<b>, got '" + text + "'");
  }
}

inline void check_range(int lo, int hi, const std::string &path) {
  if (lo > hi)
    throw SpecError(path, "empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  if (lo < 0 || hi > kMaxN)
    throw SpecError(path, "range must lie within 0.." + std::to_string(kMaxN));
}

inline void check_routes(const JobSpec &job, const std::string &path) {
  if (job.routes.empty())
    throw SpecError(path, "at least one route is required");
  for (Route r : job.routes)
    if (r == Route::FamilyForm && std::holds_alternative<KahlerFamilyData>(job.family))
      throw SpecError(path, "route 'family_form' needs a named family, not 'generic'");
}

} // namespace detail

/// Parses and validates a job file. Errors carry a JSON-pointer path.
inline JobSpec parse_spec(const std::string &source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error &e) {
    throw SpecError("/", std::string("malformed JSON: ") + e.what());
  }
  const detail::Node root(doc, "");
  root.require_object({"spec_version", "base", "family", "n_range", "routes", "output"});
  if (root.at("spec_version").integer() != 1)
    root.at("spec_version").fail("unsupported spec_version (expected 1)");

  JobSpec job;
  job.base = detail::parse_base(root.at("base"));
  const Ring ring(job.base);
  job.family = detail::parse_family(ring, root.at("family"));

  const detail::Node range = root.at("n_range");
  if (range.array_size() != 2)
    range.fail("expected [a, b]");
  job.n_lo = range.at(0).small_int();
  job.n_hi = range.at(1).small_int();
  detail::check_range(job.n_lo, job.n_hi, "/n_range");

  const detail::Node routes = root.at("routes");
  for (std::size_t i = 0; i < routes.array_size(); ++i) {
    const std::string name = routes.at(i).string();
    auto r = parse_route(name);
    if (!r)
      routes.at(i).fail("unknown route '" + name + "'");
    if (std::find(job.routes.begin(), job.routes.end(), *r) == job.routes.end())
      job.routes.push_back(*r);
  }
  detail::check_routes(job, "/routes");

  if (root.has("output")) {
    const std::string out = root.at("output").string();
    if (out == "text")
      job.output = OutputFormat::Text;
    else if (out == "json")
      job.output = OutputFormat::Json;
    else
      root.at("output").fail("expected 'text' or 'json'");
  }
  return job;
}

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline json class_terms(const GradedClass &c) {
  json terms = json::array();
  for (const auto &[m, coeff] : c.terms()) {
    json term = json::array();
    for (const auto &[name, power] : c.ring().monomial_factors(m)) {
      term.push_back(name);
      term.push_back(power);
    }
    if (coeff >= std::numeric_limits<long long>::min() && coeff <= std::numeric_limits<long long>::max())
      term.push_back(static_cast<long long>(coeff));
    else
      term.push_back(coeff.str());
    terms.push_back(std::move(term));
  }
  return terms;
}

inline json bundle_pieces(const BundleClass &b) {
  json pieces = json::array();
  pieces.push_back(1);
  for (int i = 1; i <= b.rank(); ++i)
    pieces.push_back(class_terms(b.c(i)));
  return pieces;
}

inline json base_json(const RingSpec &spec) {
  json out;
  switch (spec.backend) {
  case Backend::Point:
    out["type"] = "point";
    break;
  case Backend::TruncatedPolynomial:
    out["type"] = "polynomial";
    out["generators"] = json::array();
    for (const auto &g : spec.generators) {
      json gj{{"name", g.name}, {"degree", g.degree}};
      if (g.nilpotence)
        gj["nilpotence"] = *g.nilpotence;
      out["generators"].push_back(gj);
    }
    out["truncation_degree"] = spec.truncation_degree;
    break;
  case Backend::SurfaceForm:
    out["type"] = "surface";
    out["generators"] = json::array();
    for (const auto &g : spec.generators)
      out["generators"].push_back(g.name);
    out["intersection_matrix"] = spec.intersection_matrix;
    break;
  }
  return out;
}

inline json family_json(const FamilyModel &model) {
  struct Visitor {
    json operator()(const KahlerFamilyData &d) const {
      return {{"type", "generic"},       {"h0", d.h0},
              {"h1", d.h1},              {"h2", d.h2},
              {"rho_g", d.rho_g},        {"V0", bundle_pieces(d.V0)},
              {"V1", bundle_pieces(d.V1)}, {"V2", bundle_pieces(d.V2)},
              {"H20", bundle_pieces(d.H20)}};
    }
    json operator()(const ProjectivisationSpec &s) const {
      return {{"type", "projectivisation"}, {"V", bundle_pieces(s.V)}, {"k", s.k}, {"L", class_terms(s.L.c(1))}};
    }
    json operator()(const FibreProductSpec &s) const {
      return {{"type", "fibre_product"}, {"V1", bundle_pieces(s.V1)}, {"V2", bundle_pieces(s.V2)},
              {"k", s.k},                {"l", s.l},                  {"L", class_terms(s.L.c(1))}};
    }
    json operator()(const BlowupSpec &s) const {
      return {{"type", "blowup"},
              {"twist", std::string(twist_name(s.twist))},
              {"k", s.k},
              {"p0", s.p0},
              {"p1", s.p1},
              {"p2", s.p2},
              {"rho_g", s.rho_g},
              {"L1", class_terms(s.L1)},
              {"L2", class_terms(s.L2.c(1))},
              {"cotangent", bundle_pieces(s.cotangent)},
              {"canonical", class_terms(s.canonical)}};
    }
  };
  return std::visit(Visitor{}, model);
}

} // namespace detail

inline json serialize_json(const JobSpec &job) {
  json routes = json::array();
  for (Route r : job.routes)
    routes.push_back(std::string(route_label(r)));
  return {{"spec_version", 1},
          {"base", detail::base_json(job.base)},
          {"family", detail::family_json(job.family)},
          {"n_range", {job.n_lo, job.n_hi}},
          {"routes", routes},
          {"output", job.output == OutputFormat::Json ? "json" : "text"}};
}

inline std::string serialize_spec(const JobSpec &job) { return serialize_json(job).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Evaluation

struct RouteValue {
  Route route;
  std::optional<GradedClass> value;
  std::string error;
};

struct TraceEntry {
  int m = 0;
  int delta = 0;
  GradedClass gamma;
  GradedClass obstruction; // c_{R-m}(H^{2,0})
};

struct ReportRow {
  int n = 0;
  int degree = 0; // cohomological degree 2(R + n - h0 + 1)
  std::vector<RouteValue> values;
  std::optional<bool> equal; // set when two or more routes succeeded
  std::vector<TraceEntry> trace;
};

struct Report {
  std::string family;
  std::vector<ReportRow> rows;
  std::vector<std::string> errors;

  bool has_mismatch() const {
    for (const auto &r : rows)
      if (r.equal && !*r.equal)
        return true;
    return false;
  }

  int exit_code() const {
    if (!errors.empty())
      return kExitInputError;
    return has_mismatch() ? kExitMismatch : kExitOk;
  }
};

inline Report run(const JobSpec &job, bool trace = false) {
  Report report;
  report.family = std::string(family_name(job.family));
  std::optional<KahlerFamilyData> data;
  try {
    data = family_data(job.family);
  } catch (const std::exception &e) {
    report.errors.push_back(std::string("family data: ") + e.what());
  }

  for (int n = job.n_lo; n <= job.n_hi; ++n) {
    ReportRow row;
    row.n = n;
    if (data)
      row.degree = 2 * (data->obstruction_rank() + n - data->h0 + 1);
    for (Route route : job.routes) {
      RouteValue rv{route, std::nullopt, {}};
      try {
        switch (route) {
        case Route::Closed:
        case Route::Triple:
        case Route::Pushforward: {
          if (!data)
            throw std::runtime_error("no family data");
          const GammaRoute g = route == Route::Closed   ? GammaRoute::Closed
                               : route == Route::Triple ? GammaRoute::TripleSum
                                                        : GammaRoute::Pushforward;
          rv.value = fsw_general(*data, n, g);
          break;
        }
        case Route::FamilyForm:
          rv.value = family_form(job.family, n);
          if (!rv.value)
            throw std::runtime_error("no family form for a generic family");
          break;
        }
      } catch (const std::exception &e) {
        rv.error = e.what();
        report.errors.push_back("route " + std::string(route_label(route)) + ", n = " + std::to_string(n) + ": " +
                                e.what());
      }
      row.values.push_back(std::move(rv));
    }
    std::vector<const GradedClass *> ok;
    for (const auto &v : row.values)
      if (v.value)
        ok.push_back(&*v.value);
    if (ok.size() >= 2) {
      bool equal = true;
      for (const auto *v : ok)
        equal = equal && *v == *ok.front();
      row.equal = equal;
    }
    if (trace && data) {
      const int r = data->obstruction_rank();
      for (int m = 0; m <= r; ++m) {
        TraceEntry t;
        t.m = m;
        t.delta = gamma_delta(*data, m, n);
        t.gamma = gamma_closed(*data, m, n).value;
        t.obstruction = data->H20.c(r - m);
        row.trace.push_back(std::move(t));
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Output

inline std::string format_text(const Report &report) {
  std::ostringstream out;
  out << "family: " << report.family << "\n";
  for (const auto &row : report.rows) {
    out << "n = " << row.n << "  (degree " << row.degree << ")\n";
    for (const auto &v : row.values) {
      out << "  " << route_label(v.route) << ": ";
      if (v.value)
        out << v.value->to_string() << "\n";
      else
        out << "error: " << v.error << "\n";
    }
    if (row.equal)
      out << "  verdict: " << (*row.equal ? "equal" : "mismatch") << "\n";
    for (const auto &t : row.trace)
      out << "  trace m = " << t.m << "  delta = " << t.delta << "  gamma = " << t.gamma.to_string()
          << "  c_{R-m}(H20) = " << t.obstruction.to_string() << "\n";
  }
  for (const auto &e : report.errors)
    out << "error: " << e << "\n";
  const char *status = !report.errors.empty() ? "error" : report.has_mismatch() ? "mismatch" : "ok";
  out << "status: " << status << "\n";
  return out.str();
}

inline json report_json(const Report &report) {
  json rows = json::array();
  for (const auto &row : report.rows) {
    json values = json::array();
    for (const auto &v : row.values) {
      json entry{{"route", std::string(route_label(v.route))}};
      if (v.value) {
        entry["text"] = v.value->to_string();
        entry["terms"] = detail::class_terms(*v.value);
      } else {
        entry["error"] = v.error;
      }
      values.push_back(std::move(entry));
    }
    json r{{"n", row.n}, {"degree", row.degree}, {"values", values}};
    if (row.equal)
      r["verdict"] = *row.equal ? "equal" : "mismatch";
    if (!row.trace.empty()) {
      json tr = json::array();
      for (const auto &t : row.trace)
        tr.push_back({{"m", t.m},
                      {"delta", t.delta},
                      {"gamma", t.gamma.to_string()},
                      {"obstruction", t.obstruction.to_string()}});
      r["trace"] = std::move(tr);
    }
    rows.push_back(std::move(r));
  }
  const char *status = !report.errors.empty() ? "error" : report.has_mismatch() ? "mismatch" : "ok";
  return {{"family", report.family}, {"rows", rows}, {"errors", report.errors}, {"status", status}};
}

inline std::string format_json(const Report &report) { return report_json(report).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Command line

inline int run_cli(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err) {
  CLI::App app{"Families Seiberg-Witten invariant calculator", "fswcalc"};
  std::string spec_path = "-";
  std::vector<std::string> routes;
  std::string n_range;
  std::string format;
  bool check = false;
  bool trace = false;
  app.add_option("--spec", spec_path, "job file (JSON); '-' reads stdin");
  app.add_option("--route", routes, "route to evaluate (repeatable): closed, triple, pushforward, family_form");
  app.add_option("--n", n_range, "range of n as <a>..<b>");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--check", check, "evaluate every route and report verdicts");
  app.add_flag("--trace", trace, "print the Gamma_{m,n} table for each n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    std::string source;
    if (spec_path == "-") {
      std::ostringstream buf;
      buf << in.rdbuf();
      source = buf.str();
    } else {
      std::ifstream file(spec_path, std::ios::binary);
      if (!file)
        throw SpecError("--spec", "cannot open '" + spec_path + "'");
      std::ostringstream buf;
      buf << file.rdbuf();
      source = buf.str();
    }
    JobSpec job = parse_spec(source);

    if (!routes.empty()) {
      job.routes.clear();
      for (const auto &name : routes) {
        auto r = parse_route(name);
        if (!r)
          throw SpecError("--route", "unknown route '" + name + "'");
        if (std::find(job.routes.begin(), job.routes.end(), *r) == job.routes.end())
          job.routes.push_back(*r);
      }
    }
    if (check) {
      job.routes = {Route::Closed, Route::Triple, Route::Pushforward};
      if (!std::holds_alternative<KahlerFamilyData>(job.family))
        job.routes.push_back(Route::FamilyForm);
    }
    detail::check_routes(job, "--route");
    if (!n_range.empty()) {
      std::tie(job.n_lo, job.n_hi) = detail::parse_range_text(n_range);
      detail::check_range(job.n_lo, job.n_hi, "--n");
    }
    if (format == "text")
      job.output = OutputFormat::Text;
    else if (format == "json")
      job.output = OutputFormat::Json;

    const Report report = run(job, trace);
    out << (job.output == OutputFormat::Json ? format_json(report) : format_text(report));
    for (const auto &e : report.errors)
      err << "error: " << e << "\n";
    return report.exit_code();
  } catch (const SpecError &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

} // namespace fsw::cli

#endif // FSW_CLI_HPP
