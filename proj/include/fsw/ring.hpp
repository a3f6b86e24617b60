#ifndef FSW_RING_HPP
#define FSW_RING_HPP

// Truncated graded-commutative cohomology rings with exact integer
// coefficients. Three presentations are supported:
//
//   TruncatedPolynomial  Z[g_1..g_k] / (g_i^{n_i}, everything above the
//                        truncation degree)
//   SurfaceForm          H*(X) of a simply connected surface: degree-2
//                        generators, g_i g_j = q_ij vol, vol in degree 4
//   Point                Z in degree 0
//
// Degrees are real cohomological degrees, so every generator has even degree.

#include "fsw/integer.hpp"

#include <algorithm>
#include <concepts>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fsw {

enum class Backend { TruncatedPolynomial, SurfaceForm, Point };

inline std::string_view backend_name(Backend b) {
  switch (b) {
  case Backend::TruncatedPolynomial:
    return "polynomial";
  case Backend::SurfaceForm:
    return "surface";
  case Backend::Point:
    return "point";
  }
  return "?";
}

struct Generator {
  std::string name;
  int degree = 2;
  /// g^nilpotence = 0. Only meaningful for the polynomial backend.
  std::optional<int> nilpotence;

  bool operator==(const Generator &) const = default;
};

struct RingSpec {
  Backend backend = Backend::Point;
  std::vector<Generator> generators;
  int truncation_degree = 0;
  /// SurfaceForm only; symmetric, indexed like `generators`.
  std::vector<std::vector<long long>> intersection_matrix;

  bool operator==(const RingSpec &) const = default;

  static RingSpec point() { return {}; }

  /// Model of H*(CP^n): one degree-2 generator with t^{n+1} = 0.
  static RingSpec projective_space(int n, std::string name = "t") {
    RingSpec s;
    s.backend = Backend::TruncatedPolynomial;
    s.generators.push_back({std::move(name), 2, n + 1});
    s.truncation_degree = 2 * n;
    return s;
  }

  static RingSpec surface(std::vector<std::string> names, std::vector<std::vector<long long>> q) {
    RingSpec s;
    s.backend = Backend::SurfaceForm;
    for (auto &n : names)
      s.generators.push_back({std::move(n), 2, std::nullopt});
    s.truncation_degree = 4;
    s.intersection_matrix = std::move(q);
    return s;
  }
};

/// Exponent vector in normal form. For surfaces the last slot is `vol`.
struct Monomial {
  int degree = 0;
  std::vector<int> exponents;

  bool operator==(const Monomial &) const = default;
};

/// Graded lexicographic: lower degree first, then the larger exponent of an
/// earlier generator first.
struct MonomialOrder {
  bool operator()(const Monomial &a, const Monomial &b) const {
    if (a.degree != b.degree)
      return a.degree < b.degree;
    return std::lexicographical_compare(b.exponents.begin(), b.exponents.end(),
                                        a.exponents.begin(), a.exponents.end());
  }
};

class GradedClass;

namespace detail {

struct RingData {
  RingSpec spec;
  std::vector<int> slot_degrees; // generators, then vol for surfaces
  std::size_t slots = 0;
};

inline void validate(const RingSpec &spec) {
  if (spec.truncation_degree < 0 || spec.truncation_degree % 2 != 0)
    throw SpecError("truncation_degree", "must be a non-negative even integer, got " +
                                             std::to_string(spec.truncation_degree));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const auto &g = spec.generators[i];
    const std::string path = "generators/" + std::to_string(i);
    if (g.name.empty())
      throw SpecError(path + "/name", "generator name must be non-empty");
    if (g.name == "vol")
      throw SpecError(path + "/name", "'vol' is reserved");
    if (!seen.insert(g.name).second)
      throw SpecError(path + "/name", "duplicate generator name '" + g.name + "'");
    if (g.degree <= 0 || g.degree % 2 != 0)
      throw SpecError(path + "/degree", "generator '" + g.name +
                                            "' must have positive even degree, got " +
                                            std::to_string(g.degree));
    if (g.degree > spec.truncation_degree)
      throw SpecError(path + "/degree", "generator '" + g.name + "' exceeds the truncation degree");
    if (g.nilpotence && *g.nilpotence < 1)
      throw SpecError(path + "/nilpotence", "nilpotence exponent must be >= 1");
  }
  switch (spec.backend) {
  case Backend::Point:
    if (!spec.generators.empty() || spec.truncation_degree != 0)
      throw SpecError("generators", "point ring has no generators and truncation degree 0");
    if (!spec.intersection_matrix.empty())
      throw SpecError("intersection_matrix", "only surface rings carry an intersection matrix");
    break;
  case Backend::TruncatedPolynomial:
    if (!spec.intersection_matrix.empty())
      throw SpecError("intersection_matrix", "only surface rings carry an intersection matrix");
    break;
  case Backend::SurfaceForm: {
    if (spec.truncation_degree != 4)
      throw SpecError("truncation_degree", "surface ring must have truncation degree 4");
    const auto n = spec.generators.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (spec.generators[i].degree != 2)
        throw SpecError("generators/" + std::to_string(i) + "/degree",
                        "surface generators must have degree 2");
      if (spec.generators[i].nilpotence)
        throw SpecError("generators/" + std::to_string(i) + "/nilpotence",
                        "surface generators take no power relation");
    }
    if (spec.intersection_matrix.size() != n)
      throw SpecError("intersection_matrix", "must be " + std::to_string(n) + "x" + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (spec.intersection_matrix[i].size() != n)
        throw SpecError("intersection_matrix/" + std::to_string(i),
                        "row must have " + std::to_string(n) + " entries");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (spec.intersection_matrix[i][j] != spec.intersection_matrix[j][i])
          throw SpecError("intersection_matrix", "matrix is not symmetric at (" + std::to_string(i) +
                                                     "," + std::to_string(j) + ")");
    break;
  }
  }
}

} // namespace detail

/// Handle to an immutable ring. Copies share the same presentation.
class Ring {
public:
  Ring() : Ring(RingSpec::point()) {}

  explicit Ring(RingSpec spec) {
    detail::validate(spec);
    auto data = std::make_shared<detail::RingData>();
    for (const auto &g : spec.generators)
      data->slot_degrees.push_back(g.degree);
    if (spec.backend == Backend::SurfaceForm)
      data->slot_degrees.push_back(4);
    data->slots = data->slot_degrees.size();
    data->spec = std::move(spec);
    data_ = std::move(data);
  }

  const RingSpec &spec() const { return data_->spec; }
  Backend backend() const { return data_->spec.backend; }
  int truncation_degree() const { return data_->spec.truncation_degree; }
  /// Largest i with H^{2i} possibly non-zero.
  int top_index() const { return truncation_degree() / 2; }
  std::size_t generator_count() const { return data_->spec.generators.size(); }
  std::size_t slot_count() const { return data_->slots; }

  /// Same presentation. Rings built from equal specs are interchangeable.
  bool operator==(const Ring &other) const {
    return data_ == other.data_ || data_->spec == other.data_->spec;
  }

  Monomial unit_monomial() const { return Monomial{0, std::vector<int>(slot_count(), 0)}; }

  std::optional<std::size_t> generator_index(std::string_view name) const {
    const auto &gens = data_->spec.generators;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].name == name)
        return i;
    return std::nullopt;
  }

  /// Product of two normal-form monomials: coefficient factor and monomial,
  /// or nothing when the product vanishes in the ring.
  std::optional<std::pair<long long, Monomial>> multiply(const Monomial &a, const Monomial &b) const {
    const int degree = a.degree + b.degree;
    if (degree > truncation_degree())
      return std::nullopt;
    if (a.degree == 0)
      return std::make_pair(1LL, b);
    if (b.degree == 0)
      return std::make_pair(1LL, a);
    const auto &spec = data_->spec;
    if (spec.backend == Backend::SurfaceForm) {
      // both factors are single degree-2 generators here
      const auto i = single_generator(a), j = single_generator(b);
      const long long q = spec.intersection_matrix[i][j];
      if (q == 0)
        return std::nullopt;
      Monomial vol = unit_monomial();
      vol.exponents.back() = 1;
      vol.degree = 4;
      return std::make_pair(q, std::move(vol));
    }
    Monomial out{degree, a.exponents};
    for (std::size_t i = 0; i < out.exponents.size(); ++i) {
      out.exponents[i] += b.exponents[i];
      const auto &nil = spec.generators[i].nilpotence;
      if (nil && out.exponents[i] >= *nil)
        return std::nullopt;
    }
    return std::make_pair(1LL, std::move(out));
  }

  std::string monomial_string(const Monomial &m) const {
    if (m.degree == 0)
      return "1";
    std::string out;
    const auto &gens = data_->spec.generators;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      const int e = m.exponents[i];
      if (e == 0)
        continue;
      if (!out.empty())
        out += '*';
      out += i < gens.size() ? gens[i].name : std::string("vol");
      if (e > 1)
        out += '^' + std::to_string(e);
    }
    return out;
  }

  /// Named factors of a monomial, e.g. {{"t",2},{"s",1}}.
  std::vector<std::pair<std::string, int>> monomial_factors(const Monomial &m) const {
    std::vector<std::pair<std::string, int>> out;
    const auto &gens = data_->spec.generators;
    for (std::size_t i = 0; i < m.exponents.size(); ++i)
      if (m.exponents[i] != 0)
        out.emplace_back(i < gens.size() ? gens[i].name : std::string("vol"), m.exponents[i]);
    return out;
  }

  int slot_degree(std::size_t slot) const { return data_->slot_degrees[slot]; }

  inline GradedClass zero() const;
  inline GradedClass one() const;
  inline GradedClass constant(const Integer &c) const;
  inline GradedClass generator(std::string_view name) const;
  /// Fundamental class of a surface ring.
  inline GradedClass vol() const;
  /// Reduce an arbitrary exponent vector (any exponents, vol slot included for
  /// surfaces) times a coefficient to normal form.
  inline GradedClass monomial_class(std::span<const int> exponents, const Integer &coefficient) const;
  inline GradedClass monomial_class(const std::vector<std::pair<std::string, int>> &factors,
                                    const Integer &coefficient) const;

private:
  std::size_t single_generator(const Monomial &m) const {
    for (std::size_t i = 0; i < m.exponents.size(); ++i)
      if (m.exponents[i] != 0)
        return i;
    return 0;
  }

  std::shared_ptr<const detail::RingData> data_;
};

/// Element of a truncated ring: a finite map from normal-form monomials to
/// non-zero integer coefficients.
class GradedClass {
public:
  using Terms = std::map<Monomial, Integer, MonomialOrder>;

  GradedClass() = default;
  explicit GradedClass(Ring ring) : ring_(std::move(ring)) {}

  const Ring &ring() const { return ring_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coefficient * m, where m must already be in normal form.
  void add_term(const Monomial &m, const Integer &coefficient) {
    if (coefficient == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(m, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  GradedClass zero_like() const { return GradedClass(ring_); }
  GradedClass one_like() const { return ring_.one(); }

  /// Homogeneous piece of the given real degree.
  GradedClass component(int degree) const {
    GradedClass out(ring_);
    for (const auto &[m, c] : terms_)
      if (m.degree == degree)
        out.terms_.emplace(m, c);
    return out;
  }

  /// Integer coefficient of 1.
  Integer constant_term() const {
    auto it = terms_.find(ring_.unit_monomial());
    return it == terms_.end() ? Integer(0) : it->second;
  }

  /// Real degree if non-zero and homogeneous.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty())
      return std::nullopt;
    const int d = terms_.begin()->first.degree;
    for (const auto &[m, c] : terms_)
      if (m.degree != d)
        return std::nullopt;
    return d;
  }

  bool is_homogeneous_of(int degree) const {
    for (const auto &[m, c] : terms_)
      if (m.degree != degree)
        return false;
    return true;
  }

  GradedClass &operator+=(const GradedClass &o) {
    check_same(o);
    for (const auto &[m, c] : o.terms_)
      add_term(m, c);
    return *this;
  }
  GradedClass &operator-=(const GradedClass &o) {
    check_same(o);
    for (const auto &[m, c] : o.terms_)
      add_term(m, -c);
    return *this;
  }
  GradedClass &operator*=(const Integer &k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto &[m, c] : terms_)
      c *= k;
    return *this;
  }

  friend GradedClass operator+(GradedClass a, const GradedClass &b) { return a += b; }
  friend GradedClass operator-(GradedClass a, const GradedClass &b) { return a -= b; }
  friend GradedClass operator-(GradedClass a) { return a *= Integer(-1); }
  friend GradedClass operator*(GradedClass a, const Integer &k) { return a *= k; }
  friend GradedClass operator*(const Integer &k, GradedClass a) { return a *= k; }

  friend GradedClass operator*(const GradedClass &a, const GradedClass &b) {
    a.check_same(b);
    GradedClass out(a.ring_);
    for (const auto &[ma, ca] : a.terms_)
      for (const auto &[mb, cb] : b.terms_)
        if (auto p = a.ring_.multiply(ma, mb))
          out.add_term(p->second, ca * cb * p->first);
    return out;
  }
  GradedClass &operator*=(const GradedClass &o) { return *this = *this * o; }

  /// Structural equality of normal forms. Classes of different rings compare
  /// unequal unless both are zero.
  bool operator==(const GradedClass &o) const {
    if (terms_.empty() && o.terms_.empty())
      return true;
    return ring_ == o.ring_ && terms_ == o.terms_;
  }

  GradedClass pow(int e) const {
    GradedClass out = ring_.one();
    for (int i = 0; i < e; ++i)
      out *= *this;
    return out;
  }

  /// Canonical text form, e.g. "3*t^2 - t*s + 1"; "0" for the zero class.
  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    bool first = true;
    for (const auto &[m, c] : terms_) {
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first)
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      first = false;
      if (m.degree == 0)
        out += mag.str();
      else if (mag == 1)
        out += ring_.monomial_string(m);
      else
        out += mag.str() + "*" + ring_.monomial_string(m);
    }
    return out;
  }

private:
  void check_same(const GradedClass &o) const {
    if (!(ring_ == o.ring_))
      throw std::invalid_argument("operands belong to different rings");
  }

  Ring ring_;
  Terms terms_;
};

inline GradedClass Ring::zero() const { return GradedClass(*this); }

inline GradedClass Ring::one() const { return constant(1); }

inline GradedClass Ring::constant(const Integer &c) const {
  GradedClass out(*this);
  out.add_term(unit_monomial(), c);
  return out;
}

inline GradedClass Ring::generator(std::string_view name) const {
  auto idx = generator_index(name);
  if (!idx)
    throw SpecError(std::string(name), "unknown generator '" + std::string(name) + "'");
  std::vector<int> e(slot_count(), 0);
  e[*idx] = 1;
  return monomial_class(e, 1);
}

inline GradedClass Ring::vol() const {
  if (backend() != Backend::SurfaceForm)
    throw SpecError("vol", "'vol' exists only in surface rings");
  std::vector<int> e(slot_count(), 0);
  e.back() = 1;
  return monomial_class(e, 1);
}

inline GradedClass Ring::monomial_class(std::span<const int> exponents, const Integer &coefficient) const {
  if (exponents.size() != slot_count())
    throw std::invalid_argument("exponent vector has wrong length");
  GradedClass acc = constant(coefficient);
  for (std::size_t slot = 0; slot < exponents.size(); ++slot) {
    if (exponents[slot] < 0)
      throw std::invalid_argument("negative exponent");
    Monomial single = unit_monomial();
    single.exponents[slot] = 1;
    single.degree = slot_degree(slot);
    if (single.degree > truncation_degree())
      return zero();
    for (int k = 0; k < exponents[slot]; ++k) {
      GradedClass next(*this);
      for (const auto &[m, c] : acc.terms())
        if (auto p = multiply(m, single))
          next.add_term(p->second, c * p->first);
      acc = std::move(next);
      if (acc.is_zero())
        return acc;
    }
  }
  return acc;
}

inline GradedClass Ring::monomial_class(const std::vector<std::pair<std::string, int>> &factors,
                                        const Integer &coefficient) const {
  std::vector<int> e(slot_count(), 0);
  for (const auto &[name, power] : factors) {
    if (name == "vol") {
      if (backend() != Backend::SurfaceForm)
        throw SpecError("vol", "'vol' exists only in surface rings");
      e.back() += power;
      continue;
    }
    auto idx = generator_index(name);
    if (!idx)
      throw SpecError(name, "unknown generator '" + name + "'");
    e[*idx] += power;
  }
  return monomial_class(e, coefficient);
}

/// Homogeneous piece of `a` in real degree `degree`.
inline GradedClass graded_component(const GradedClass &a, int degree) { return a.component(degree); }

/// Re-reduce every term of `a` from its raw exponent vector.
inline GradedClass normal_form(const GradedClass &a) {
  GradedClass out = a.ring().zero();
  for (const auto &[m, c] : a.terms())
    out += a.ring().monomial_class(m.exponents, c);
  return out;
}

/// The algebraic interface shared by base classes and fibre classes, used by
/// the templated characteristic-class formulas.
template <class C>
concept ClassAlgebra = requires(const C &a, const C &b, const Integer &k) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { k * a } -> std::convertible_to<C>;
  { a.zero_like() } -> std::convertible_to<C>;
  { a.one_like() } -> std::convertible_to<C>;
};

static_assert(ClassAlgebra<GradedClass>);

} // namespace fsw

#endif // FSW_RING_HPP
