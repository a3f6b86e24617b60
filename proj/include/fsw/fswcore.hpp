#ifndef FSW_FSWCORE_HPP
#define FSW_FSWCORE_HPP

// Families Seiberg-Witten invariants of Kahler families with b_1 = 0 in the
// Kahler chamber:
//
//   FSW_n = sum_{m=0}^{h1-h2+rho_g} c_{h1-h2+rho_g-m}(H^{2,0}) Gamma_{m,n}
//
// where Gamma_{m,n} = pi_*(y^n phi_m) lives in H^{2 delta}(B), delta =
// m + n - h0 + 1. Gamma is available through three independent evaluations:
// the contracted double sum, the uncontracted triple sum, and a direct
// fibre integration over P(V^0).

#include "fsw/binomial.hpp"
#include "fsw/charclass.hpp"
#include "fsw/ring.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fsw {

/// Cohomology bundles of a Kahler family over a base ring.
struct KahlerFamilyData {
  Ring ring;
  int h0 = 0, h1 = 0, h2 = 0;
  int rho_g = 0;
  BundleClass V0, V1, V2;
  BundleClass H20;

  bool operator==(const KahlerFamilyData &) const = default;

  /// Data with trivial bundles of the given ranks.
  static KahlerFamilyData trivial(const Ring &ring, int h0, int h1, int h2, int rho_g) {
    return {ring,
            h0,
            h1,
            h2,
            rho_g,
            BundleClass::trivial(ring, h0),
            BundleClass::trivial(ring, h1),
            BundleClass::trivial(ring, h2),
            BundleClass::trivial(ring, rho_g)};
  }

  /// h1 - h2 + rho_g, the rank of the obstruction bundle.
  int obstruction_rank() const { return h1 - h2 + rho_g; }

  void validate() const {
    auto check = [&](const BundleClass &b, int expected, const char *name, const char *rank_name) {
      if (expected < 0)
        throw SpecError(rank_name, std::string(rank_name) + " must be non-negative");
      if (b.rank() != expected)
        throw SpecError(name, std::string("rank(") + name + ") = " + std::to_string(b.rank()) + " but " + rank_name +
                                  " = " + std::to_string(expected));
      if (!(b.ring() == ring))
        throw SpecError(name, std::string(name) + " lives over a different ring");
    };
    check(V0, h0, "V0", "h0");
    check(V1, h1, "V1", "h1");
    check(V2, h2, "V2", "h2");
    check(H20, rho_g, "H20", "rho_g");
  }
};

enum class GammaRoute { Closed, TripleSum, Pushforward };

inline std::string_view route_name(GammaRoute r) {
  switch (r) {
  case GammaRoute::Closed:
    return "closed";
  case GammaRoute::TripleSum:
    return "triple";
  case GammaRoute::Pushforward:
    return "pushforward";
  }
  return "?";
}

struct GammaResult {
  GradedClass value;
  int delta = 0;
  GammaRoute route = GammaRoute::Closed;
};

inline int gamma_delta(const KahlerFamilyData &d, int m, int n) { return m + n - d.h0 + 1; }

namespace detail {

inline void require_indices(int m, int n) {
  if (m < 0 || n < 0)
    throw SpecError("m,n", "Gamma indices must be non-negative");
}

/// Gamma vanishes unless 1 <= h0 <= m + n + 1.
inline bool gamma_vanishes(const KahlerFamilyData &d, int m, int n) {
  const int delta = gamma_delta(d, m, n);
  return d.h0 == 0 || delta < 0 || 2 * delta > d.ring.truncation_degree();
}

} // namespace detail

/// Gamma_{m,n} from the contracted double sum
///   (-1)^n sum_i sum_j s_j(V2) c_{delta-i}(V1) s_{i-j}(V0) C(h1-h2-delta+i-j, m-delta+i-j).
inline GammaResult gamma_closed(const KahlerFamilyData &d, int m, int n) {
  d.validate();
  detail::require_indices(m, n);
  const int delta = gamma_delta(d, m, n);
  GammaResult out{d.ring.zero(), delta, GammaRoute::Closed};
  if (detail::gamma_vanishes(d, m, n))
    return out;
  const TotalClass s0 = segre_of(d.V0);
  const TotalClass s2 = segre_of(d.V2);
  GradedClass acc = d.ring.zero();
  for (int i = std::max(delta - m, 0); i <= delta; ++i) {
    const GradedClass c1 = d.V1.c(delta - i);
    if (c1.is_zero())
      continue;
    for (int j = 0; j <= std::min(i, m - delta + i); ++j) {
      const Integer b = gbinom(d.h1 - d.h2 - delta + i - j, m - delta + i - j);
      if (b == 0)
        continue;
      acc += b * (s2[j] * c1 * s0[i - j]);
    }
  }
  out.value = sign_power(n) * acc;
  return out;
}

/// Gamma_{m,n} from the uncontracted sum over (p, j, i') before the
/// Vandermonde-Chu contraction.
inline GammaResult gamma_triple_sum(const KahlerFamilyData &d, int m, int n) {
  d.validate();
  detail::require_indices(m, n);
  const int delta = gamma_delta(d, m, n);
  GammaResult out{d.ring.zero(), delta, GammaRoute::TripleSum};
  if (detail::gamma_vanishes(d, m, n))
    return out;
  const TotalClass s0 = segre_of(d.V0);
  const TotalClass s2 = segre_of(d.V2);
  GradedClass acc = d.ring.zero();
  for (int p = 0; p <= m; ++p)
    for (int j = 0; j <= p; ++j)
      for (int ip = 0; ip <= m - p; ++ip) {
        const int segre_index = p + ip + n - j - d.h0 + 1;
        if (segre_index < 0)
          continue;
        const Integer b = sign_power(n + p - j) * gbinom(d.h2 + p - 1, p - j) * gbinom(d.h1 - m + p + ip, ip);
        if (b == 0)
          continue;
        acc += b * (s2[j] * d.V1.c(m - p - ip) * s0[segre_index]);
      }
  out.value = acc;
  return out;
}

/// Classes on P(V^0) pulled back from B, written as polynomials in the
/// hyperplane class x with coefficients in H*(B). Terms of total real degree
/// above `cap` are dropped.
class FibreClass {
public:
  FibreClass(Ring base, int cap) : base_(std::move(base)), cap_(cap) {}

  static FibreClass pullback(const GradedClass &b, int cap) {
    FibreClass out(b.ring(), cap);
    out.set(0, b);
    return out;
  }

  static FibreClass hyperplane(const Ring &base, int cap) {
    FibreClass out(base, cap);
    out.set(1, base.one());
    return out;
  }

  /// Coefficient of x^k.
  GradedClass coefficient(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
      return base_.zero();
    return coeffs_[static_cast<std::size_t>(k)];
  }
  int max_power() const { return static_cast<int>(coeffs_.size()) - 1; }

  FibreClass zero_like() const { return FibreClass(base_, cap_); }
  FibreClass one_like() const { return pullback(base_.one(), cap_); }

  friend FibreClass operator+(const FibreClass &a, const FibreClass &b) {
    FibreClass out(a.base_, std::min(a.cap_, b.cap_));
    const int top = std::max(a.max_power(), b.max_power());
    for (int k = 0; k <= top; ++k)
      out.set(k, a.coefficient(k) + b.coefficient(k));
    return out;
  }
  friend FibreClass operator-(const FibreClass &a, const FibreClass &b) { return a + Integer(-1) * b; }
  friend FibreClass operator*(const Integer &k, const FibreClass &a) {
    FibreClass out(a.base_, a.cap_);
    for (int i = 0; i <= a.max_power(); ++i)
      out.set(i, k * a.coefficient(i));
    return out;
  }
  friend FibreClass operator*(const FibreClass &a, const FibreClass &b) {
    FibreClass out(a.base_, std::min(a.cap_, b.cap_));
    for (int i = 0; i <= a.max_power(); ++i) {
      const GradedClass ai = a.coefficient(i);
      if (ai.is_zero())
        continue;
      for (int j = 0; j <= b.max_power(); ++j) {
        if (2 * (i + j) > out.cap_)
          break;
        out.add(i + j, ai * b.coefficient(j));
      }
    }
    return out;
  }

private:
  void set(int k, GradedClass c) {
    coeffs_.resize(std::max<std::size_t>(coeffs_.size(), static_cast<std::size_t>(k) + 1), base_.zero());
    GradedClass kept = base_.zero();
    for (const auto &[mono, coeff] : c.terms())
      if (mono.degree + 2 * k <= cap_)
        kept.add_term(mono, coeff);
    coeffs_[static_cast<std::size_t>(k)] = std::move(kept);
    trim();
  }
  void add(int k, const GradedClass &c) { set(k, coefficient(k) + c); }
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero())
      coeffs_.pop_back();
  }

  Ring base_;
  int cap_;
  std::vector<GradedClass> coeffs_;
};

static_assert(ClassAlgebra<FibreClass>);

namespace detail {

/// tau_j = pi_*(x^{j+h0-1}) for j = 0..top from tau_0 = 1, tau_{<0} = 0 and
/// tau_j = -(c_1 tau_{j-1} + ... + c_{h0} tau_{j-h0}).
inline std::vector<GradedClass> fibre_integrals(const BundleClass &v0, int top) {
  const Ring &ring = v0.ring();
  std::vector<GradedClass> tau;
  if (top < 0)
    return tau;
  tau.push_back(ring.one());
  for (int j = 1; j <= top; ++j) {
    GradedClass acc = ring.zero();
    for (int i = 1; i <= std::min(j, v0.rank()); ++i)
      acc += v0.c(i) * tau[static_cast<std::size_t>(j - i)];
    tau.push_back(-acc);
  }
  return tau;
}

} // namespace detail

/// pi_*(x^k) for the projectivisation P(V0) -> B: zero below the fibre
/// dimension h0 - 1, then s_{k-h0+1}(V0).
inline GradedClass pushforward_power(const BundleClass &v0, int k) {
  if (v0.rank() == 0)
    throw SpecError("V0", "P(V0) is empty when rank(V0) = 0");
  if (k < 0)
    throw SpecError("k", "power must be non-negative");
  const int j = k - v0.rank() + 1;
  if (j < 0)
    return v0.ring().zero();
  if (2 * j > v0.ring().truncation_degree())
    return v0.ring().zero();
  return detail::fibre_integrals(v0, j).back();
}

/// Gamma_{m,n} = pi_*(y^n phi_m) computed on P(V^0): phi_m is the degree-2m
/// part of c(V1 (x) O(1)) s(V2 (x) O(1)) in H*(B)[x], y = -x, and each x^k is
/// integrated over the fibre.
inline GammaResult gamma_pushforward(const KahlerFamilyData &d, int m, int n) {
  d.validate();
  detail::require_indices(m, n);
  const int delta = gamma_delta(d, m, n);
  GammaResult out{d.ring.zero(), delta, GammaRoute::Pushforward};
  if (d.h0 == 0)
    return out;

  const int cap = 2 * m;
  auto pull = [&](const std::vector<GradedClass> &seq) {
    std::vector<FibreClass> v;
    for (const auto &c : seq)
      v.push_back(FibreClass::pullback(c, cap));
    return v;
  };
  const FibreClass x = FibreClass::hyperplane(d.ring, cap);
  const auto c_v1 = pull(d.V1.chern());
  const auto s_v2 = pull(segre_of(d.V2).pieces());
  const auto c_twisted = formulas::tensor_line_chern<FibreClass>(d.h1, c_v1, x);
  const auto s_twisted = formulas::tensor_line_segre<FibreClass>(d.h2, s_v2, x, m);

  FibreClass phi = x.zero_like();
  for (int a = 0; a <= std::min(m, d.h1); ++a)
    phi = phi + c_twisted[static_cast<std::size_t>(a)] * s_twisted[static_cast<std::size_t>(m - a)];

  const int top = std::max(delta, 0);
  const auto tau = detail::fibre_integrals(d.V0, top);
  GradedClass acc = d.ring.zero();
  for (int k = 0; k <= phi.max_power(); ++k) {
    const int j = k + n - d.h0 + 1;
    if (j < 0 || j > top)
      continue;
    // only the degree 2(m-k) part of the x^k coefficient belongs to phi_m
    const GradedClass coeff = phi.coefficient(k).component(2 * (m - k));
    if (!coeff.is_zero())
      acc += coeff * tau[static_cast<std::size_t>(j)];
  }
  out.value = sign_power(n) * acc;
  return out;
}

inline GammaResult gamma(const KahlerFamilyData &d, int m, int n, GammaRoute route) {
  switch (route) {
  case GammaRoute::Closed:
    return gamma_closed(d, m, n);
  case GammaRoute::TripleSum:
    return gamma_triple_sum(d, m, n);
  case GammaRoute::Pushforward:
    return gamma_pushforward(d, m, n);
  }
  return gamma_closed(d, m, n);
}

/// FSW_n = sum_m c_{R-m}(H^{2,0}) Gamma_{m,n} with R = h1 - h2 + rho_g; the
/// sum is empty when R < 0.
inline GradedClass fsw_general(const KahlerFamilyData &d, int n, GammaRoute route = GammaRoute::Closed) {
  d.validate();
  const int r = d.obstruction_rank();
  GradedClass acc = d.ring.zero();
  for (int m = 0; m <= r; ++m) {
    const GradedClass c = d.H20.c(r - m);
    if (c.is_zero())
      continue;
    const GammaResult g = gamma(d, m, n, route);
    if (!g.value.is_zero())
      acc += c * g.value;
  }
  return acc;
}

/// Gamma_{m,n+h0} - c_1(V0) Gamma_{m,n+h0-1} + ... + (-1)^{h0} c_{h0}(V0) Gamma_{m,n}.
/// Always the zero class.
inline GradedClass recursion_residual(const KahlerFamilyData &d, int m, int n) {
  d.validate();
  GradedClass acc = d.ring.zero();
  for (int j = 0; j <= d.h0; ++j) {
    const GradedClass c = d.V0.c(j);
    if (c.is_zero())
      continue;
    acc += sign_power(j) * (c * gamma_closed(d, m, n + d.h0 - j).value);
  }
  return acc;
}

enum class SwChamber {
  /// b+ > 1: the invariant does not depend on a chamber.
  ChamberIndependent,
  /// b+ = 1: the Kahler-chamber invariant SW+.
  KahlerChamber,
};

struct UnparametrisedSW {
  Integer value;
  SwChamber chamber = SwChamber::ChamberIndependent;
};

/// Seiberg-Witten invariant of a single Kahler surface with b_1 = 0.
inline UnparametrisedSW sw_unparametrised(int h0, int h1, int h2, int rho_g, int chi) {
  if (h0 < 0 || h1 < 0 || h2 < 0 || rho_g < 0)
    throw SpecError("h", "cohomology dimensions must be non-negative");
  if (chi != h0 - h1 + h2)
    throw SpecError("chi", "chi must equal h0 - h1 + h2");
  if (rho_g > 0) {
    if (h0 > 0)
      return {gbinom(h1 - h2, h1 - h2 + rho_g), SwChamber::ChamberIndependent};
    return {0, SwChamber::ChamberIndependent};
  }
  return {chi >= 1 ? Integer(1) : Integer(0), SwChamber::KahlerChamber};
}

/// (-1)^{h0-1} C(rho_g - 1, h0 - 1): the same invariant when chi = rho_g + 1
/// and h1 - h2 < 0 < h0.
inline Integer sw_rewritten_form(int h0, int rho_g) { return sign_power(h0 - 1) * gbinom(rho_g - 1, h0 - 1); }

} // namespace fsw

#endif // FSW_FSWCORE_HPP
