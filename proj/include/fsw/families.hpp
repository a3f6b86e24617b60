#ifndef FSW_FAMILIES_HPP
#define FSW_FAMILIES_HPP

// Worked Kahler families: the projectivisation of a rank-3 bundle, the fibre
// product of two rank-2 projectivisations, and the universal blowup of a
// simply connected surface. Each has a closed form for FSW_n and can be
// assembled into KahlerFamilyData for the general formula.

#include "fsw/charclass.hpp"
#include "fsw/fswcore.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fsw {

inline void require_degree_two(const GradedClass &c, const Ring &ring, const std::string &path) {
  if (c.is_zero())
    return;
  if (!(c.ring() == ring))
    throw SpecError(path, "class lives over a different ring");
  if (!c.is_homogeneous_of(2))
    throw SpecError(path, "must be homogeneous of degree 2");
}

inline void require_bundle(const BundleClass &b, const Ring &ring, int rank, const std::string &path) {
  if (b.rank() != rank)
    throw SpecError(path, "must have rank " + std::to_string(rank) + ", got " + std::to_string(b.rank()));
  if (!(b.ring() == ring))
    throw SpecError(path, "bundle lives over a different ring");
}

// ---------------------------------------------------------------------------
// P(V) -> B, twisted by O_V(k) (x) pi^*L

struct ProjectivisationSpec {
  Ring ring;
  BundleClass V; // rank 3
  int k = 0;
  BundleClass L; // rank 1

  bool operator==(const ProjectivisationSpec &) const = default;

  void validate() const {
    require_bundle(V, ring, 3, "V");
    require_bundle(L, ring, 1, "L");
  }
};

/// S^k(V^*), the untwisted H^0 bundle. Rank 0 when k < 0.
inline BundleClass projectivisation_sections(const ProjectivisationSpec &spec) {
  spec.validate();
  if (spec.k < 0)
    return BundleClass::trivial(spec.ring, 0);
  return sym_power(dual(spec.V), spec.k);
}

/// (-1)^n s_{n-h0+1}(S^k(V^*) (x) L), zero for k < 0.
inline GradedClass projectivisation_fsw(const ProjectivisationSpec &spec, int n) {
  const BundleClass sk = projectivisation_sections(spec);
  if (spec.k < 0)
    return spec.ring.zero();
  const TotalClass s = tensor_line_segre(sk, spec.L.c(1));
  return sign_power(n) * s[n - sk.rank() + 1];
}

/// sum_i (-1)^{h0-1+i} C(n, h0-1+i) s_i(S^k(V^*)) c_1(L)^{n-h0+1-i}
inline GradedClass projectivisation_fsw_expanded(const ProjectivisationSpec &spec, int n) {
  const BundleClass sk = projectivisation_sections(spec);
  if (spec.k < 0)
    return spec.ring.zero();
  const int h0 = sk.rank();
  const TotalClass s = segre_of(sk);
  const GradedClass ell = spec.L.c(1);
  GradedClass acc = spec.ring.zero();
  for (int i = 0; i <= n - h0 + 1; ++i)
    acc += sign_power(h0 - 1 + i) * gbinom(n, h0 - 1 + i) * (s[i] * ell.pow(n - h0 + 1 - i));
  return acc;
}

inline KahlerFamilyData projectivisation_family_data(const ProjectivisationSpec &spec) {
  const BundleClass sk = projectivisation_sections(spec);
  KahlerFamilyData d = KahlerFamilyData::trivial(spec.ring, sk.rank(), 0, 0, 0);
  d.V0 = tensor_line_chern(sk, spec.L.c(1));
  return d;
}

// ---------------------------------------------------------------------------
// P(V1) x_B P(V2) -> B, twisted by O_{V1}(k) (x) O_{V2}(l) (x) Pi^*L

struct FibreProductSpec {
  Ring ring;
  BundleClass V1, V2; // rank 2 each
  int k = 0, l = 0;
  BundleClass L;

  bool operator==(const FibreProductSpec &) const = default;

  void validate() const {
    require_bundle(V1, ring, 2, "V1");
    require_bundle(V2, ring, 2, "V2");
    require_bundle(L, ring, 1, "L");
  }
};

/// S^k(V1^*) (x) S^l(V2^*), rank (1+k)(1+l); rank 0 unless k, l >= 0.
inline BundleClass fibre_product_sections(const FibreProductSpec &spec) {
  spec.validate();
  if (spec.k < 0 || spec.l < 0)
    return BundleClass::trivial(spec.ring, 0);
  return sym_power_product(dual(spec.V1), spec.k, dual(spec.V2), spec.l);
}

inline GradedClass fibre_product_fsw(const FibreProductSpec &spec, int n) {
  const BundleClass s = fibre_product_sections(spec);
  if (spec.k < 0 || spec.l < 0)
    return spec.ring.zero();
  return sign_power(n) * tensor_line_segre(s, spec.L.c(1))[n - s.rank() + 1];
}

inline KahlerFamilyData fibre_product_family_data(const FibreProductSpec &spec) {
  const BundleClass s = fibre_product_sections(spec);
  KahlerFamilyData d = KahlerFamilyData::trivial(spec.ring, s.rank(), 0, 0, 0);
  d.V0 = tensor_line_chern(s, spec.L.c(1));
  return d;
}

// ---------------------------------------------------------------------------
// Universal blowup Z = Bl_Delta(X x X) -> X, twisted by
// pi^*L1 (x) p^*L2 (x) O(+-kE)

enum class BlowupTwist {
  Zero,    ///< k = 0: W^i = H^i(X, L2)
  MinusE,  ///< O(-E), L2 basepoint-free
  MinusKE, ///< O(-kE), evaluation onto J^{k-1}(L2) surjective
  PlusE,   ///< O(E): same bundles as k = 0
  PlusKE,  ///< O(kE), k >= 2, J^{k-2}(L2 (x) K^*) sits inside W^2
};

inline std::string_view twist_name(BlowupTwist t) {
  switch (t) {
  case BlowupTwist::Zero:
    return "zero";
  case BlowupTwist::MinusE:
    return "minus_e";
  case BlowupTwist::MinusKE:
    return "minus_ke";
  case BlowupTwist::PlusE:
    return "plus_e";
  case BlowupTwist::PlusKE:
    return "plus_ke";
  }
  return "?";
}

struct BlowupSpec {
  Ring ring;            // surface presentation of X
  GradedClass L1;       // c_1(L1)
  BundleClass L2;       // rank 1
  BundleClass cotangent; // T^*X, rank 2
  GradedClass canonical; // c_1(K_X)
  int p0 = 0, p1 = 0, p2 = 0;
  int rho_g = 0;
  BlowupTwist twist = BlowupTwist::Zero;
  int k = 0;

  bool operator==(const BlowupSpec &) const = default;

  /// The k implied by the fixed-k twists.
  static std::optional<int> implied_k(BlowupTwist t) {
    switch (t) {
    case BlowupTwist::Zero:
      return 0;
    case BlowupTwist::MinusE:
    case BlowupTwist::PlusE:
      return 1;
    default:
      return std::nullopt;
    }
  }

  void validate() const {
    if (ring.backend() != Backend::SurfaceForm)
      throw SpecError("base", "the universal blowup needs a surface base");
    require_degree_two(L1, ring, "L1");
    require_degree_two(canonical, ring, "canonical");
    require_bundle(L2, ring, 1, "L2");
    require_bundle(cotangent, ring, 2, "cotangent");
    if (p0 < 0 || p1 < 0 || p2 < 0)
      throw SpecError("p", "dimensions p0, p1, p2 must be non-negative");
    if (rho_g < 0)
      throw SpecError("rho_g", "must be non-negative");
    if (auto fixed = implied_k(twist); fixed && *fixed != k)
      throw SpecError("k", std::string("twist '") + std::string(twist_name(twist)) + "' has k = " +
                               std::to_string(*fixed));
    if (twist == BlowupTwist::MinusKE && k < 1)
      throw SpecError("k", "minus_ke needs k >= 1");
    if (twist == BlowupTwist::PlusKE && k < 2)
      throw SpecError("k", "plus_ke needs k >= 2");
  }
};

/// The cohomology bundles W^i with fibres H^i(Bl_x X, p^*L2 (x) O(+-kE)),
/// before twisting by L1.
struct BlowupBundleData {
  int h0 = 0, h1 = 0, h2 = 0;
  BundleClass W0, W1, W2;
};

namespace detail {

/// Bundle with c(W) = c^{-1}, checked against the rank.
inline BundleClass inverse_bundle(int rank, const BundleClass &e, const std::string &relation) {
  try {
    return BundleClass::from_total(rank, segre_of(e).total());
  } catch (const SpecError &err) {
    throw SpecError("W0", relation + " is incompatible with rank " + std::to_string(rank) + " (" + err.what() + ")");
  }
}

} // namespace detail

inline BlowupBundleData blowup_bundle_data(const BlowupSpec &spec) {
  spec.validate();
  const Ring &ring = spec.ring;
  BlowupBundleData out;
  switch (spec.twist) {
  case BlowupTwist::Zero:
  case BlowupTwist::PlusE:
    out.h0 = spec.p0;
    out.h1 = spec.p1;
    out.h2 = spec.p2;
    out.W0 = BundleClass::trivial(ring, out.h0);
    out.W1 = BundleClass::trivial(ring, out.h1);
    out.W2 = BundleClass::trivial(ring, out.h2);
    return out;
  case BlowupTwist::MinusE:
    out.h0 = spec.p0 - 1;
    if (out.h0 < 0)
      throw SpecError("p0", "h0 = p0 - 1 is negative (p0 = " + std::to_string(spec.p0) + ")");
    out.h1 = spec.p1;
    out.h2 = spec.p2;
    // 0 -> W0 -> H^0(X, L2) -> L2 -> 0, so s(W0) = c(L2)
    out.W0 = detail::inverse_bundle(out.h0, spec.L2, "s(W0) = c(L2)");
    out.W1 = BundleClass::trivial(ring, out.h1);
    out.W2 = BundleClass::trivial(ring, out.h2);
    return out;
  case BlowupTwist::MinusKE: {
    const int jet_rank = spec.k * (spec.k + 1) / 2;
    out.h1 = spec.p1;
    out.h2 = spec.p2;
    out.h0 = spec.p0 + out.h1 - spec.p1 - jet_rank;
    if (out.h0 < 0)
      throw SpecError("p0", "h0 = p0 + h1 - p1 - k(k+1)/2 is negative (" + std::to_string(out.h0) + ")");
    const BundleClass jet = jet_total_class(spec.cotangent, spec.L2, spec.k - 1);
    out.W0 = detail::inverse_bundle(out.h0, jet, "c(W0) c(J^{k-1}(L2)) = 1");
    out.W1 = BundleClass::trivial(ring, out.h1);
    out.W2 = BundleClass::trivial(ring, out.h2);
    return out;
  }
  case BlowupTwist::PlusKE: {
    out.h0 = spec.p0;
    out.h1 = spec.p1;
    out.h2 = spec.p2 + (spec.k - 1) * spec.k / 2;
    const BundleClass twisted = BundleClass::line(spec.L2.c(1) - spec.canonical);
    const BundleClass jet = jet_total_class(spec.cotangent, twisted, spec.k - 2);
    // 0 -> J^{k-2}(L2 (x) K^*) -> W2 -> H^2(X, L2) -> 0
    out.W0 = BundleClass::trivial(ring, out.h0);
    out.W1 = BundleClass::trivial(ring, out.h1);
    out.W2 = BundleClass::from_total(out.h2, jet.total());
    return out;
  }
  }
  return out;
}

/// V^i = L1 (x) W^i, H^{2,0} trivial of rank rho_g.
inline KahlerFamilyData blowup_family_data(const BlowupSpec &spec) {
  const BlowupBundleData w = blowup_bundle_data(spec);
  KahlerFamilyData d = KahlerFamilyData::trivial(spec.ring, w.h0, w.h1, w.h2, spec.rho_g);
  d.V0 = tensor_line_chern(w.W0, spec.L1);
  d.V1 = tensor_line_chern(w.W1, spec.L1);
  d.V2 = tensor_line_chern(w.W2, spec.L1);
  return d;
}

/// delta = (h1 - h2 + rho_g) + n - h0 + 1.
inline int blowup_delta(const BlowupBundleData &w, int rho_g, int n) { return (w.h1 - w.h2 + rho_g) + n - w.h0 + 1; }

/// The per-delta closed forms for the universal blowup. Zero outside
/// delta in {0, 1, 2}: H^{2 delta}(X) = 0 above degree 4.
inline GradedClass blowup_fsw_delta(const BlowupSpec &spec, int n) {
  const BlowupBundleData w = blowup_bundle_data(spec);
  const Ring &ring = spec.ring;
  const int r = w.h1 - w.h2 + spec.rho_g;
  const int a = w.h1 - w.h2;
  const int delta = blowup_delta(w, spec.rho_g, n);
  const int chi = w.h0 - w.h1 + w.h2;
  if (delta != spec.rho_g + 1 - chi + n)
    throw std::logic_error("inconsistent delta");
  if (w.h0 == 0 || delta < 0 || delta > 2 || r < 0)
    return ring.zero();

  const Integer sign = sign_power(n);
  const GradedClass &l1 = spec.L1.is_zero() ? ring.zero() : spec.L1;

  if (delta == 0)
    return sign * ring.constant(gbinom(a, r));

  if (delta == 1) {
    const GradedClass s1_w0 = segre_of(w.W0)[1] - Integer(w.h0) * l1;
    if (r == 0)
      return sign * s1_w0;
    const GradedClass c1_w1 = w.W1.c(1) + Integer(w.h1) * l1;
    const GradedClass s1_w2 = segre_of(w.W2)[1] - Integer(w.h2) * l1;
    return sign * (gbinom(a - 1, r - 1) * c1_w1 + gbinom(a, r) * s1_w0 + gbinom(a - 1, r - 1) * s1_w2);
  }

  const TotalClass s_v0 = tensor_line_segre(w.W0, l1);
  const TotalClass s_v2 = tensor_line_segre(w.W2, l1);
  const BundleClass v1 = tensor_line_chern(w.W1, l1);
  if (r == 0)
    return sign * s_v0[2];
  if (r == 1)
    return sign * (v1.c(1) * s_v0[1] + gbinom(a, 1) * s_v0[2] + s_v2[1] * s_v0[1]);
  return sign * (gbinom(a - 2, r - 2) * v1.c(2) + gbinom(a - 1, r - 1) * (v1.c(1) * s_v0[1]) +
                 gbinom(a - 2, r - 2) * (s_v2[1] * v1.c(1)) + gbinom(a, r) * s_v0[2] +
                 gbinom(a - 1, r - 1) * (s_v2[1] * s_v0[1]) + gbinom(a - 2, r - 2) * s_v2[2]);
}

/// The expanded delta = 1 invariant for trivial W^i (k = 0, or O(E)):
/// (-1)^{n+1} p0 c1(L1) when p1 - p2 + rho_g = 0, otherwise
/// (-1)^n (p1-p2) c1(L1) C(p1-p2-1, r-1) + (-1)^{n+1} p0 c1(L1) C(p1-p2, r).
/// Empty for other delta.
inline std::optional<GradedClass> blowup_fsw_trivial_w_display(int p0, int p1, int p2, int rho_g,
                                                               const GradedClass &l1, int n) {
  const int r = p1 - p2 + rho_g;
  const int chi = p0 - p1 + p2;
  const int delta = rho_g + 1 - chi + n;
  if (delta != 1 || r < 0)
    return std::nullopt;
  const Integer sign = sign_power(n);
  if (r == 0)
    return -sign * (Integer(p0) * l1);
  return sign * (Integer(p1 - p2) * gbinom(p1 - p2 - 1, r - 1)) * l1 - sign * (Integer(p0) * gbinom(p1 - p2, r)) * l1;
}

/// The expanded delta = 1 and delta = 2 invariants for O(-E) with L2
/// basepoint-free, term by term as displayed for that example
/// (h0 = p0 - 1, s(W0) = c(L2), W1 and W2 trivial). Empty for other delta.
inline std::optional<GradedClass> blowup_fsw_basepoint_free_display(int p0, int p1, int p2, int rho_g,
                                                                    const GradedClass &l1, const GradedClass &l2,
                                                                    int n) {
  const int h0 = p0 - 1;
  const int r = p1 - p2 + rho_g;
  const int delta = r + n - h0 + 1;
  if (r < 0 || h0 < 1)
    return std::nullopt;
  const Integer sign = sign_power(n);
  const Integer a = p1 - p2;
  const long long ai = p1 - p2;
  if (delta == 1) {
    const GradedClass main = l2 - Integer(p0 - 1) * l1;
    if (r == 0)
      return sign * main;
    return sign * (Integer(p1) * gbinom(ai - 1, r - 1)) * l1 + sign * gbinom(ai, r) * main -
           sign * (Integer(p2) * gbinom(ai - 1, r - 1)) * l1;
  }
  if (delta == 2) {
    const GradedClass l11 = l1 * l1;
    const GradedClass l12 = l1 * l2;
    const GradedClass s2 = Integer(p0) * Integer(p0 - 1) / 2 * l11 - Integer(p0) * l12;
    const GradedClass mixed = l12 + Integer(1 - p0) * l11;
    if (r == 0)
      return sign * s2;
    if (r == 1)
      return -sign * (Integer(p1) * mixed) + sign * (a * s2) - sign * (Integer(p2) * mixed);
    return sign * (Integer(p1) * Integer(p1 - 1) / 2 * gbinom(ai - 2, r - 2)) * l11 -
           sign * (Integer(p1) * gbinom(ai - 1, r - 1)) * mixed -
           sign * (Integer(p2) * Integer(p1) * gbinom(ai - 2, r - 2)) * l11 + sign * gbinom(ai, r) * s2 -
           sign * (Integer(p2) * gbinom(ai - 1, r - 1)) * mixed +
           sign * (Integer(p2) * Integer(p2 - 1) / 2 * gbinom(ai - 2, r - 2)) * l11;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

using FamilyModel = std::variant<KahlerFamilyData, ProjectivisationSpec, FibreProductSpec, BlowupSpec>;

inline std::string_view family_name(const FamilyModel &model) {
  switch (model.index()) {
  case 0:
    return "generic";
  case 1:
    return "projectivisation";
  case 2:
    return "fibre_product";
  default:
    return "blowup";
  }
}

inline const Ring &family_ring(const FamilyModel &model) {
  return std::visit([](const auto &m) -> const Ring & { return m.ring; }, model);
}

/// The cohomology-bundle data fed to the general formula.
inline KahlerFamilyData family_data(const FamilyModel &model) {
  struct Visitor {
    KahlerFamilyData operator()(const KahlerFamilyData &d) const {
      d.validate();
      return d;
    }
    KahlerFamilyData operator()(const ProjectivisationSpec &s) const { return projectivisation_family_data(s); }
    KahlerFamilyData operator()(const FibreProductSpec &s) const { return fibre_product_family_data(s); }
    KahlerFamilyData operator()(const BlowupSpec &s) const { return blowup_family_data(s); }
  };
  return std::visit(Visitor{}, model);
}

/// The family's own closed form; empty for a generic family.
inline std::optional<GradedClass> family_form(const FamilyModel &model, int n) {
  struct Visitor {
    int n;
    std::optional<GradedClass> operator()(const KahlerFamilyData &) const { return std::nullopt; }
    std::optional<GradedClass> operator()(const ProjectivisationSpec &s) const { return projectivisation_fsw(s, n); }
    std::optional<GradedClass> operator()(const FibreProductSpec &s) const { return fibre_product_fsw(s, n); }
    std::optional<GradedClass> operator()(const BlowupSpec &s) const { return blowup_fsw_delta(s, n); }
  };
  return std::visit(Visitor{n}, model);
}

struct CrossCheckRow {
  int n = 0;
  GradedClass family_value;
  GradedClass general_value;
  bool equal = false;
};

struct CrossCheckReport {
  std::vector<CrossCheckRow> rows;

  bool all_equal() const {
    for (const auto &r : rows)
      if (!r.equal)
        return false;
    return true;
  }
};

/// Compares the family closed form with the general formula for each n in
/// [n_lo, n_hi]. A generic family is compared against its pushforward route.
inline CrossCheckReport family_cross_check(const FamilyModel &model, int n_lo, int n_hi) {
  const KahlerFamilyData data = family_data(model);
  CrossCheckReport report;
  for (int n = n_lo; n <= n_hi; ++n) {
    CrossCheckRow row;
    row.n = n;
    row.general_value = fsw_general(data, n);
    auto closed = family_form(model, n);
    row.family_value = closed ? *closed : fsw_general(data, n, GammaRoute::Pushforward);
    row.equal = row.family_value == row.general_value;
    report.rows.push_back(std::move(row));
  }
  return report;
}

} // namespace fsw

#endif // FSW_FAMILIES_HPP
