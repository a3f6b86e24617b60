#ifndef FSW_CHARCLASS_HPP
#define FSW_CHARCLASS_HPP

// Chern and Segre calculus for formal vector bundles over a truncated ring.

#include "fsw/binomial.hpp"
#include "fsw/ring.hpp"
#include "fsw/roots.hpp"

#include <span>
#include <string>
#include <vector>

namespace fsw {

/// Total class split into homogeneous pieces; piece i lives in degree 2i.
/// Indices outside the stored range read as zero.
template <class C> class PieceSequence {
public:
  PieceSequence() = default;
  explicit PieceSequence(std::vector<C> pieces) : pieces_(std::move(pieces)) {}

  const C &operator[](std::size_t i) const { return pieces_[i]; }

  /// Piece i, zero outside [0, size).
  C at(long long i, const C &zero) const {
    if (i < 0 || i >= static_cast<long long>(pieces_.size()))
      return zero;
    return pieces_[static_cast<std::size_t>(i)];
  }

  std::size_t size() const { return pieces_.size(); }
  const std::vector<C> &pieces() const { return pieces_; }

private:
  std::vector<C> pieces_;
};

/// Total Segre class or other truncated total class over a base ring.
class TotalClass {
public:
  TotalClass() = default;
  TotalClass(Ring ring, std::vector<GradedClass> pieces) : ring_(std::move(ring)), pieces_(std::move(pieces)) {}

  const Ring &ring() const { return ring_; }
  /// Piece i; zero for i < 0 or beyond the truncation.
  GradedClass operator[](long long i) const { return pieces_.at(i, ring_.zero()); }
  std::size_t size() const { return pieces_.size(); }
  const std::vector<GradedClass> &pieces() const { return pieces_.pieces(); }

  GradedClass total() const {
    GradedClass out = ring_.zero();
    for (const auto &p : pieces_.pieces())
      out += p;
    return out;
  }

  bool operator==(const TotalClass &o) const {
    const std::size_t n = std::max(size(), o.size());
    for (std::size_t i = 0; i < n; ++i)
      if (!((*this)[static_cast<long long>(i)] == o[static_cast<long long>(i)]))
        return false;
    return true;
  }

  /// Split a total class into its pieces up to the truncation.
  static TotalClass from_total(const GradedClass &total) {
    const Ring &ring = total.ring();
    std::vector<GradedClass> pieces;
    for (int i = 0; i <= ring.top_index(); ++i)
      pieces.push_back(total.component(2 * i));
    return TotalClass(ring, std::move(pieces));
  }

private:
  Ring ring_;
  PieceSequence<GradedClass> pieces_;
};

/// Formal complex vector bundle: rank and Chern classes c_0 = 1, ..., c_rank.
class BundleClass {
public:
  BundleClass() : BundleClass(Ring(), 0, {}) {}

  /// `chern` lists c_0, c_1, ...; missing entries are zero. Throws SpecError
  /// when c_0 != 1, a piece is not homogeneous of degree 2i, or a class above
  /// the rank is non-zero.
  BundleClass(Ring ring, int rank, std::vector<GradedClass> chern) : ring_(std::move(ring)), rank_(rank) {
    if (rank < 0)
      throw SpecError("rank", "bundle rank must be non-negative, got " + std::to_string(rank));
    if (chern.empty())
      chern.push_back(ring_.one());
    if (!(chern[0] == ring_.one()))
      throw SpecError("chern/0", "c_0 must be 1");
    for (std::size_t i = 0; i < chern.size(); ++i) {
      if (!(chern[i].ring() == ring_) && !chern[i].is_zero())
        throw SpecError("chern/" + std::to_string(i), "class belongs to a different ring");
      if (!chern[i].is_homogeneous_of(2 * static_cast<int>(i)))
        throw SpecError("chern/" + std::to_string(i),
                        "c_" + std::to_string(i) + " must be homogeneous of degree " + std::to_string(2 * i));
      if (static_cast<int>(i) > rank && !chern[i].is_zero())
        throw SpecError("chern/" + std::to_string(i), "c_" + std::to_string(i) +
                                                          " must vanish above the rank " + std::to_string(rank));
    }
    chern_.reserve(static_cast<std::size_t>(rank) + 1);
    for (int i = 0; i <= rank; ++i) {
      if (i < static_cast<int>(chern.size()) && !chern[static_cast<std::size_t>(i)].is_zero())
        chern_.push_back(chern[static_cast<std::size_t>(i)]);
      else
        chern_.push_back(i == 0 ? ring_.one() : ring_.zero());
    }
  }

  static BundleClass trivial(const Ring &ring, int rank) { return BundleClass(ring, rank, {}); }

  /// Line bundle with the given first Chern class.
  static BundleClass line(const GradedClass &c1) { return BundleClass(c1.ring(), 1, {c1.ring().one(), c1}); }

  /// Bundle whose total Chern class is `total`, truncated to the rank.
  static BundleClass from_total(int rank, const GradedClass &total) {
    std::vector<GradedClass> chern;
    for (int i = 0; i <= total.ring().top_index(); ++i)
      chern.push_back(total.component(2 * i));
    return BundleClass(total.ring(), rank, std::move(chern));
  }

  const Ring &ring() const { return ring_; }
  int rank() const { return rank_; }

  /// c_i, zero for i < 0 or i > rank.
  GradedClass c(long long i) const {
    if (i < 0 || i > rank_)
      return ring_.zero();
    return chern_[static_cast<std::size_t>(i)];
  }

  const std::vector<GradedClass> &chern() const { return chern_; }

  GradedClass total() const {
    GradedClass out = ring_.zero();
    for (const auto &c : chern_)
      out += c;
    return out;
  }

  bool operator==(const BundleClass &o) const { return rank_ == o.rank_ && ring_ == o.ring_ && chern_ == o.chern_; }

private:
  Ring ring_;
  int rank_ = 0;
  std::vector<GradedClass> chern_;
};

// ---------------------------------------------------------------------------
// Formulas over any class algebra. Sequences are indexed by i with piece i of
// degree 2i; out-of-range indices read as zero.

namespace formulas {

template <ClassAlgebra C> C piece(std::span<const C> seq, long long i, const C &zero) {
  if (i < 0 || i >= static_cast<long long>(seq.size()))
    return zero;
  return seq[static_cast<std::size_t>(i)];
}

/// s_0 = 1, s_i = -(c_1 s_{i-1} + ... + c_i).
template <ClassAlgebra C> std::vector<C> segre(std::span<const C> chern, const C &unit, int top) {
  const C zero = unit.zero_like();
  std::vector<C> s;
  s.reserve(static_cast<std::size_t>(top) + 1);
  s.push_back(unit);
  for (int i = 1; i <= top; ++i) {
    C acc = zero;
    for (int j = 1; j <= i; ++j)
      acc = acc + piece(chern, j, zero) * s[static_cast<std::size_t>(i - j)];
    s.push_back(Integer(-1) * acc);
  }
  return s;
}

/// c_i(E (x) L) = sum_j C(r-i+j, j) c_{i-j}(E) l^j for i = 0..rank.
template <ClassAlgebra C> std::vector<C> tensor_line_chern(int rank, std::span<const C> chern, const C &ell) {
  const C zero = ell.zero_like();
  std::vector<C> ell_pow{ell.one_like()};
  for (int j = 1; j <= rank; ++j)
    ell_pow.push_back(ell_pow.back() * ell);
  std::vector<C> out;
  for (int i = 0; i <= rank; ++i) {
    C acc = zero;
    for (int j = 0; j <= i; ++j) {
      const Integer b = gbinom(rank - i + j, j);
      if (b != 0)
        acc = acc + b * (piece(chern, i - j, zero) * ell_pow[static_cast<std::size_t>(j)]);
    }
    out.push_back(acc);
  }
  return out;
}

/// s_i(E (x) L) = sum_j (-1)^{i-j} C(r+i-1, i-j) s_j(E) l^{i-j} for i = 0..top.
/// The lower index i-j is used instead of r-1+j; the two agree for r >= 1 and
/// only this one gives s(E (x) L) = 1 for r = 0.
template <ClassAlgebra C>
std::vector<C> tensor_line_segre(int rank, std::span<const C> segre, const C &ell, int top) {
  const C zero = ell.zero_like();
  std::vector<C> ell_pow{ell.one_like()};
  for (int j = 1; j <= top; ++j)
    ell_pow.push_back(ell_pow.back() * ell);
  std::vector<C> out;
  for (int i = 0; i <= top; ++i) {
    C acc = zero;
    for (int j = 0; j <= i; ++j) {
      const Integer b = sign_power(i - j) * gbinom(rank + i - 1, i - j);
      if (b != 0)
        acc = acc + b * (piece(segre, j, zero) * ell_pow[static_cast<std::size_t>(i - j)]);
    }
    out.push_back(acc);
  }
  return out;
}

} // namespace formulas

inline void require_line_class(const GradedClass &ell, const Ring &ring) {
  if (ell.is_zero())
    return;
  if (!(ell.ring() == ring))
    throw SpecError("ell", "line class belongs to a different ring");
  if (!ell.is_homogeneous_of(2))
    throw SpecError("ell", "line class must be homogeneous of degree 2");
}

/// Total Segre class s(E) = c(E)^{-1}, up to the truncation.
inline TotalClass segre_of(const BundleClass &e) {
  const Ring &ring = e.ring();
  return TotalClass(ring, formulas::segre<GradedClass>(e.chern(), ring.one(), ring.top_index()));
}

inline BundleClass tensor_line_chern(const BundleClass &e, const GradedClass &ell) {
  require_line_class(ell, e.ring());
  GradedClass l = ell.is_zero() ? e.ring().zero() : ell;
  return BundleClass(e.ring(), e.rank(), formulas::tensor_line_chern<GradedClass>(e.rank(), e.chern(), l));
}

inline TotalClass tensor_line_segre(const BundleClass &e, const GradedClass &ell) {
  require_line_class(ell, e.ring());
  const Ring &ring = e.ring();
  GradedClass l = ell.is_zero() ? ring.zero() : ell;
  const auto s = segre_of(e);
  return TotalClass(ring, formulas::tensor_line_segre<GradedClass>(e.rank(), s.pieces(), l, ring.top_index()));
}

inline BundleClass whitney_sum(const BundleClass &e, const BundleClass &f) {
  if (!(e.ring() == f.ring()))
    throw std::invalid_argument("whitney_sum: bundles over different rings");
  return BundleClass::from_total(e.rank() + f.rank(), e.total() * f.total());
}

inline BundleClass dual(const BundleClass &e) {
  std::vector<GradedClass> chern;
  for (int i = 0; i <= e.rank(); ++i)
    chern.push_back(sign_power(i) * e.c(i));
  return BundleClass(e.ring(), e.rank(), std::move(chern));
}

namespace detail {

inline roots::Source as_source(const BundleClass &e) {
  roots::Source s;
  s.rank = e.rank();
  s.chern = e.chern();
  return s;
}

/// All multisets of size k from {0..r-1}, as multiplicity vectors.
inline void multisets(int k, std::size_t pos, std::vector<int> &current, std::vector<std::vector<int>> &out) {
  if (pos + 1 == current.size()) {
    current[pos] = k;
    out.push_back(current);
    return;
  }
  for (int take = k; take >= 0; --take) {
    current[pos] = take;
    multisets(k - take, pos + 1, current, out);
  }
}

inline std::vector<std::vector<int>> multisets(int r, int k) {
  std::vector<std::vector<int>> out;
  if (r == 0) {
    if (k == 0)
      out.emplace_back();
    return out;
  }
  std::vector<int> current(static_cast<std::size_t>(r), 0);
  multisets(k, 0, current, out);
  return out;
}

} // namespace detail

/// Largest rank accepted by sym_power.
inline constexpr int kMaxSymPowerRank = 3;

/// S^k(E) via formal roots: its roots are the degree-k sums of roots of E.
inline BundleClass sym_power(const BundleClass &e, int k) {
  if (k < 0)
    throw SpecError("k", "symmetric power exponent must be non-negative");
  if (e.rank() > kMaxSymPowerRank)
    throw SpecError("rank", "sym_power supports rank <= " + std::to_string(kMaxSymPowerRank) + ", got " +
                                std::to_string(e.rank()));
  const auto forms = detail::multisets(e.rank(), k);
  const int rank = static_cast<int>(forms.size());
  if (k == 1)
    return e;
  const GradedClass total = roots::total_chern_from_roots(e.ring(), {detail::as_source(e)}, forms);
  return BundleClass::from_total(rank, total);
}

/// S^k(E) (x) S^l(F) from the joint roots of E and F.
inline BundleClass sym_power_product(const BundleClass &e, int k, const BundleClass &f, int l) {
  if (!(e.ring() == f.ring()))
    throw std::invalid_argument("sym_power_product: bundles over different rings");
  if (k < 0 || l < 0)
    throw SpecError("k", "symmetric power exponents must be non-negative");
  const auto fe = detail::multisets(e.rank(), k);
  const auto ff = detail::multisets(f.rank(), l);
  std::vector<std::vector<int>> forms;
  for (const auto &a : fe)
    for (const auto &b : ff) {
      std::vector<int> form(a);
      form.insert(form.end(), b.begin(), b.end());
      forms.push_back(std::move(form));
    }
  const GradedClass total =
      roots::total_chern_from_roots(e.ring(), {detail::as_source(e), detail::as_source(f)}, forms);
  return BundleClass::from_total(static_cast<int>(forms.size()), total);
}

/// Total class of the jet bundle J^q(L) over a surface, from
/// c(J^q(L)) = c(S^q(T*X) (x) L) c(J^{q-1}(L)) with J^0(L) = L.
inline BundleClass jet_total_class(const BundleClass &cotangent, const BundleClass &line, int q) {
  if (cotangent.rank() != 2)
    throw SpecError("cotangent", "cotangent bundle of a surface has rank 2");
  if (line.rank() != 1)
    throw SpecError("line", "jet bundles are taken of a line bundle");
  if (q < 0)
    throw SpecError("q", "jet order must be non-negative");
  if (!(cotangent.ring() == line.ring()))
    throw std::invalid_argument("jet_total_class: bundles over different rings");
  BundleClass jet = line;
  for (int order = 1; order <= q; ++order)
    jet = whitney_sum(tensor_line_chern(sym_power(cotangent, order), line.c(1)), jet);
  return jet;
}

} // namespace fsw

#endif // FSW_CHARCLASS_HPP
