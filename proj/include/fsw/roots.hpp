#ifndef FSW_ROOTS_HPP
#define FSW_ROOTS_HPP

// Splitting-principle evaluator. Each source bundle contributes a block of
// formal Chern roots; a target bundle is described by its roots as integer
// linear forms in those variables. The total Chern class of the target is
// expanded as a polynomial in the roots, rewritten in the elementary
// symmetric polynomials of each block, and those are replaced by the Chern
// classes of the sources.

#include "fsw/integer.hpp"
#include "fsw/ring.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fsw::roots {

using Exponents = std::vector<int>;

/// Polynomial in the root variables, kept only up to a total degree bound.
class RootPolynomial {
public:
  using Terms = std::map<Exponents, Integer>;

  RootPolynomial(std::size_t variables, int max_degree)
      : variables_(variables), max_degree_(max_degree) {}

  static RootPolynomial constant(std::size_t variables, int max_degree, const Integer &c) {
    RootPolynomial p(variables, max_degree);
    p.add(Exponents(variables, 0), c);
    return p;
  }

  /// 1 + sum_i form[i] * r_i
  static RootPolynomial one_plus_linear(const std::vector<int> &form, int max_degree) {
    RootPolynomial p = constant(form.size(), max_degree, 1);
    if (max_degree < 1)
      return p;
    for (std::size_t i = 0; i < form.size(); ++i) {
      Exponents e(form.size(), 0);
      e[i] = 1;
      p.add(e, form[i]);
    }
    return p;
  }

  void add(const Exponents &e, const Integer &c) {
    if (c == 0 || degree_of(e) > max_degree_)
      return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t variables() const { return variables_; }
  int max_degree() const { return max_degree_; }

  RootPolynomial operator*(const RootPolynomial &o) const {
    RootPolynomial out(variables_, std::min(max_degree_, o.max_degree_));
    for (const auto &[ea, ca] : terms_)
      for (const auto &[eb, cb] : o.terms_) {
        Exponents e(variables_);
        for (std::size_t i = 0; i < variables_; ++i)
          e[i] = ea[i] + eb[i];
        out.add(e, ca * cb);
      }
    return out;
  }

  static int degree_of(const Exponents &e) { return std::accumulate(e.begin(), e.end(), 0); }

private:
  std::size_t variables_;
  int max_degree_;
  Terms terms_;
};

/// Sizes of the symmetric blocks, in variable order.
struct BlockLayout {
  std::vector<int> sizes;

  std::size_t variables() const { return static_cast<std::size_t>(std::accumulate(sizes.begin(), sizes.end(), 0)); }
  std::size_t offset(std::size_t block) const {
    return static_cast<std::size_t>(std::accumulate(sizes.begin(), sizes.begin() + static_cast<long>(block), 0));
  }
  /// Number of elementary symmetric slots: one per (block, 1..size).
  std::size_t elementary_slots() const { return variables(); }
};

/// e_k of a block as a root polynomial.
inline RootPolynomial elementary(const BlockLayout &layout, std::size_t block, int k, int max_degree) {
  const std::size_t n = layout.variables();
  const std::size_t off = layout.offset(block);
  const int size = layout.sizes[block];
  RootPolynomial out(n, max_degree);
  if (k < 0 || k > size)
    return out;
  // enumerate k-subsets of the block by bitmask
  for (unsigned mask = 0; mask < (1u << size); ++mask) {
    if (__builtin_popcount(mask) != k)
      continue;
    Exponents e(n, 0);
    for (int j = 0; j < size; ++j)
      if (mask & (1u << j))
        e[off + static_cast<std::size_t>(j)] = 1;
    out.add(e, 1);
  }
  return out;
}

/// Polynomial in the elementary symmetric functions: exponent slot
/// offset(block) + (k-1) holds the power of e_k of that block.
using ElementaryPolynomial = std::map<Exponents, Integer>;

/// Rewrites a polynomial that is symmetric within each block. Repeatedly
/// strips the lex-leading term; its block exponents are non-increasing and
/// match the leading term of prod_k e_k^{a_k - a_{k+1}}.
inline ElementaryPolynomial to_elementary(RootPolynomial p, const BlockLayout &layout) {
  const std::size_t n = layout.variables();
  if (p.variables() != n)
    throw std::invalid_argument("root polynomial does not match block layout");
  const int max_degree = p.max_degree();

  std::vector<std::vector<RootPolynomial>> e;
  for (std::size_t b = 0; b < layout.sizes.size(); ++b) {
    e.emplace_back();
    for (int k = 1; k <= layout.sizes[b]; ++k)
      e.back().push_back(elementary(layout, b, k, max_degree));
  }

  ElementaryPolynomial out;
  while (!p.is_zero()) {
    const auto &[lead, coeff] = *p.terms().rbegin();
    const Integer c = coeff;
    Exponents target(n, 0);
    RootPolynomial product = RootPolynomial::constant(n, max_degree, c);
    for (std::size_t b = 0; b < layout.sizes.size(); ++b) {
      const std::size_t off = layout.offset(b);
      const int size = layout.sizes[b];
      for (int k = 1; k <= size; ++k) {
        const int here = lead[off + static_cast<std::size_t>(k - 1)];
        const int next = k < size ? lead[off + static_cast<std::size_t>(k)] : 0;
        const int power = here - next;
        if (power < 0)
          throw std::logic_error("polynomial is not symmetric within its blocks");
        target[off + static_cast<std::size_t>(k - 1)] = power;
        for (int t = 0; t < power; ++t)
          product = product * e[b][static_cast<std::size_t>(k - 1)];
      }
    }
    out[target] += c;
    for (const auto &[ex, cf] : product.terms())
      p.add(ex, -cf);
  }
  return out;
}

/// A source block: the Chern classes c_1..c_size of a bundle over the ring.
struct Source {
  int rank = 0;
  std::vector<GradedClass> chern; // chern[k] = c_k, chern[0] = 1
};

/// Total Chern class prod_r (1 + r) of the bundle whose roots are the given
/// linear forms, as an element of the ring.
inline GradedClass total_chern_from_roots(const Ring &ring, const std::vector<Source> &sources,
                                          const std::vector<std::vector<int>> &root_forms) {
  BlockLayout layout;
  for (const auto &s : sources)
    layout.sizes.push_back(s.rank);
  const std::size_t n = layout.variables();
  const int max_degree = ring.top_index();

  RootPolynomial total = RootPolynomial::constant(n, max_degree, 1);
  for (const auto &form : root_forms) {
    if (form.size() != n)
      throw std::invalid_argument("root form has wrong number of variables");
    total = total * RootPolynomial::one_plus_linear(form, max_degree);
  }

  GradedClass out = ring.zero();
  for (const auto &[ex, c] : to_elementary(std::move(total), layout)) {
    GradedClass term = ring.constant(c);
    for (std::size_t b = 0; b < sources.size(); ++b) {
      const std::size_t off = layout.offset(b);
      for (int k = 1; k <= sources[b].rank; ++k) {
        const int power = ex[off + static_cast<std::size_t>(k - 1)];
        if (power > 0)
          term *= sources[b].chern[static_cast<std::size_t>(k)].pow(power);
      }
    }
    out += term;
  }
  return out;
}

} // namespace fsw::roots

#endif // FSW_ROOTS_HPP
