#ifndef FSW_BINOMIAL_HPP
#define FSW_BINOMIAL_HPP

#include "fsw/integer.hpp"

namespace fsw {

/// Generalized binomial coefficient a(a-1)...(a-b+1)/b! for any integer a;
/// zero for b < 0.
inline Integer gbinom(long long a, long long b) {
  if (b < 0)
    return 0;
  Integer r = 1;
  // r holds C(a, i) after step i, so every division is exact
  for (long long i = 0; i < b; ++i) {
    r *= Integer(a - i);
    r /= Integer(i + 1);
    if (r == 0)
      break;
  }
  return r;
}

} // namespace fsw

#endif // FSW_BINOMIAL_HPP
