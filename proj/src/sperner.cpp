#include "boolat/sperner.hpp"

#include "boolat/errors.hpp"

namespace boolat {

BigInt sp(unsigned k) {
  if (k == 0) throw domain_error("sp: k must be >= 1");
  const unsigned m = k / 2;
  BigInt r = 1;
  // C(k, m) multiplicatively; each division is exact.
  for (unsigned i = 1; i <= m; ++i) {
    r *= (k - m + i);
    r /= i;
  }
  return r;
}

unsigned lasp(const BigInt& n) {
  if (n < 1) throw domain_error("lasp: n must be >= 1");
  unsigned k = 1;
  BigInt s = 1;  // sp(1)
  while (s < n) {
    if (k % 2 == 1) {
      s *= 2;  // C(2m+2, m+1) = 2 * C(2m+1, m)
    } else {
      s *= k + 1;      // C(2m+1, m) = C(2m, m) * (2m+1) / (m+1)
      s /= k / 2 + 1;  // exact: C(2m, m)/(m+1) is the m-th Catalan number
    }
    ++k;
  }
  return k;
}

}  // namespace boolat
