#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace boolat {

using BigInt = boost::multiprecision::cpp_int;

/// Central binomial coefficient C(k, floor(k/2)), exact. k >= 1.
/// This is the largest antichain size in B_k (Sperner's theorem).
BigInt sp(unsigned k);

/// Smallest k >= 1 with n <= sp(k); the adjoint of sp. n >= 1.
/// For n >= 2 this is the minimum generating-set size of B_n.
unsigned lasp(const BigInt& n);

}  // namespace boolat
