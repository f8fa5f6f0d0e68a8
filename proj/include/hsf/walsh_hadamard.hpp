#pragma once

#include <Eigen/Core>

#include <cassert>

namespace hsf {

/// Unnormalized in-place Walsh-Hadamard butterfly over a vector of length 2^n.
///
/// Row k and mask S pair with the character (-1)^popcount(k & S), so the
/// result at S is sum_k v[k] * chi_S(k). Applying it twice multiplies by 2^n.
/// The summation order inside each butterfly is fixed, so the result does not
/// depend on how the caller schedules it.
template <typename Derived>
void fwht_inplace(Eigen::DenseBase<Derived>& v) {
    using Index = Eigen::Index;
    const Index size = v.size();
    assert((size & (size - 1)) == 0 && "length must be a power of two");
    for (Index half = 1; half < size; half <<= 1) {
        for (Index block = 0; block < size; block += half << 1) {
            for (Index k = block; k < block + half; ++k) {
                const auto a = v.coeff(k);
                const auto b = v.coeff(k + half);
                v.coeffRef(k) = a + b;
                v.coeffRef(k + half) = a - b;
            }
        }
    }
}

/// Normalized forward transform: coefficient S equals 2^-n sum_k v[k] chi_S(k).
template <typename Derived>
typename Derived::PlainObject fwht(const Eigen::DenseBase<Derived>& v) {
    typename Derived::PlainObject out = v;
    fwht_inplace(out);
    out /= static_cast<typename Derived::Scalar>(v.size());
    return out;
}

/// Inverse of fwht: sum_S c[S] chi_S(k) for every row k.
template <typename Derived>
typename Derived::PlainObject ifwht(const Eigen::DenseBase<Derived>& c) {
    typename Derived::PlainObject out = c;
    fwht_inplace(out);
    return out;
}

}  // namespace hsf
