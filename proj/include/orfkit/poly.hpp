#pragma once

// Dense complex polynomials stored by ascending powers.

#include <complex>
#include <span>
#include <vector>

namespace orfkit {

using cplx = std::complex<double>;
using Poly = std::vector<cplx>;

namespace poly {

cplx horner(std::span<const cplx> c, cplx z);

Poly multiply(std::span<const cplx> a, std::span<const cplx> b);

/// a + b z
Poly linear(cplx a, cplx b);

/// c'_k = conj(c_{n-k}) at declared degree n = c.size() - 1.
Poly reverse_conj(std::span<const cplx> c);

/// Sum with the shorter operand zero-padded.
Poly add(std::span<const cplx> a, std::span<const cplx> b);

Poly scaled(std::span<const cplx> a, cplx s);

double max_abs(std::span<const cplx> c);

/// Roots of c (leading coefficient nonzero) as companion-matrix eigenvalues.
std::vector<cplx> roots(std::span<const cplx> c);

struct Division {
  Poly quotient;
  cplx remainder;
};

/// Divides p (declared degree m) by a + b z, yielding declared degree m - 1.
/// A vanishing b is a root at infinity: the top coefficient becomes the remainder.
/// The sweep direction is chosen by the root modulus for stability.
Division divide_linear(std::span<const cplx> p, cplx a, cplx b);

}  // namespace poly
}  // namespace orfkit
