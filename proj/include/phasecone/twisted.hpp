#pragma once

#include "phasecone/core.hpp"

namespace phasecone::twisted {

// Star product of sampled fields:
//   (f * g)(z) = (2 pi)^{-1} integral f(z') g(z - z') exp((i/2) w(z, z')) dz'
// with w the symplectic form, g zero-extended off grid, quadrature on nodes.
// Node differences land on nodes, so no interpolation enters.  Fast path:
// the multiplier splits per axis into modulated ordinary convolutions done
// with padded FFTs; agrees with the direct quadrature to near round-off.
// multiplier_sign = -1 flips the phase orientation, which exactly swaps the
// operand order (debugging aid for the non-commutativity witness).
ComplexField twisted_convolve(const ComplexField& f, const ComplexField& g,
                              int multiplier_sign = +1);

// Literal O(M^4) quadrature of the same sum; reference for the fast path.
ComplexField twisted_convolve_direct(const ComplexField& f,
                                     const ComplexField& g,
                                     int multiplier_sign = +1);

// Adjoint element f*(z) = conj(f(-z)); index reflection j -> (M - j) mod M,
// so the origin node is a fixed point.
ComplexField involution_quantum(const ComplexField& f);

// The classical algebra is unimodular, so its involution is the same map.
ComplexField involution_classical(const ComplexField& f);

// Plain convolution (f * g)(z) = integral f(z') g(z - z') dz', unweighted
// measure, zero-extension, padded-FFT implementation.
ComplexField classical_convolve(const ComplexField& f, const ComplexField& g);

// Direct quadrature reference for classical_convolve.
ComplexField classical_convolve_direct(const ComplexField& f,
                                       const ComplexField& g);

// Bilinear pairing integral f(z) g(z) dz, no conjugation.
cdouble pairing(const ComplexField& f, const ComplexField& g);

}  // namespace phasecone::twisted
