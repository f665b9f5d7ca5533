#pragma once

namespace nle {

// Brute-force entanglement entropy (nats) of one oscillator in the ground
// state of two coupled oscillators with ground-state width matrix
// [[w, eps], [eps, w]] (the wavefunction is exp(-q.W.q/2) up to
// normalization). The state is expanded in a truncated number basis of the
// unit-frequency oscillator, the second oscillator is traced out and the
// reduced density matrix is diagonalized directly.
//
// Deliberately self-contained (plain doubles, local eigensolver) so it can
// stand as an independent cross-check of the Gaussian spectrum pipeline.
double two_oscillator_entropy_fock(double w, double eps, int basis_dim = 64, int grid_n = 1600,
                                   double grid_half_width = 16.0);

}  // namespace nle
