#pragma once

#include <vector>

#include "density.hpp"
#include "distribution.hpp"
#include "entropy.hpp"

namespace qent {

// Geometric photon-number weights n_bar^k / (n_bar+1)^(k+1) for k = 0..max_n.
Eigen::VectorXd thermal_weights(double n_bar, int max_n);
Distribution thermal_spectrum(double n_bar, int max_n);  // renormalized
DensityMatrix thermal_truncated(double n_bar, int max_n);

// (n_bar+1) log2(n_bar+1) - n_bar log2 n_bar, the untruncated limit in bits.
double thermal_entropy_limit(double n_bar);

struct ThermalRow {
  int max_n = 0;
  double entropy = 0.0;  // of the renormalized truncation
  double deficit = 0.0;  // probability mass beyond the cutoff
};

std::vector<ThermalRow> thermal_convergence(double n_bar,
                                            const std::vector<int>& cutoffs,
                                            const EntropyMeasure& m,
                                            LogBase base = LogBase::Two);

// Symplectic spectrum of a covariance matrix in the (x1, p1, x2, p2, ...)
// ordering with vacuum variance 1: moduli of the eigenvalues of i Omega V,
// which come in equal pairs. Values below 1 are unphysical.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov);

// Von Neumann entropy (bits) of the Gaussian state with this covariance.
double gaussian_entropy(const Eigen::MatrixXd& cov);

// Two-mode covariance after mixing a single-mode state with vacuum on a
// transmissivity-lambda beamsplitter.
Eigen::MatrixXd beamsplitter_covariance(const Eigen::MatrixXd& cov_mode,
                                        double lambda);

// Central cluster of m spins coupled to n outer spins, all started in |+>,
// evolving under H = sum_{s,j} omega(s,j) Z_s Z_j. The outer marginal stays
// maximally mixed, so the cluster state has closed-form entries.
struct SpinConfig {
  int cluster = 0;            // m
  int outer = 0;              // n
  Eigen::MatrixXd couplings;  // m x n
};

DensityMatrix spin_cluster_state(const SpinConfig& cfg, double time);

struct SpinRow {
  double time = 0.0;
  double entropy = 0.0;           // cluster entropy, bits
  double dephased_entropy = 0.0;  // after pinching in the given basis
  double coherence = 0.0;         // tr[X^(x)m rho], the decaying witness
};

std::vector<SpinRow> spin_cluster_scan(const SpinConfig& cfg, const Basis& j,
                                       const std::vector<double>& times);

}  // namespace qent
