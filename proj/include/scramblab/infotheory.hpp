#pragma once

#include <optional>
#include <utility>

#include "scramblab/register.hpp"

namespace scramblab {

// All entropies and mutual informations are in bits (log base 2).
// Eigenvalues below 1e-12 contribute zero; negatives above -1e-10 are
// clamped, anything lower is an error.

double entropy_from_spectrum(const Eigen::VectorXd& eigenvalues);
double renyi_from_spectrum(const Eigen::VectorXd& eigenvalues, double alpha);

double von_neumann_entropy(const DensityMatrix& rho);
double renyi_entropy(const DensityMatrix& rho, double alpha);

// I(X:Y) = S(X) + S(Y) - S(XY); with alpha set, the Renyi variant
// (diagnostic only: it can violate the data processing inequality).
double mutual_information(const PureState& state, const SubsystemMask& x, const SubsystemMask& y,
                          std::optional<double> alpha = std::nullopt);
double mutual_information(const DensityMatrix& rho, const SubsystemMask& x, const SubsystemMask& y,
                          std::optional<double> alpha = std::nullopt);

// I3(R:C:D) = I(R:C) + I(R:D) - I(R:CD).
double tripartite_information(const PureState& state, const SubsystemMask& r,
                              const SubsystemMask& c, const SubsystemMask& d);

// Normalized trace distance (1/2)||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// I(X:Y) - (2/ln 2) * Delta^2 with Delta the normalized trace distance
// between rho_XY and rho_X (x) rho_Y; Pinsker makes this >= 0.
double pinsker_slack(const PureState& state, const SubsystemMask& x, const SubsystemMask& y);

// {Delta - (1 - sqrt F), sqrt(1 - F) - Delta}; both >= 0 by
// Fuchs-van de Graaf.
std::pair<double, double> fuchs_van_de_graaf_slacks(const DensityMatrix& rho,
                                                    const DensityMatrix& sigma);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace scramblab
