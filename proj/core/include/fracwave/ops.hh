#pragma once

#include "fracwave/cutoff.hh"
#include "fracwave/field.hh"
#include "fracwave/transform.hh"

namespace fracwave {

// D^sigma = (1 - Lap)^{sigma/2}: scales c(n) by <lambda_n>^sigma
SpectralField apply_D(double sigma, const SpectralField& f);

// sharp projector onto lambda_n <= N and its complement; Pi_N + Pi_N^perp = Id
SpectralField sharp_project(double N, const SpectralField& f);
SpectralField sharp_complement(double N, const SpectralField& f);

// smooth projector pi_N: scales c(n) by psi(lambda_n / N).  The psi == 1
// and psi == 0 branches are decided with the same integer threshold as the
// sharp projector, so pi_N Pi_N = pi_N and pi_N Pi_{N/2} = Pi_{N/2} hold
// exactly, without floating ties.
SpectralField smooth_project(double N, const SpectralField& f, const CutoffPsi& psi = CutoffPsi{});

// ( sum_n <lambda_n>^{2s} |c_n|^2 )^{1/2}
double sobolev_norm(double s, const SpectralField& f);

// pair norm of (u, v) at regularity s: (|u|_{H^s}^2 + |v|_{H^{s-alpha}}^2)^{1/2}
double pair_sobolev_norm(double s, double alpha, const PhasePoint& p);

// ( (2 pi / M)^d sum_j |values_j|^r )^{1/r}; r = infinity gives max |values|
double grid_lp_norm(double r, const GridField& g);

// |D^{eps0} f|_{L^{r0}} through the grid: grid_lp_norm(r0, to_grid(apply_D(eps0, f), M))
double wepsr_norm(double eps0, double r0, const SpectralField& f, int M);

}  // namespace fracwave
