#pragma once

#include "symgf/core.hpp"

namespace symgf {

/// M -> J M + M^T J on all of M(2n,R); kernel is sp(2n,R).
SkewMatrix xmap_extended(const Mat& m);

/// Block formula (C^T-C, -A^T-D; A+D^T, B-B^T) on Sp(2n,R).
SkewMatrix xmap(const SymplecticMatrix& h);

/// H -> H - H^T; same image on Sp(2n,R) as xmap.
SkewMatrix ymap(const SymplecticMatrix& h);

/// Unique coset representative (0 S2; S3 Dfree) of M mod sp(2n,R).
struct QuotientRep {
  int n = 0;
  Mat S2;     // skew
  Mat S3;     // skew
  Mat Dfree;  // unconstrained
  Mat assemble() const;
};

QuotientRep canonical_rep(const Mat& m);

/// Projection of Sp(2n,R) onto the representative slice along sp(2n,R).
QuotientRep pi_sp(const SymplecticMatrix& h);

/// Orthonormal basis (2n x m, possibly m = 0) of ker X(H) = ker(H^2 + I).
Mat xmap_kernel(const SymplecticMatrix& h);

/// H_k acting as (x', x'', xi', xi'') -> (x', -xi'', xi', x''), with
/// rank(X(H_k)) = 2k.
SymplecticMatrix witness_Hk(int n, int k);

/// |H^T X(R) H - X(H^-1 R H)|_F.
double conjugation_covariance_check(const SymplecticMatrix& h, const SymplecticMatrix& r);

/// Residual of the rotation-family mapping R(t) -> (0, -2cos(t) I; 2cos(t) I, 0).
double rotation_example_check(double t, int n);

}  // namespace symgf
