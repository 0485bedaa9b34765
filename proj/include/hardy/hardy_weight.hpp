#pragma once

#include <optional>
#include <vector>

#include "hardy/schrodinger.hpp"

namespace hardy {

enum class WeightVariant { UnboundedQuotient, BoundedQuotient };

struct WeightEval {
  double w_operator;         // H[(uv)^(1/2)] / (uv)^(1/2)
  double w_edge;             // (1/2) sum b [ (u(y)/u(x))^(1/2) - (v(y)/v(x))^(1/2) ]^2
  bool certified_harmonic;   // |Hu|, |Hv| <= tol * scale at x
  double Hu_abs, Hv_abs;
};

struct ConstructOptions {
  int verification_radius = 64;          // ball on which u, v are vetted
  double harmonic_tol = 1e-10;           // relative tolerance for Hu = 0
  bool override_not_superharmonic = false;
};

/// The supersolution-construction weight. Each evaluation reports both the
/// operator-quotient and the edge-ratio value; operator() returns the edge
/// formula at certified-harmonic vertices and the operator quotient elsewhere
/// (where u or v is merely superharmonic, the quotient is the definition).
class HardyWeight {
 public:
  double operator()(Vertex x) const;
  WeightEval eval_detail(Vertex x) const;

  WeightVariant variant() const { return variant_; }
  /// The pair actually fed to the edge formula: (u, v) for the unbounded
  /// variant, (u, v-u) for the bounded one.
  const GraphFunction& u() const { return u_; }
  const GraphFunction& v() const { return v_; }
  /// (uv)^(1/2), the candidate ground state of h - w.
  GraphFunction ground_state() const;
  GraphFunction as_function() const;

  /// Vertices inside the verification ball where u or v is not H-harmonic.
  const std::vector<Vertex>& exceptional_set() const { return exceptional_; }
  bool exceptional_touches_boundary() const { return exceptional_on_boundary_; }
  bool quotient_inverted() const { return quotient_inverted_; }

  const SchrodingerOperator& op() const { return op_; }

 private:
  friend HardyWeight construct_weight(const SchrodingerOperator&, GraphFunction, GraphFunction,
                                      const ConstructOptions&);
  friend HardyWeight construct_weight_bounded(const SchrodingerOperator&, GraphFunction,
                                              GraphFunction, const ConstructOptions&);
  HardyWeight(SchrodingerOperator op, GraphFunction u, GraphFunction v, WeightVariant variant)
      : op_(std::move(op)), u_(std::move(u)), v_(std::move(v)), variant_(variant) {}

  static HardyWeight finish(SchrodingerOperator op, GraphFunction u, GraphFunction v,
                            WeightVariant variant, const ConstructOptions& options);

  SchrodingerOperator op_;
  GraphFunction u_, v_;
  WeightVariant variant_;
  double harmonic_tol_ = 1e-10;
  std::vector<Vertex> exceptional_;
  bool exceptional_on_boundary_ = false;
  bool quotient_inverted_ = false;
};

/// w = H[(uv)^(1/2)] / (uv)^(1/2) for positive H-superharmonic u, v that are
/// H-harmonic outside a finite set. Verifies positivity and superharmonicity
/// on a ball; NotSuperharmonic is a warning-level error overridable by flag.
/// When the sampled quotient u/v looks bounded while v/u does not, the roles
/// are swapped (quotient_inverted in the result).
HardyWeight construct_weight(const SchrodingerOperator& H, GraphFunction u, GraphFunction v,
                             const ConstructOptions& options = {});

/// Bounded-quotient variant: u and v-u positive superharmonic, u0 = u/v proper
/// into (0,1) with sup u0 = 1. Builds the weight from the pair (u, v-u).
HardyWeight construct_weight_bounded(const SchrodingerOperator& H, GraphFunction u,
                                     GraphFunction v, const ConstructOptions& options = {});

/// Half-line weight 2 - sqrt(1+1/n) - sqrt(1-1/n) in the rationalized,
/// cancellation-free form 2x^2 / ((1+sqrt(1-x^2))(2+sqrt(1+x)+sqrt(1-x))),
/// x = 1/n. Valid for n >= 1; equals 2-sqrt(2) at n = 1.
double halfline_weight_closed_form(double n);

/// Series form sum_k binom(4k,2k) / ((4k-1) 2^(4k-1)) n^(-2k), summed until
/// the next term drops below 1e-16 of the partial sum. Requires n >= 2.
double weight_series_halfline(double n);

/// Cancellation-safe evaluation path: the rationalized closed form, switching
/// to the series once 1/n < 1e-4.
double halfline_weight(double n);

}  // namespace hardy
