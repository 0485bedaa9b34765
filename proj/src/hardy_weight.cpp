#include "hardy/hardy_weight.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace hardy {

namespace {

double positive_or_raise(const GraphFunction& f, Vertex x, const char* name) {
  double value = f(x);
  if (!(value > 0.0)) {
    std::ostringstream os;
    os << name << "(" << x << ") = " << value << " is not strictly positive";
    raise(ErrorCode::NonpositiveSupersolution, os.str());
  }
  return value;
}

}  // namespace

WeightEval HardyWeight::eval_detail(Vertex x) const {
  const auto& graph = op_.graph();
  double ux = positive_or_raise(u_, x, "u");
  double vx = positive_or_raise(v_, x, "v");

  double hu = graph.potential(x) * ux;
  double hv = graph.potential(x) * vx;
  double scale_u = 1.0 + std::abs(hu);
  double scale_v = 1.0 + std::abs(hv);
  double edge_sum = 0.0;
  double sqrt_uv_x = std::sqrt(ux * vx);
  double op_num = graph.potential(x) * sqrt_uv_x;

  for (const auto& n : graph.neighbors(x)) {
    double uy = positive_or_raise(u_, n.to, "u");
    double vy = positive_or_raise(v_, n.to, "v");
    hu += n.weight * (ux - uy);
    hv += n.weight * (vx - vy);
    scale_u += n.weight * (ux + uy);
    scale_v += n.weight * (vx + vy);
    op_num += n.weight * (sqrt_uv_x - std::sqrt(uy * vy));
    // Edge bracket (u(y)/u(x))^(1/2) - (v(y)/v(x))^(1/2), rationalized to
    // avoid the cancellation of two nearby square roots.
    double cross = uy * vx - ux * vy;
    double denom = ux * vx * (std::sqrt(uy / ux) + std::sqrt(vy / vx));
    double bracket = cross / denom;
    edge_sum += n.weight * bracket * bracket;
  }

  WeightEval eval;
  eval.Hu_abs = std::abs(hu);
  eval.Hv_abs = std::abs(hv);
  eval.certified_harmonic =
      eval.Hu_abs <= harmonic_tol_ * scale_u && eval.Hv_abs <= harmonic_tol_ * scale_v;
  eval.w_edge = 0.5 * edge_sum;
  eval.w_operator = op_num / sqrt_uv_x;
  return eval;
}

double HardyWeight::operator()(Vertex x) const {
  WeightEval eval = eval_detail(x);
  return eval.certified_harmonic ? eval.w_edge : eval.w_operator;
}

GraphFunction HardyWeight::ground_state() const {
  auto u = u_;
  auto v = v_;
  return GraphFunction::from_fn([u, v](Vertex x) { return std::sqrt(u(x) * v(x)); });
}

GraphFunction HardyWeight::as_function() const {
  HardyWeight copy = *this;
  return GraphFunction::from_fn([copy](Vertex x) { return copy(x); });
}

namespace {

// Sampled normalization check for the unbounded variant: the construction
// wants sup u0 = inf, with u0 = u/v; when the sampled outer-shell maxima of
// u0 stagnate while those of 1/u0 keep growing, the roles of u and v are
// swapped. Finite graphs are left alone.
bool should_invert_quotient(const SchrodingerOperator& H, const GraphFunction& u,
                            const GraphFunction& v, int radius) {
  if (H.graph().kind() == GraphKind::FiniteExplicit) return false;
  auto inner = ball(H.graph(), H.graph().root(), radius / 2);
  auto outer = ball(H.graph(), H.graph().root(), radius);
  double max_inner = 0.0, max_outer = 0.0, maxinv_inner = 0.0, maxinv_outer = 0.0;
  for (Vertex x : inner) {
    double q = u(x) / v(x);
    max_inner = std::max(max_inner, q);
    maxinv_inner = std::max(maxinv_inner, 1.0 / q);
  }
  for (Vertex x : outer) {
    double q = u(x) / v(x);
    max_outer = std::max(max_outer, q);
    maxinv_outer = std::max(maxinv_outer, 1.0 / q);
  }
  bool u0_grows = max_outer > 1.5 * max_inner;
  bool inv_grows = maxinv_outer > 1.5 * maxinv_inner;
  return !u0_grows && inv_grows;
}

}  // namespace

HardyWeight HardyWeight::finish(SchrodingerOperator H, GraphFunction u, GraphFunction v,
                                WeightVariant variant, const ConstructOptions& options) {
  const auto& graph = H.graph();
  auto region = ball(graph, graph.root(), options.verification_radius);
  std::set<Vertex> in_region(region.begin(), region.end());

  bool inverted = false;
  if (variant == WeightVariant::UnboundedQuotient &&
      should_invert_quotient(H, u, v, options.verification_radius)) {
    std::swap(u, v);
    inverted = true;
  }

  for (auto* f : {&u, &v}) {
    auto report = H.superharmonic_report(*f, region, options.harmonic_tol);
    if (!report.positive)
      raise(ErrorCode::NonpositiveSupersolution,
            "supersolution is not strictly positive on the verification ball");
    if (!report.is_superharmonic && !options.override_not_superharmonic) {
      std::ostringstream os;
      os << "H-superharmonicity fails at " << report.violations.size()
         << " vertices of the verification ball (first: " << report.violations.front()
         << "); pass override_not_superharmonic to proceed";
      raise(ErrorCode::NotSuperharmonic, os.str());
    }
  }

  HardyWeight w(std::move(H), std::move(u), std::move(v), variant);
  w.harmonic_tol_ = options.harmonic_tol;
  w.quotient_inverted_ = inverted;

  // Record non-harmonic vertices; the "finite exceptional set" assumption is
  // undecidable from a finite sample, so flag any sitting on the outermost
  // shell of the ball.
  std::set<Vertex> exceptional;
  for (auto* f : {&w.u_, &w.v_}) {
    auto report = w.op_.superharmonic_report(*f, region, options.harmonic_tol);
    exceptional.insert(report.harmonic_except.begin(), report.harmonic_except.end());
  }
  w.exceptional_.assign(exceptional.begin(), exceptional.end());
  for (Vertex x : w.exceptional_) {
    for (const auto& n : w.op_.graph().neighbors(x)) {
      if (!in_region.count(n.to)) {
        w.exceptional_on_boundary_ = true;
        break;
      }
    }
  }
  return w;
}

HardyWeight construct_weight(const SchrodingerOperator& H, GraphFunction u, GraphFunction v,
                             const ConstructOptions& options) {
  return HardyWeight::finish(H, std::move(u), std::move(v), WeightVariant::UnboundedQuotient,
                             options);
}

HardyWeight construct_weight_bounded(const SchrodingerOperator& H, GraphFunction u,
                                     GraphFunction v, const ConstructOptions& options) {
  auto region = ball(H.graph(), H.graph().root(), options.verification_radius);
  for (Vertex x : region) {
    double diff = v(x) - u(x);
    if (!(diff > 0.0)) {
      std::ostringstream os;
      os << "(v-u)(" << x << ") = " << diff << " is not strictly positive";
      raise(ErrorCode::OrderViolation, os.str());
    }
  }
  GraphFunction v_minus_u = GraphFunction::from_fn(
      [u, v](Vertex x) { return v(x) - u(x); });
  return HardyWeight::finish(H, std::move(u), std::move(v_minus_u),
                             WeightVariant::BoundedQuotient, options);
}

double halfline_weight_closed_form(double n) {
  if (!(n >= 1.0)) raise(ErrorCode::DomainError, "half-line weight needs n >= 1");
  double x = 1.0 / n;
  double s = std::sqrt((1.0 - x) * (1.0 + x));
  return 2.0 * x * x / ((1.0 + s) * (2.0 + std::sqrt(1.0 + x) + std::sqrt(1.0 - x)));
}

double weight_series_halfline(double n) {
  if (!(n >= 2.0)) raise(ErrorCode::DomainError, "series form needs n >= 2");
  double inv_n2 = 1.0 / (n * n);
  double term = 0.25 * inv_n2;  // k = 1: binom(4,2)/(3*2^3) = 1/4
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    double a = 4.0 * k;
    // term ratio: binom growth * (4k-1)/(4k+3) * 2^-4 * n^-2
    double ratio = (a + 1.0) * (a - 1.0) / (4.0 * (2.0 * k + 1.0) * (2.0 * k + 2.0)) * inv_n2;
    term *= ratio;
    sum += term;
    if (term < 1e-16 * sum) return sum;
  }
  raise(ErrorCode::SolverDivergence, "half-line weight series failed to converge");
}

double halfline_weight(double n) {
  if (1.0 / n < 1e-4) return weight_series_halfline(n);
  return halfline_weight_closed_form(n);
}

}  // namespace hardy
