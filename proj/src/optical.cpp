#include "dequant/optical.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "dequant/error.hpp"

namespace dequant::optical {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOutcomeTolerance = 1e-9;
// Stop searching once a start gets this close; well under the acceptance bound.
constexpr double kSearchTarget = 1e-12;

double reduce_angle(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

struct GslMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct GslVectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

double squared_residual(const gsl_vector* x, void* params) {
  const auto& target = *static_cast<const Matrix2*>(params);
  const PlateAngles a{gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2), 0.0};
  const double r = phase_aligned_residual(stack_matrix(a), target);
  return r * r;
}

// One Nelder-Mead descent from `start`; returns the angles it settles on.
std::array<double, 3> descend(const Matrix2& target, std::array<double, 3> start, double step) {
  gsl_multimin_function fn{&squared_residual, 3, const_cast<Matrix2*>(&target)};
  std::unique_ptr<gsl_vector, GslVectorDeleter> x(gsl_vector_alloc(3));
  std::unique_ptr<gsl_vector, GslVectorDeleter> steps(gsl_vector_alloc(3));
  std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3));
  for (std::size_t i = 0; i < 3; ++i) {
    gsl_vector_set(x.get(), i, start[i]);
    gsl_vector_set(steps.get(), i, step);
  }
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), steps.get());
  for (int iter = 0; iter < 5000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), 1e-15) == GSL_SUCCESS) break;
    if (m->fval < kSearchTarget * kSearchTarget * 1e-4) break;
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  return {gsl_vector_get(best, 0), gsl_vector_get(best, 1), gsl_vector_get(best, 2)};
}

}  // namespace

JonesVector::JonesVector(Complex ex, Complex ey) : c_{ex, ey} {
  const double n2 = std::norm(ex) + std::norm(ey);
  if (std::abs(n2 - 1.0) > kNormTolerance) throw InvalidArgument("Jones vector is not unit norm");
}

WavePlate::WavePlate(PlateKind k, double a) : kind(k), angle(reduce_angle(a)) {}

Matrix2 rotation_matrix(double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {{{c, -s}, {s, c}}};
}

Matrix2 waveplate_matrix(const WavePlate& p) {
  const Complex r = p.kind == PlateKind::Quarter ? Complex(0.0, 1.0) : Complex(-1.0, 0.0);
  const Matrix2 retarder = {{{1.0, 0.0}, {0.0, r}}};
  return multiply(multiply(rotation_matrix(p.angle), retarder), rotation_matrix(-p.angle));
}

JonesVector rotate_polarisation(const JonesVector& v, double phi) {
  const Qubit out = dequant::apply(rotation_matrix(phi), v.components());
  return {out[0], out[1]};
}

JonesVector pass_through(const JonesVector& v, const WavePlate& p) {
  const Qubit out = dequant::apply(waveplate_matrix(p), v.components());
  // Plates are unitary to rounding; renormalize so drift never trips the invariant.
  const double norm = std::sqrt(std::norm(out[0]) + std::norm(out[1]));
  return {out[0] / norm, out[1] / norm};
}

double y_probability(const JonesVector& v) { return std::norm(v.ey()); }

Matrix2 stack_matrix(const PlateAngles& a) {
  return multiply(multiply(waveplate_matrix({PlateKind::Quarter, a.quarter_first}),
                           waveplate_matrix({PlateKind::Half, a.half})),
                  waveplate_matrix({PlateKind::Quarter, a.quarter_second}));
}

double phase_aligned_residual(const Matrix2& w, const Matrix2& u) {
  // lambda = tr(u^dagger w) / |tr(u^dagger w)| maximizes Re(conj(lambda) tr(u^dagger w)).
  Complex tr = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) tr += std::conj(u[r][c]) * w[r][c];
  }
  const double mag = std::abs(tr);
  const Complex lambda = mag > 0.0 ? tr / mag : Complex(1.0, 0.0);
  double acc = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) acc += std::norm(w[r][c] - lambda * u[r][c]);
  }
  return std::sqrt(acc);
}

PlateAngles decompose_su2(const Matrix2& u) {
  if (!(unitarity_error(u) < 1e-10)) throw InvalidArgument("decompose_su2: matrix is not unitary");
  if (!(std::abs(determinant(u) - 1.0) < 1e-10)) {
    throw InvalidArgument("decompose_su2: determinant is not 1");
  }

  struct Start {
    double residual;
    std::array<double, 3> angles;
  };
  std::vector<Start> grid;
  grid.reserve(512);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      for (int k = 0; k < 8; ++k) {
        const std::array<double, 3> a{i * kPi / 8, j * kPi / 8, k * kPi / 8};
        grid.push_back({phase_aligned_residual(stack_matrix({a[0], a[1], a[2], 0.0}), u), a});
      }
    }
  }
  std::sort(grid.begin(), grid.end(),
            [](const Start& x, const Start& y) { return x.residual < y.residual; });

  const auto& seed = grid.front();
  PlateAngles best{seed.angles[0], seed.angles[1], seed.angles[2], seed.residual};
  for (const auto& start : grid) {
    if (best.residual < kSearchTarget) break;
    auto angles = start.angles;
    double step = kPi / 16;
    // Restarting from the settled point with a fresh simplex shakes NM out of
    // premature collapse.
    for (int restart = 0; restart < 4; ++restart) {
      angles = descend(u, angles, step);
      step *= 0.05;
    }
    const PlateAngles candidate{reduce_angle(angles[0]), reduce_angle(angles[1]),
                                reduce_angle(angles[2]), 0.0};
    const double r = phase_aligned_residual(stack_matrix(candidate), u);
    if (r < best.residual) best = {candidate.quarter_first, candidate.half, candidate.quarter_second, r};
  }
  if (!(best.residual < kDecompositionTolerance)) {
    throw NumericalFailure("decompose_su2: best residual " + std::to_string(best.residual) +
                           " above tolerance");
  }
  return best;
}

OpticalBlackBox OpticalBlackBox::realizing(const Matrix2& u) {
  if (!(unitarity_error(u) < 1e-10)) throw InvalidArgument("black box matrix is not unitary");
  const Complex root = std::sqrt(determinant(u));
  Matrix2 special = u;
  for (auto& row : special) {
    for (auto& e : row) e /= root;
  }
  const PlateAngles a = decompose_su2(special);
  // Light meets the rightmost factor first.
  return OpticalBlackBox({WavePlate(PlateKind::Quarter, a.quarter_second),
                          WavePlate(PlateKind::Half, a.half),
                          WavePlate(PlateKind::Quarter, a.quarter_first)});
}

JonesVector OpticalBlackBox::query(const JonesVector& v) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  JonesVector out = v;
  for (const auto& p : plates_) out = pass_through(out, p);
  return out;
}

Matrix2 OpticalBlackBox::matrix() const {
  Matrix2 m = identity_matrix();
  for (const auto& p : plates_) m = multiply(waveplate_matrix(p), m);
  return m;
}

std::array<JonesVector, 2> TwoPhotonBlackBox::query(const std::array<JonesVector, 2>& photons) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  JonesVector a = photons[0];
  JonesVector b = photons[1];
  for (const auto& p : first_.plates()) a = pass_through(a, p);
  for (const auto& p : second_.plates()) b = pass_through(b, p);
  return {a, b};
}

OpticalBlackBox deutsch_black_box(const BooleanFunction& f) {
  if (f.arity() != 1) throw InvalidArgument("the one-photon black box needs arity 1");
  const Matrix2 phase = {{{f(0) ? -1.0 : 1.0, 0.0}, {0.0, f(1) ? -1.0 : 1.0}}};
  return OpticalBlackBox::realizing(phase);
}

TwoPhotonBlackBox dj2_black_box(const BooleanFunction& f) {
  if (f.arity() != 2) throw InvalidArgument("the two-photon black box needs arity 2");
  const auto outcome = extract_product_oracle(f);
  if (std::holds_alternative<Entangled>(outcome)) {
    throw PromiseViolation("oracle image is entangled; no two-photon black box exists");
  }
  const auto& oracle = std::get<ClassicalVectorOracle>(outcome);
  return TwoPhotonBlackBox(OpticalBlackBox::realizing(oracle.factors()[0]).plates(),
                           OpticalBlackBox::realizing(oracle.factors()[1]).plates());
}

SolveResult optical_deutsch(const BooleanFunction& f) {
  if (f.arity() != 1) throw InvalidArgument("the one-photon protocol needs arity 1");
  const OpticalBlackBox box = deutsch_black_box(f);

  JonesVector photon = JonesVector::y_pol();
  photon = rotate_polarisation(photon, kPi / 4);
  photon = box.query(photon);
  photon = rotate_polarisation(photon, kPi / 4);
  const double py = y_probability(photon);

  SolveResult result{Verdict::Constant, std::nullopt, box.queries(), 1.0 - py,
                     MeasurementDistribution(1, {1.0 - py, py}), {}, {}};
  result.trace = {"prepare y-pol", "rotate +45 deg", "pass black box", "rotate +45 deg",
                  "P(y-pol) = " + std::to_string(py)};
  if (py < kOutcomeTolerance) {
    result.verdict = Verdict::Constant;
  } else if (py > 1.0 - kOutcomeTolerance) {
    result.verdict = Verdict::Balanced;
  } else {
    throw NumericalFailure("optical outcome is not deterministic");
  }
  return result;
}

SolveResult optical_dj2(const BooleanFunction& f) {
  if (f.arity() != 2) throw InvalidArgument("the two-photon protocol needs arity 2");
  const TwoPhotonBlackBox box = dj2_black_box(f);

  std::array<JonesVector, 2> photons{JonesVector::x_pol(), JonesVector::x_pol()};
  for (auto& p : photons) p = rotate_polarisation(p, kPi / 4);
  photons = box.query(photons);
  for (auto& p : photons) p = rotate_polarisation(p, -kPi / 4);

  const double y0 = y_probability(photons[0]);
  const double y1 = y_probability(photons[1]);
  std::vector<double> probs{(1 - y0) * (1 - y1), (1 - y0) * y1, y0 * (1 - y1), y0 * y1};
  const double p00 = probs[0];
  SolveResult result{Verdict::Constant, std::nullopt, box.queries(), p00,
                     MeasurementDistribution(2, std::move(probs)), {}, {}};
  result.trace = {"prepare two x-pol photons", "rotate each +45 deg", "pass black box pair",
                  "rotate each -45 deg",
                  "P(y-pol) = " + std::to_string(y0) + ", " + std::to_string(y1)};
  if (p00 > 1.0 - kOutcomeTolerance) {
    result.verdict = Verdict::Constant;
  } else if (p00 < kOutcomeTolerance) {
    result.verdict = Verdict::Balanced;
  } else {
    throw NumericalFailure("optical outcome is not deterministic");
  }
  return result;
}

}  // namespace dequant::optical
