// Copyright 2026 The bellri Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellri/bellri.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "bellri/bell_criteria.hpp"
#include "bellri/correlation_tensor.hpp"
#include "bellri/errors.hpp"
#include "bellri/lhv_model.hpp"
#include "bellri/quantum_state.hpp"
#include "bellri/serialize.hpp"

struct bellri_state {
  bellri::DensityMatrix rho;
};

struct bellri_tensor {
  bellri::CorrelationTensor t;
};

struct bellri_lhv_model {
  bellri::LhvTwoSettingModel model;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_invariant;

struct NullArgument {};

template <typename T>
const T& deref(const T* p) {
  if (p == nullptr) throw NullArgument{};
  return *p;
}

template <typename T>
T& out_ref(T* p) {
  if (p == nullptr) throw NullArgument{};
  return *p;
}

bellri_status fail(bellri_status status, std::string message,
                   std::string invariant = {}) {
  g_last_error = std::move(message);
  g_last_invariant = std::move(invariant);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
bellri_status guarded(F&& body) {
  try {
    return body();
  } catch (const NullArgument&) {
    return fail(BELLRI_ERR_NULL_ARGUMENT, "required pointer argument is NULL");
  } catch (const bellri::InvariantError& e) {
    return fail(BELLRI_ERR_INVARIANT, e.what(), e.invariant());
  } catch (const bellri::DomainError& e) {
    return fail(BELLRI_ERR_DOMAIN, e.what());
  } catch (const bellri::ParseError& e) {
    return fail(BELLRI_ERR_PARSE, e.what());
  } catch (const bellri::Json::exception& e) {
    return fail(BELLRI_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BELLRI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BELLRI_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BELLRI_ERR_INTERNAL, "unknown exception");
  }
}

bellri_status write_string(const std::string& s, char* buf, size_t cap,
                           size_t* len) {
  out_ref(len) = s.size();
  if (buf == nullptr || cap <= s.size())
    return fail(BELLRI_ERR_BUFFER_TOO_SMALL,
                "output buffer needs " + std::to_string(s.size() + 1) +
                    " bytes");
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
  return BELLRI_OK;
}

bellri_status write_payload(const bellri::Json& json, const std::string& csv,
                            bellri_format format, char* buf, size_t cap,
                            size_t* len) {
  switch (format) {
    case BELLRI_FORMAT_JSON:
      return write_string(json.dump() + "\n", buf, cap, len);
    case BELLRI_FORMAT_CSV:
      return write_string(csv, buf, cap, len);
  }
  throw bellri::DomainError("unknown output format");
}

Eigen::Matrix3d matrix3(const double* m) {
  deref(m);
  Eigen::Matrix3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m[3 * i + j];
  return r;
}

bellri::Matrix2c matrix2c(const double* re_im) {
  deref(re_im);
  bellri::Matrix2c u;
  for (int k = 0; k < 4; ++k) u(k / 2, k % 2) = {re_im[2 * k], re_im[2 * k + 1]};
  return u;
}

bellri::UnitVector3 unit(const double* n) {
  deref(n);
  return bellri::UnitVector3(n[0], n[1], n[2]);
}

bellri_status emit_state(bellri::DensityMatrix rho, bellri_state** out) {
  out_ref(out) = new bellri_state{std::move(rho)};
  return BELLRI_OK;
}

bellri_status emit_tensor(const bellri::CorrelationTensor& t,
                          bellri_tensor** out) {
  out_ref(out) = new bellri_tensor{t};
  return BELLRI_OK;
}

bellri::CriterionReport from_c(const bellri_criterion_report& r) {
  bellri::CriterionReport out;
  out.lhs = r.lhs;
  out.rhs = r.rhs;
  out.margin = r.margin;
  out.violated = r.violated != 0;
  out.comparison_thresholds = {r.threshold_this_work, r.threshold_prior};
  return out;
}

bellri::ChshReport from_c(const bellri_chsh_report& r) {
  bellri::ChshReport out;
  out.plane = bellri::ChshPlane(r.axis_a, r.axis_b);
  for (int k = 0; k < 4; ++k) out.values[static_cast<std::size_t>(k)] = r.values[k];
  out.bound = r.bound;
  out.max_value = r.max_value;
  out.satisfied = r.satisfied != 0;
  return out;
}

bellri::BoundReport from_c(const bellri_bound_report& r) {
  bellri::BoundReport out;
  out.lhs = r.lhs;
  out.rhs = r.rhs;
  out.margin = r.margin;
  out.satisfied = r.satisfied != 0;
  return out;
}

bellri::McReport from_c(const bellri_mc_report& r) {
  bellri::McEstimate est;
  est.mean = r.mean;
  est.std_error = r.std_error;
  est.n_samples = r.n;
  return {r.v, r.i, r.j, est, r.target, r.pass != 0};
}

bellri_verdict to_c(const bellri::ConsistencyVerdict& v) {
  return {v.v.value(), v.criterion_margin, v.consistent ? 1 : 0,
          v.reason == bellri::VerdictReason::kRiCriterionViolated
              ? BELLRI_REASON_RI_CRITERION_VIOLATED
              : BELLRI_REASON_CONSISTENT_AT_VISIBILITY};
}

}  // namespace

extern "C" {

const char* bellri_version(void) { return "0.1.0"; }

const char* bellri_status_string(bellri_status status) {
  switch (status) {
    case BELLRI_OK: return "ok";
    case BELLRI_ERR_DOMAIN: return "domain error";
    case BELLRI_ERR_INVARIANT: return "invariant violation";
    case BELLRI_ERR_PARSE: return "parse error";
    case BELLRI_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case BELLRI_ERR_NULL_ARGUMENT: return "null argument";
    case BELLRI_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bellri_last_error(void) { return g_last_error.c_str(); }
const char* bellri_last_invariant(void) { return g_last_invariant.c_str(); }

// ---- states

bellri_status bellri_state_singlet(bellri_state** out) {
  return guarded([&] { return emit_state(bellri::make_singlet(), out); });
}

bellri_status bellri_state_white(bellri_state** out) {
  return guarded([&] { return emit_state(bellri::make_white_noise(), out); });
}

bellri_status bellri_state_werner(double v, bellri_state** out) {
  return guarded([&] {
    return emit_state(bellri::make_werner(bellri::Visibility(v)), out);
  });
}

bellri_status bellri_state_parse(const char* spec, bellri_state** out) {
  return guarded(
      [&] { return emit_state(bellri::parse_state_spec(&deref(spec)), out); });
}

bellri_status bellri_state_from_json(const char* json, bellri_state** out) {
  return guarded([&] {
    const bellri::Json j = bellri::Json::parse(&deref(json));
    return emit_state(bellri::density_matrix_from_json(j), out);
  });
}

bellri_status bellri_state_from_entries(const double re_im[32],
                                        bellri_state** out) {
  return guarded([&] {
    deref(re_im);
    bellri::ComplexMatrix m(4, 4);
    for (int k = 0; k < 16; ++k)
      m(k / 4, k % 4) = {re_im[2 * k], re_im[2 * k + 1]};
    return emit_state(bellri::DensityMatrix::from_matrix(m), out);
  });
}

bellri_status bellri_state_mix(double weight, const bellri_state* pure,
                               const bellri_state* noise, bellri_state** out) {
  return guarded([&] {
    return emit_state(
        bellri::mix_states(weight, deref(pure).rho, deref(noise).rho), out);
  });
}

bellri_status bellri_state_entries(const bellri_state* state,
                                   double re_im[32]) {
  return guarded([&] {
    const auto& rho = deref(state).rho;
    double* dst = &out_ref(re_im);
    for (int k = 0; k < 16; ++k) {
      dst[2 * k] = rho(k / 4, k % 4).real();
      dst[2 * k + 1] = rho(k / 4, k % 4).imag();
    }
    return BELLRI_OK;
  });
}

bellri_status bellri_state_to_json(const bellri_state* state, char* buf,
                                   size_t cap, size_t* len) {
  return guarded([&] {
    return write_string(bellri::to_json(deref(state).rho).dump() + "\n", buf,
                        cap, len);
  });
}

void bellri_state_free(bellri_state* state) { delete state; }

bellri_status bellri_random_unitary(uint64_t seed, double u_re_im[8]) {
  return guarded([&] {
    double* dst = &out_ref(u_re_im);
    const bellri::Matrix2c u = bellri::random_unitary_2x2(seed);
    for (int k = 0; k < 4; ++k) {
      dst[2 * k] = u(k / 2, k % 2).real();
      dst[2 * k + 1] = u(k / 2, k % 2).imag();
    }
    return BELLRI_OK;
  });
}

bellri_status bellri_check_uu_invariance(const bellri_state* state,
                                         const double u_re_im[8], double tol,
                                         int* invariant) {
  return guarded([&] {
    out_ref(invariant) =
        bellri::check_uu_invariance(deref(state).rho, matrix2c(u_re_im), tol)
            ? 1
            : 0;
    return BELLRI_OK;
  });
}

// ---- tensors

bellri_status bellri_tensor_compute(const bellri_state* state,
                                    bellri_tensor** out) {
  return guarded(
      [&] { return emit_tensor(bellri::compute_tensor(deref(state).rho), out); });
}

bellri_status bellri_tensor_from_values(const double t[9], bellri_tensor** out) {
  return guarded([&] {
    const Eigen::Matrix3d m = matrix3(t);
    if (!m.allFinite()) throw bellri::DomainError("tensor entries must be finite");
    return emit_tensor(bellri::CorrelationTensor(m), out);
  });
}

bellri_status bellri_tensor_values(const bellri_tensor* tensor, double t[9]) {
  return guarded([&] {
    const auto& m = deref(tensor).t;
    double* dst = &out_ref(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dst[3 * i + j] = m(i, j);
    return BELLRI_OK;
  });
}

bellri_status bellri_tensor_rotate(const bellri_tensor* tensor,
                                   const double r1[9], const double r2[9],
                                   bellri_tensor** out) {
  return guarded([&] {
    const bellri::LocalRotationPair rot(matrix3(r1), matrix3(r2));
    return emit_tensor(bellri::rotate_tensor(deref(tensor).t, rot), out);
  });
}

bellri_status bellri_tensor_frobenius_sum(const bellri_tensor* tensor,
                                          double* out) {
  return guarded([&] {
    out_ref(out) = bellri::frobenius_sum(deref(tensor).t);
    return BELLRI_OK;
  });
}

bellri_status bellri_tensor_max_svd(const bellri_tensor* tensor, double* out) {
  return guarded([&] {
    out_ref(out) = bellri::tensor_max_svd(deref(tensor).t);
    return BELLRI_OK;
  });
}

bellri_status bellri_tensor_max_grid(const bellri_tensor* tensor,
                                     size_t n_theta, size_t n_phi,
                                     double* out) {
  return guarded([&] {
    out_ref(out) = bellri::tensor_max_grid(deref(tensor).t, n_theta, n_phi);
    return BELLRI_OK;
  });
}

bellri_status bellri_correlation_value(const bellri_state* state,
                                       const double n1[3], const double n2[3],
                                       double* out) {
  return guarded([&] {
    out_ref(out) = bellri::correlation_value(deref(state).rho, unit(n1), unit(n2));
    return BELLRI_OK;
  });
}

bellri_status bellri_evaluate_via_tensor(const bellri_tensor* tensor,
                                         const double n1[3],
                                         const double n2[3], double* out) {
  return guarded([&] {
    out_ref(out) = bellri::evaluate_via_tensor(deref(tensor).t, unit(n1), unit(n2));
    return BELLRI_OK;
  });
}

bellri_status bellri_tensor_serialize(const bellri_tensor* tensor,
                                      bellri_format format, char* buf,
                                      size_t cap, size_t* len) {
  return guarded([&] {
    const auto& t = deref(tensor).t;
    return write_payload(bellri::to_json(t), bellri::to_csv(t), format, buf,
                         cap, len);
  });
}

void bellri_tensor_free(bellri_tensor* tensor) { delete tensor; }

// ---- criteria

bellri_status bellri_criterion_evaluate(const bellri_tensor* tensor,
                                        bellri_criterion_report* out) {
  return guarded([&] {
    const auto r = bellri::evaluate_ri_criterion(deref(tensor).t);
    out_ref(out) = {r.lhs,
                    r.rhs,
                    r.margin,
                    r.violated ? 1 : 0,
                    r.comparison_thresholds.first,
                    r.comparison_thresholds.second};
    return BELLRI_OK;
  });
}

bellri_status bellri_criterion_serialize(const bellri_criterion_report* report,
                                         bellri_format format, char* buf,
                                         size_t cap, size_t* len) {
  return guarded([&] {
    const auto r = from_c(deref(report));
    return write_payload(bellri::to_json(r), bellri::to_csv(r), format, buf,
                         cap, len);
  });
}

bellri_status bellri_chsh_evaluate(const bellri_tensor* tensor, int axis_a,
                                   int axis_b, bellri_chsh_report* out) {
  return guarded([&] {
    const auto r = bellri::chsh_complete_set(deref(tensor).t,
                                             bellri::ChshPlane(axis_a, axis_b));
    bellri_chsh_report& dst = out_ref(out);
    dst.axis_a = r.plane.a;
    dst.axis_b = r.plane.b;
    for (int k = 0; k < 4; ++k) dst.values[k] = r.values[static_cast<std::size_t>(k)];
    dst.bound = r.bound;
    dst.max_value = r.max_value;
    dst.satisfied = r.satisfied ? 1 : 0;
    return BELLRI_OK;
  });
}

bellri_status bellri_chsh_serialize(const bellri_chsh_report* report,
                                    bellri_format format, char* buf, size_t cap,
                                    size_t* len) {
  return guarded([&] {
    const auto r = from_c(deref(report));
    return write_payload(bellri::to_json(r), bellri::to_csv(r), format, buf,
                         cap, len);
  });
}

bellri_status bellri_inner_product_ee(const bellri_tensor* tensor,
                                      size_t n_theta, size_t n_phi,
                                      double* out) {
  return guarded([&] {
    out_ref(out) = bellri::inner_product_ee(deref(tensor).t,
                                            bellri::QuadratureSpec(n_theta, n_phi));
    return BELLRI_OK;
  });
}

bellri_status bellri_bound_check(const bellri_tensor* tensor, size_t n_theta,
                                 size_t n_phi, bellri_bound_report* out) {
  return guarded([&] {
    const auto r = bellri::ri_bound_check(deref(tensor).t,
                                          bellri::QuadratureSpec(n_theta, n_phi));
    out_ref(out) = {r.lhs, r.rhs, r.margin, r.satisfied ? 1 : 0};
    return BELLRI_OK;
  });
}

bellri_status bellri_bound_serialize(const bellri_bound_report* report,
                                     bellri_format format, char* buf,
                                     size_t cap, size_t* len) {
  return guarded([&] {
    const auto r = from_c(deref(report));
    return write_payload(bellri::to_json(r), bellri::to_csv(r), format, buf,
                         cap, len);
  });
}

bellri_status bellri_critical_visibility(const bellri_state* pure,
                                         const bellri_state* noise, double tol,
                                         bellri_threshold* out) {
  return guarded([&] {
    const auto r =
        bellri::critical_visibility(deref(pure).rho, deref(noise).rho, tol);
    out_ref(out) = {r.found() ? 1 : 0, r.found() ? r.visibility : 0.0, r.steps,
                    tol};
    return BELLRI_OK;
  });
}

bellri_status bellri_threshold_serialize(const bellri_threshold* result,
                                         bellri_format format, char* buf,
                                         size_t cap, size_t* len) {
  return guarded([&] {
    const bellri_threshold& c = deref(result);
    bellri::ThresholdResult r;
    r.outcome = c.found ? bellri::ThresholdResult::Outcome::kThreshold
                        : bellri::ThresholdResult::Outcome::kNoViolation;
    r.visibility = c.visibility;
    r.steps = c.steps;
    return write_payload(bellri::to_json(r, c.tol), bellri::to_csv(r, c.tol),
                         format, buf, cap, len);
  });
}

bellri_status bellri_scan_serialize(const bellri_state* pure,
                                    const bellri_state* noise, double v_min,
                                    double v_max, size_t steps,
                                    bellri_format format, char* buf, size_t cap,
                                    size_t* len) {
  return guarded([&] {
    const auto rows = bellri::visibility_scan(deref(pure).rho, deref(noise).rho,
                                              v_min, v_max, steps);
    return write_payload(bellri::scan_to_json(rows), bellri::scan_to_csv(rows),
                         format, buf, cap, len);
  });
}

// ---- LHV models

bellri_status bellri_lhv_model_create(double v, const double r1[9],
                                      const double r2[9],
                                      bellri_lhv_model** out) {
  return guarded([&] {
    const Eigen::Matrix3d m1 = r1 ? matrix3(r1) : Eigen::Matrix3d::Identity();
    const Eigen::Matrix3d m2 = r2 ? matrix3(r2) : Eigen::Matrix3d::Identity();
    auto model = bellri::build_model(bellri::Visibility(v),
                                     bellri::LocalRotationPair(m1, m2));
    out_ref(out) = new bellri_lhv_model{std::move(model)};
    return BELLRI_OK;
  });
}

bellri_status bellri_lhv_flip_probability(const bellri_lhv_model* model,
                                          double* out) {
  return guarded([&] {
    out_ref(out) = deref(model).model.flip_probability();
    return BELLRI_OK;
  });
}

bellri_status bellri_lhv_exact_correlation(const bellri_lhv_model* model, int i,
                                           int j, double* out) {
  return guarded([&] {
    out_ref(out) = deref(model).model.exact_correlation(i, j);
    return BELLRI_OK;
  });
}

bellri_status bellri_lhv_sample(const bellri_lhv_model* model, uint64_t seed,
                                int a[3], int b[3]) {
  return guarded([&] {
    const auto s = bellri::sample(deref(model).model, seed);
    int* da = &out_ref(a);
    int* db = &out_ref(b);
    for (std::size_t k = 0; k < 3; ++k) {
      da[k] = s.a[k];
      db[k] = s.b[k];
    }
    return BELLRI_OK;
  });
}

bellri_status bellri_lhv_estimate(const bellri_lhv_model* model, int i, int j,
                                  uint64_t n, uint64_t seed,
                                  bellri_mc_report* out) {
  return guarded([&] {
    const auto& m = deref(model).model;
    const auto est = bellri::estimate_correlation(m, i, j, n, seed);
    const auto r = bellri::make_mc_report(m, i, j, est);
    out_ref(out) = {r.v,    r.i,    r.j,    est.n_samples, est.mean,
                    est.std_error, r.target, r.pass ? 1 : 0};
    return BELLRI_OK;
  });
}

bellri_status bellri_mc_serialize(const bellri_mc_report* report,
                                  bellri_format format, char* buf, size_t cap,
                                  size_t* len) {
  return guarded([&] {
    const auto r = from_c(deref(report));
    return write_payload(bellri::to_json(r), bellri::to_csv(r), format, buf,
                         cap, len);
  });
}

void bellri_lhv_model_free(bellri_lhv_model* model) { delete model; }

bellri_status bellri_piecewise_correlation(double v, const double n1[3],
                                           const double n2[3], int* defined,
                                           double* value) {
  return guarded([&] {
    const auto r =
        bellri::piecewise_correlation(bellri::Visibility(v), unit(n1), unit(n2));
    out_ref(defined) = r.has_value() ? 1 : 0;
    out_ref(value) = r.value_or(0.0);
    return BELLRI_OK;
  });
}

bellri_status bellri_consistency_verdict(double v, bellri_verdict* out) {
  return guarded([&] {
    out_ref(out) = to_c(bellri::consistency_verdict(bellri::Visibility(v)));
    return BELLRI_OK;
  });
}

bellri_status bellri_sweep(double v_min, double v_max, size_t steps,
                           bellri_verdict* rows, size_t cap, size_t* count) {
  return guarded([&] {
    const auto verdicts = bellri::consistency_sweep(v_min, v_max, steps);
    out_ref(count) = verdicts.size();
    if (cap > 0) deref(rows);
    for (std::size_t k = 0; k < verdicts.size() && k < cap; ++k)
      rows[k] = to_c(verdicts[k]);
    return BELLRI_OK;
  });
}

bellri_status bellri_sweep_serialize(double v_min, double v_max, size_t steps,
                                     bellri_format format, char* buf,
                                     size_t cap, size_t* len) {
  return guarded([&] {
    const auto verdicts = bellri::consistency_sweep(v_min, v_max, steps);
    return write_payload(bellri::sweep_to_json(verdicts),
                         bellri::sweep_to_csv(verdicts), format, buf, cap, len);
  });
}

}  // extern "C"
