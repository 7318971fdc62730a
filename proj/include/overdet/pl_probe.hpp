#pragma once

// Finite-radius probe of Phragmen-Lindelof type implications on a plane
// curve. A growing trend is evidence against the principle at the sampled
// scale; a stable trend certifies nothing.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "overdet/bounds.hpp"
#include "overdet/parser.hpp"
#include "overdet/poly.hpp"

namespace overdet {

inline constexpr int kMaxProbeIndex = 64;
inline constexpr const char* kProbeCaveat =
    "finite-sample probe: a growing trend is evidence against the principle at this scale, "
    "a stable trend is not a certificate";

struct SamplePoint {
  double r = 0, theta = 0;
  Complex z1, z2;
  double residual = 0;
};

struct CurveSampler {
  Polynomial curve;
  std::vector<double> radii;
  std::vector<SamplePoint> points;
  std::size_t rejected = 0;
  std::size_t perturbed = 0;
  std::vector<std::string> notes;
};

CurveSampler sample_curve(const Polynomial& curve, double rmax, int radii, int angles,
                          std::uint64_t seed = 20240611);

// Roots z2 of curve(z1, .) at one z1, each with residual below 1e-8.
std::vector<Complex> curve_fiber(const Polynomial& curve, Complex z1);

// Default menu: log|g| for a small polynomial list, Im<c, z> for lattice c,
// max(Im z1, -Im z1) and the envelope psi^2_alpha.
std::vector<CandidateSpec> default_candidates(bool holomorphic_only = false);

struct ProbeContext {
  RegionSpec k1, k2;
  WeightFunction weight;
  int alpha = 1;
  double c_budget = 1;
};

double candidate_value(const CandidateSpec& c, const SamplePoint& p, const ProbeContext& ctx);

struct RadiusRow {
  double r = 0;
  std::size_t samples = 0;
  std::optional<int> beta;  // empty: no beta up to the cap
  double C = 0;
};

enum class Trend { stable, growing };
std::string trend_name(Trend t);

struct CandidateResult {
  std::string label;
  bool hypothesis1 = false;
  double hypothesis1_rate = 0;
  bool hypothesis2 = true;
  int alpha_u = 0;
  double c_u = 0;
  bool admissible = false;
  std::vector<RadiusRow> rows;
  Trend trend = Trend::stable;
  bool replay_ok = true;
};

struct PLVerdict {
  std::string mode;  // "probe" or "uniqueness"
  int alpha = 1;
  double c_budget = 1;
  std::vector<CandidateResult> candidates;
  bool vacuous = false;
  std::optional<int> beta;  // max final beta over admissible candidates
  Trend trend = Trend::stable;
  bool replay_ok = true;
  std::string caveat = kProbeCaveat;
  std::vector<std::string> notes;

  int exit_code() const { return vacuous ? 3 : trend == Trend::growing ? 2 : 0; }
};

PLVerdict probe(const CurveSampler& sampler, const ProbeContext& ctx,
                const std::vector<CandidateSpec>& candidates);

PLVerdict uniqueness_probe(const CurveSampler& sampler, const ProbeContext& ctx,
                           const std::vector<CandidateSpec>& candidates);

// Recheck every reported (beta, C) against the samples.
bool replay(const CurveSampler& sampler, const ProbeContext& ctx,
            const std::vector<CandidateSpec>& candidates, const PLVerdict& verdict);

}  // namespace overdet
