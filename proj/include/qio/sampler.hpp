// Copyright 2026 The qio developers
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

/// Seeded sampling of random incoherent qubit channels and the
/// achievable-region Monte Carlo driver.
///
/// One channel draw consumes a fixed sequence of uniforms from its own
/// SplitMix64 stream (see rng.hpp): r, then the alpha components, then
/// re/im pairs for the beta components. The alpha triple is drawn iid
/// from [0,1] and normalized; the beta triple is drawn from the complex
/// square [-box, box]^2 and normalized; afterwards the first component of
/// each is divided by sqrt(1+r^2), which lands the draw exactly on the
/// four-operator normalization surface.

#pragma once

#include <thread>
#include <vector>

#include "qio/canonical.hpp"
#include "qio/channel.hpp"
#include "qio/rng.hpp"

namespace qio {

struct SamplerConfig {
  uint64_t seed = 0;
  size_t count = 1;
  double r_min = 1.0;
  double r_max = 2.0;
  double beta_box = 2.0;
};

struct RegionResult {
  BlochVector initial;
  std::vector<BlochVector> points;
  uint64_t seed = 0;
};

/// One four-operator canonical draw.
inline CanonicalIO4 sample_io(SplitMix64& rng, double r_min = 1.0, double r_max = 2.0,
                              double beta_box = 2.0) {
  CanonicalIO4 form;
  form.r = rng.uniform(r_min, r_max);
  double an = 0.0;
  for (double& v : form.alpha) {
    v = rng.next_double();
    an += v * v;
  }
  an = std::sqrt(an);
  for (double& v : form.alpha) v /= an;
  double bn = 0.0;
  for (Complex& v : form.beta) {
    v = Complex(rng.uniform(-beta_box, beta_box), rng.uniform(-beta_box, beta_box));
    bn += std::norm(v);
  }
  bn = std::sqrt(bn);
  for (Complex& v : form.beta) v = v * (1.0 / bn);
  const double shrink = std::sqrt(1.0 + form.r * form.r);
  form.alpha[0] /= shrink;
  form.beta[0] = form.beta[0] * (1.0 / shrink);
  return form;
}

/// One five-operator canonical draw (alpha gains a fourth component).
/// min_param > 0 rejects draws with any magnitude at or below it, which
/// pins the corpus away from the degenerate branches.
inline CanonicalIO5 sample_io5(SplitMix64& rng, double min_param = 0.0,
                               double r_min = 1.0, double r_max = 2.0,
                               double beta_box = 2.0) {
  for (;;) {
    CanonicalIO5 form;
    form.r = rng.uniform(r_min, r_max);
    double an = 0.0;
    for (double& v : form.alpha) {
      v = rng.next_double();
      an += v * v;
    }
    an = std::sqrt(an);
    for (double& v : form.alpha) v /= an;
    double bn = 0.0;
    for (Complex& v : form.beta) {
      v = Complex(rng.uniform(-beta_box, beta_box), rng.uniform(-beta_box, beta_box));
      bn += std::norm(v);
    }
    bn = std::sqrt(bn);
    for (Complex& v : form.beta) v = v * (1.0 / bn);
    const double shrink = std::sqrt(1.0 + form.r * form.r);
    form.alpha[0] /= shrink;
    form.beta[0] = form.beta[0] * (1.0 / shrink);
    if (min_param > 0.0) {
      bool ok = form.r > min_param;
      for (double v : form.alpha) ok = ok && v > min_param;
      for (const Complex& v : form.beta) ok = ok && std::abs(v) > min_param;
      if (!ok) continue;
    }
    return form;
  }
}

/// One strictly-incoherent canonical draw: four nonnegative weights on
/// the unit sphere plus a complex pair on its own unit sphere.
inline CanonicalSIO4 sample_sio4(SplitMix64& rng, double beta_box = 2.0) {
  CanonicalSIO4 form;
  double an = 0.0;
  for (double& v : form.a) {
    v = rng.next_double();
    an += v * v;
  }
  an = std::sqrt(an);
  for (double& v : form.a) v /= an;
  double bn = 0.0;
  for (Complex& v : form.b) {
    v = Complex(rng.uniform(-beta_box, beta_box), rng.uniform(-beta_box, beta_box));
    bn += std::norm(v);
  }
  bn = std::sqrt(bn);
  for (Complex& v : form.b) v = v * (1.0 / bn);
  return form;
}

/// Pushes the initial state through cfg.count random channels. Sampling
/// is parallel over the channel index; stream-per-index derivation keeps
/// the result identical to the sequential order.
inline RegionResult achievable_region(const SamplerConfig& cfg, const BlochVector& initial) {
  if (initial.norm() > 1.0 + 1e-12)
    throw ValidationError("initial Bloch vector lies outside the unit ball");
  const CMatrix rho0 = bloch_to_rho(initial);
  RegionResult out;
  out.initial = initial;
  out.seed = cfg.seed;
  out.points.resize(cfg.count);

  const size_t workers =
      std::max<size_t>(1, std::min<size_t>(std::thread::hardware_concurrency(),
                                           cfg.count / 4096 + 1));
  auto run = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      SplitMix64 rng = stream_for_index(cfg.seed, i);
      const CanonicalIO4 form = sample_io(rng, cfg.r_min, cfg.r_max, cfg.beta_box);
      const QubitChannel ch = to_kraus(form);
      out.points[i] = rho_to_bloch(apply(ch, rho0));
    }
  };
  if (workers == 1) {
    run(0, cfg.count);
  } else {
    std::vector<std::thread> pool;
    const size_t chunk = (cfg.count + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
      const size_t begin = w * chunk;
      const size_t end = std::min(cfg.count, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace qio
