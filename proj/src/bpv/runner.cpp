/*
   Copyright 2026 the bpverify developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "bpv/runner.hpp"

namespace bpv {

VerificationReport execute_run(const RunConfig& c) {
  const auto id = identity_from_name(c.identity);
  if (!id) {
    throw InvalidArgument("unknown identity '" + c.identity +
                          "' (expected polar, bp, affine-bp, bp-dual, affine-dual, multilinear, "
                          "drury, or riesz)");
  }
  require(c.samples >= 1000, "samples must be at least 1000");
  require(c.n >= 1, "n must be positive");
  require(c.rel_tol > 0.0, "rel-tol must be positive");
  require(c.z_max > 0.0, "z-max must be positive");
  require(c.constant_scale > 0.0, "constant-scale must be positive");
  if (c.scale) require(*c.scale > 0.0, "scale must be positive");
  if (c.offset_scale) require(*c.offset_scale > 0.0, "offset-scale must be positive");

  VerifyOptions opts;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.workers = c.workers;
  opts.rel_tol = c.rel_tol;
  opts.z_max = c.z_max;
  opts.scale = c.scale;
  opts.offset_scale = c.offset_scale;
  opts.constant_scale = c.constant_scale;

  switch (*id) {
    case Identity::Polar: {
      require(c.k >= 1, "polar: --k is required");
      return verify_polar(c.n, c.k, parse_multi_point_function(c.function_spec, c.n, c.k), opts);
    }
    case Identity::BP: {
      require(c.k >= 1 && c.q >= 1, "bp: --k and --q are required");
      return verify_bp(c.n, c.k, c.q, parse_multi_point_function(c.function_spec, c.n, c.q), opts);
    }
    case Identity::AffineBP: {
      require(c.k >= 1 && c.q >= 1, "affine-bp: --k and --q are required");
      return verify_affine_bp(c.n, c.k, c.q,
                              parse_multi_point_function(c.function_spec, c.n, c.q + 1), opts);
    }
    case Identity::BPDual: {
      require(c.k >= 1 && c.q >= 1, "bp-dual: --k and --q are required");
      return verify_bp_dual(c.n, c.k, c.q, parse_multi_point_function(c.function_spec, c.n, c.q),
                            opts);
    }
    case Identity::AffineDual: {
      require(c.k >= 1 && c.q >= 1, "affine-dual: --k and --q are required");
      return verify_affine_dual(c.n, c.k, c.q,
                                parse_multi_point_function(c.function_spec, c.n, c.q + 1), opts);
    }
    case Identity::Multilinear: {
      require(c.k >= 1 && c.q >= 1, "multilinear: --k and --q are required");
      return verify_multilinear(c.n, c.k, c.q,
                                parse_multi_point_function(c.function_spec, c.n, c.q + 1), opts);
    }
    case Identity::Drury: {
      require(c.k >= 1, "drury: --k is required");
      require(c.ell >= 0, "drury: --ell is required");
      const MultiPointFunction f = parse_multi_point_function(c.function_spec, c.n, 1);
      const TestFunction& factor = f.factors()[0];
      if (!factor.is_gaussian() || !factor.is_centered()) {
        throw InvalidArgument("drury: the test function must be a centered gaussian:a=...");
      }
      return verify_drury(c.n, c.k, c.ell, factor.rate(), opts);
    }
    case Identity::Riesz: {
      require(c.q >= 1, "riesz: --q is required");
      require(c.alpha.has_value(), "riesz: --alpha is required");
      return verify_riesz(c.n, c.q, *c.alpha,
                          parse_multi_point_function(c.function_spec, c.n, c.q), opts);
    }
  }
  throw InvalidArgument("unreachable identity");
}

}  // namespace bpv
